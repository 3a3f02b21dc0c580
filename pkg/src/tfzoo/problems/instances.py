"""Instance and solution types for every problem in the zoo.

Conventions shared by all problems:
  * all oracles are FiniteFunctions on 1-based index ranges;
  * a "bottom" value in a codomain [V] u {bot} is encoded as index V+1;
  * Solution witnesses are tuples of 1-based indices (for path-word problems
    the witness is the letter sequence, 1 = left, 2 = right).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..oracle import FiniteFunction, QueryLedger, evaluate


class InstanceError(Exception):
    pass


@dataclass(frozen=True)
class Solution:
    problem: str
    variant: str
    witness: tuple[int, ...]

    def __repr__(self) -> str:
        return f"{self.problem}:{self.variant}{self.witness}"


def _check_dims(fn: FiniteFunction, dom: int, cod: int, what: str) -> None:
    if fn.domain_size != dom or fn.codomain_size != cod:
        raise InstanceError(
            f"{what}: expected [{dom}]->[{cod}], got "
            f"[{fn.domain_size}]->[{fn.codomain_size}]"
        )


@dataclass(frozen=True)
class LossyInstance:
    """Compressing pair: f decompresses [N]->[M], g compresses [M]->[N], N < M.

    Solutions: s1 = x in [M] with f(g(x)) != x; the bijective variant also
    accepts s2 = y in [N] with g(f(y)) != y.
    """

    N: int
    M: int
    f: FiniteFunction
    g: FiniteFunction
    bijective: bool = False
    # set only by constructions whose pair intentionally lacks compression
    # (solutions may then fail to exist); the default invariant is N < M
    weak_stretch_ok: bool = False

    problem_name = "lossy"

    def __post_init__(self):
        if self.N < 1 or self.M < 1:
            raise InstanceError("lossy pair needs positive dimensions")
        if self.N >= self.M and not self.weak_stretch_ok:
            raise InstanceError(f"lossy pair needs N < M, got N={self.N}, M={self.M}")
        _check_dims(self.f, self.N, self.M, "lossy f")
        _check_dims(self.g, self.M, self.N, "lossy g")

    @property
    def name(self) -> str:
        return "bij_lossy" if self.bijective else "lossy"


BOT = object()  # sentinel in documentation only; encoded as V+1 in codomains

EC_VARIANTS = (
    "standard",
    "prime",
    "binary",
    "with_height",
    "binary_with_height",
    "with_height_strict",
)


@dataclass(frozen=True)
class EmptyChildInstance:
    """Rooted-tree leaf search: father F, children L, R (all [V]->[V]).

    Variant selects the admissible solution clauses; height variants carry H.
    """

    V: int
    F: FiniteFunction
    L: FiniteFunction
    R: FiniteFunction
    variant: str = "standard"
    H: Optional[FiniteFunction] = None

    problem_name = "empty_child"

    def __post_init__(self):
        if self.variant not in EC_VARIANTS:
            raise InstanceError(f"unknown empty-child variant {self.variant!r}")
        for fn, what in ((self.F, "F"), (self.L, "L"), (self.R, "R")):
            _check_dims(fn, self.V, self.V, f"empty-child {what}")
        if self.has_heights:
            if self.H is None:
                raise InstanceError(f"variant {self.variant} needs heights H")
            _check_dims(self.H, self.V, self.V, "empty-child H")
        elif self.H is not None:
            raise InstanceError(f"variant {self.variant} must not carry H")

    @property
    def has_heights(self) -> bool:
        return "height" in self.variant

    @property
    def is_binary(self) -> bool:
        return self.variant.startswith("binary")

    @property
    def variants_allowed(self) -> tuple[str, ...]:
        out = ["s1", "s2a" if self.variant == "prime" else "s2"]
        if self.is_binary:
            out.append("s3")
        if self.variant == "with_height_strict":
            out.append("s4p")
        elif self.has_heights:
            out.append("s4")
        return tuple(out)


@dataclass(frozen=True)
class NephewInstance:
    """Two maps f, g on [V]; solutions are u with f(f(g(u))) != f(u) (s1)
    or f(g(u)) = u (s2).  The with-inverse variant adds f_inv with s3/s4."""

    V: int
    f: FiniteFunction
    g: FiniteFunction
    f_inv: Optional[FiniteFunction] = None

    problem_name = "nephew"

    def __post_init__(self):
        _check_dims(self.f, self.V, self.V, "nephew f")
        _check_dims(self.g, self.V, self.V, "nephew g")
        if self.f_inv is not None:
            _check_dims(self.f_inv, self.V, self.V + 1, "nephew f_inv")

    @property
    def with_inverse(self) -> bool:
        return self.f_inv is not None

    @property
    def bot(self) -> int:
        return self.V + 1


@dataclass(frozen=True)
class DLOInstance:
    """Linear order plus a median oracle over N elements.

    order: one bit per unordered pair {x < y} (value 1 means x precedes y,
    2 means y precedes x), so irreflexivity/antisymmetry hold by encoding.
    med: one element of [N] per unordered pair including the diagonal.
    literal_median_rule switches s2 to the non-total literal reading.
    """

    N: int
    order: FiniteFunction
    med: FiniteFunction
    literal_median_rule: bool = False

    problem_name = "dlo"

    def __post_init__(self):
        npairs = self.N * (self.N - 1) // 2
        _check_dims(self.order, npairs, 2, "dlo order")
        _check_dims(self.med, self.N * (self.N + 1) // 2, self.N, "dlo med")

    def _pair_idx(self, x: int, y: int) -> int:
        # strict pairs x < y, triangular numbering
        return (y - 2) * (y - 1) // 2 + x

    def _diag_pair_idx(self, x: int, y: int) -> int:
        # pairs x <= y
        return (y - 1) * y // 2 + x

    def prec(self, a: int, b: int, ledger: QueryLedger) -> bool:
        """a precedes b.  One oracle query; False on the diagonal."""
        if a == b:
            return False
        if a < b:
            return evaluate(self.order, self._pair_idx(a, b), ledger) == 1
        return evaluate(self.order, self._pair_idx(b, a), ledger) == 2

    def median(self, a: int, b: int, ledger: QueryLedger) -> int:
        lo, hi = min(a, b), max(a, b)
        return evaluate(self.med, self._diag_pair_idx(lo, hi), ledger)


@dataclass(frozen=True)
class AMGMInstance:
    """Coloring C on [2N] plus a purported pairing of P = [c*N^2] with the
    bichromatic rectangle H = C^-1(0) x C^-1(1).

    C maps to {1, 2} encoding colors {0, 1}.  F maps pigeons to vertex pairs
    (flat row-major over [2N] x [2N]); G maps vertex pairs back to pigeons.
    """

    c: Fraction
    N: int
    C: FiniteFunction
    F: FiniteFunction
    G: FiniteFunction

    problem_name = "amgm"

    def __post_init__(self):
        if self.c <= 1:
            raise InstanceError("amgm needs c > 1")
        if (self.c * self.N * self.N).denominator != 1:
            raise InstanceError("amgm needs c*N^2 integral")
        P = self.P
        _check_dims(self.C, 2 * self.N, 2, "amgm C")
        _check_dims(self.F, P, 4 * self.N * self.N, "amgm F")
        _check_dims(self.G, 4 * self.N * self.N, P, "amgm G")

    @property
    def P(self) -> int:
        return int(self.c * self.N * self.N)

    def color(self, v: int, ledger: QueryLedger) -> int:
        return evaluate(self.C, v, ledger) - 1

    def pair_of(self, p: int, ledger: QueryLedger) -> tuple[int, int]:
        flat = evaluate(self.F, p, ledger)
        return (flat - 1) // (2 * self.N) + 1, (flat - 1) % (2 * self.N) + 1


@dataclass(frozen=True)
class MeteredLineInstance:
    """Successor/predecessor line with a meter V: [N] -> [N] u {0}.

    The meter is encoded as a FiniteFunction into [N+1] with value p+1 for
    potential p.  variant "sink" admits s1-s4; "end" additionally s5, s6.
    """

    N: int
    S: FiniteFunction
    P: FiniteFunction
    V: FiniteFunction
    variant: str = "sink"

    problem_name = "metered_line"

    def __post_init__(self):
        if self.variant not in ("sink", "end"):
            raise InstanceError(f"unknown metered-line variant {self.variant!r}")
        _check_dims(self.S, self.N, self.N, "metered S")
        _check_dims(self.P, self.N, self.N, "metered P")
        _check_dims(self.V, self.N, self.N + 1, "metered V")

    def meter(self, x: int, ledger: QueryLedger) -> int:
        return evaluate(self.V, x, ledger) - 1


@dataclass(frozen=True)
class SinkOfDagInstance:
    """Successor map with a potential; solutions are the three defect shapes
    (source self-loop, successor of a self-loop, non-increasing potential)."""

    N: int
    succ: FiniteFunction
    pot: FiniteFunction

    problem_name = "sink_of_dag"

    def __post_init__(self):
        _check_dims(self.succ, self.N, self.N, "sink-of-dag succ")
        _check_dims(self.pot, self.N, self.N, "sink-of-dag pot")


@dataclass(frozen=True)
class WeakPigeonInstance:
    """h: [2^n] -> [2^(n-1)]; a solution is an unordered collision x < y."""

    n: int
    h: FiniteFunction

    problem_name = "weak_pigeon"

    def __post_init__(self):
        if self.n < 1:
            raise InstanceError("weak pigeon needs n >= 1")
        _check_dims(self.h, 1 << self.n, 1 << (self.n - 1), "weak-pigeon h")


@dataclass(frozen=True)
class BTreeLeafInstance:
    """Promise problem: directed binary tree reachable from v_star via child
    maps Lp, Rp into [V] u {bot} (bot = V+1); a solution is a letter word of
    length ceil(log V)+1 whose walk from v_star reaches a both-children-bot
    vertex."""

    V: int
    v_star: int
    Lp: FiniteFunction
    Rp: FiniteFunction
    promise_checked: bool = False

    problem_name = "btree_leaf"

    def __post_init__(self):
        _check_dims(self.Lp, self.V, self.V + 1, "btree Lp")
        _check_dims(self.Rp, self.V, self.V + 1, "btree Rp")
        if not 1 <= self.v_star <= self.V:
            raise InstanceError("v_star outside vertex range")

    @property
    def bot(self) -> int:
        return self.V + 1

    @property
    def word_length(self) -> int:
        return word_length_for(self.V)


def word_length_for(V: int) -> int:
    """ceil(log2 V) + 1 letters, the canonical solution-path length."""
    return (V - 1).bit_length() + 1


Instance = (
    LossyInstance
    | EmptyChildInstance
    | NephewInstance
    | DLOInstance
    | AMGMInstance
    | MeteredLineInstance
    | SinkOfDagInstance
    | WeakPigeonInstance
    | BTreeLeafInstance
)
