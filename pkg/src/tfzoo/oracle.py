"""Finite-function oracles, query ledgers, and index arithmetic.

Everything downstream (verifiers, reductions, solvers) evaluates oracles
through this module so that query counts are honest: a table read costs one
query against the oracle's name, while a derived (rule-backed) function costs
exactly whatever underlying reads its rule performs.  Indices are 1-based in
the public data model; 0-based arithmetic stays internal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence


class OracleError(Exception):
    pass


class QueryLedger:
    """Per-oracle-name monotone counters of evaluations."""

    __slots__ = ("counts",)

    def __init__(self) -> None:
        self.counts: dict[str, int] = {}

    def charge(self, name: str) -> None:
        self.counts[name] = self.counts.get(name, 0) + 1

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def merge(self, other: "QueryLedger") -> None:
        for k, v in other.counts.items():
            self.counts[k] = self.counts.get(k, 0) + v

    def __repr__(self) -> str:
        return f"QueryLedger(total={self.total}, counts={self.counts})"


@dataclass(frozen=True)
class FiniteFunction:
    """Total map [domain_size] -> [codomain_size], explicit or lazily computed.

    A table-backed function charges one query to its own name per evaluation.
    A rule-backed function charges nothing for itself; its rule is expected to
    evaluate other FiniteFunctions through the same ledger, so the recorded
    cost is the true black-box cost of the derived value.
    """

    name: str
    domain_size: int
    codomain_size: int
    table: Optional[tuple[int, ...]] = None
    rule: Optional[Callable[[int, QueryLedger], int]] = None

    def __call__(self, x: int, ledger: QueryLedger) -> int:
        return evaluate(self, x, ledger)


def make_table_fn(
    table: Sequence[int], domain_size: int, codomain_size: int, name: str = "f"
) -> FiniteFunction:
    table = tuple(table)
    if len(table) != domain_size:
        raise OracleError(
            f"table length {len(table)} != domain size {domain_size} for {name!r}"
        )
    for i, v in enumerate(table):
        if not 1 <= v <= codomain_size:
            raise OracleError(
                f"table entry {name}({i + 1}) = {v} outside [1, {codomain_size}]"
            )
    return FiniteFunction(name, domain_size, codomain_size, table=table)


def make_rule_fn(
    rule: Callable[[int, QueryLedger], int],
    domain_size: int,
    codomain_size: int,
    name: str = "f",
) -> FiniteFunction:
    return FiniteFunction(name, domain_size, codomain_size, rule=rule)


def evaluate(fn: FiniteFunction, x: int, ledger: QueryLedger) -> int:
    if not 1 <= x <= fn.domain_size:
        raise OracleError(f"{fn.name}({x}): input outside [1, {fn.domain_size}]")
    if fn.table is not None:
        ledger.charge(fn.name)
        return fn.table[x - 1]
    assert fn.rule is not None
    y = fn.rule(x, ledger)
    if not 1 <= y <= fn.codomain_size:
        raise OracleError(f"{fn.name}({x}) = {y} outside [1, {fn.codomain_size}]")
    return y


def cached(fn: FiniteFunction) -> FiniteFunction:
    """Memoizing wrapper for solvers: repeat evaluations of one input are free.

    eval itself never caches, so ledgers reflect true decision-tree cost; a
    solver that deliberately revisits inputs opts in through this wrapper.
    """
    memo: dict[int, int] = {}

    def rule(x: int, ledger: QueryLedger) -> int:
        if x not in memo:
            memo[x] = evaluate(fn, x, ledger)
        return memo[x]

    return make_rule_fn(rule, fn.domain_size, fn.codomain_size, name=fn.name + "~cached")


def materialize(fn: FiniteFunction) -> FiniteFunction:
    """Force a rule-backed function into an explicit table (ledger discarded)."""
    if fn.table is not None:
        return fn
    scratch = QueryLedger()
    table = tuple(evaluate(fn, x, scratch) for x in range(1, fn.domain_size + 1))
    return FiniteFunction(fn.name, fn.domain_size, fn.codomain_size, table=table)


# -- pair / product index arithmetic (row-major, 1-based) --------------------


def pair_index(x: int, y: int, d: int) -> int:
    """(x, y) with y in [d] -> flat index (x-1)*d + y."""
    return (x - 1) * d + y


def pair_unindex(flat: int, d: int) -> tuple[int, int]:
    return (flat - 1) // d + 1, (flat - 1) % d + 1


def lift_product(fn: FiniteFunction, d: int) -> FiniteFunction:
    """fn x [d]: act as fn on the first coordinate, identity on the second."""
    if d < 1:
        raise OracleError("product lift needs d >= 1")

    def rule(flat: int, ledger: QueryLedger) -> int:
        x, y = pair_unindex(flat, d)
        return pair_index(evaluate(fn, x, ledger), y, d)

    return make_rule_fn(
        rule, fn.domain_size * d, fn.codomain_size * d, name=f"{fn.name}x[{d}]"
    )


def disjoint_union(fa: FiniteFunction, fb: FiniteFunction) -> FiniteFunction:
    """Block sum: first block routes to fa, offset block to fb (offset codomain)."""

    def rule(x: int, ledger: QueryLedger) -> int:
        if x <= fa.domain_size:
            return evaluate(fa, x, ledger)
        return fa.codomain_size + evaluate(fb, x - fa.domain_size, ledger)

    return make_rule_fn(
        rule,
        fa.domain_size + fb.domain_size,
        fa.codomain_size + fb.codomain_size,
        name=f"{fa.name}+{fb.name}",
    )


# -- level/position indexing for layered tree constructions ------------------


@dataclass(frozen=True)
class LevelScheme:
    """Bijection between (level i, position j) pairs and flat vertex indices.

    Levels 1..tree_levels form a complete binary tree region (level i holds
    2^(i-1) positions); levels tree_levels+1..tree_levels+band_levels form a
    band region of band_width positions each.  Flat indices are contiguous,
    tree region first.
    """

    tree_levels: int
    band_width: int
    band_levels: int

    @property
    def tree_size(self) -> int:
        return (1 << self.tree_levels) - 1

    @property
    def total(self) -> int:
        return self.tree_size + self.band_width * self.band_levels

    @property
    def levels(self) -> int:
        return self.tree_levels + self.band_levels

    def positions(self, i: int) -> int:
        if 1 <= i <= self.tree_levels:
            return 1 << (i - 1)
        if self.tree_levels < i <= self.levels:
            return self.band_width
        raise OracleError(f"level {i} outside scheme with {self.levels} levels")

    def index(self, i: int, j: int) -> int:
        if not 1 <= j <= self.positions(i):
            raise OracleError(f"position {j} outside level {i}")
        if i <= self.tree_levels:
            return j + (1 << (i - 1)) - 1
        return self.tree_size + (i - self.tree_levels - 1) * self.band_width + j

    def unindex(self, flat: int) -> tuple[int, int]:
        if not 1 <= flat <= self.total:
            raise OracleError(f"flat index {flat} outside [1, {self.total}]")
        if flat <= self.tree_size:
            i = flat.bit_length()
            return i, flat - (1 << (i - 1)) + 1
        r = flat - self.tree_size - 1
        return self.tree_levels + 1 + r // self.band_width, r % self.band_width + 1
