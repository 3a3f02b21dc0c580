"""Solution verifiers, exhaustive brute-force solvers, and graph levels.

verify() evaluates exactly the defining clause of the claimed solution
variant through the instance's oracles; brute_solve() enumerates every legal
(variant, witness) combination and collects the accepted ones.  brute_solve
is the soundness oracle every reduction test compares against.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional

from ..oracle import FiniteFunction, QueryLedger, evaluate
from .instances import (
    AMGMInstance,
    BTreeLeafInstance,
    DLOInstance,
    EmptyChildInstance,
    Instance,
    InstanceError,
    LossyInstance,
    MeteredLineInstance,
    NephewInstance,
    SinkOfDagInstance,
    Solution,
    WeakPigeonInstance,
)


class IllegalVariant(InstanceError):
    pass


class PromiseViolation(Exception):
    """A BTreeLeaf walk hit a vertex with exactly one missing child."""


class BruteCapExceeded(Exception):
    pass


DEFAULT_BRUTE_CAP = 1 << 14


# ---------------------------------------------------------------------------
# verify


def verify(instance: Instance, sol: Solution, ledger: Optional[QueryLedger] = None) -> bool:
    if ledger is None:
        ledger = QueryLedger()
    handler = _VERIFIERS.get(type(instance))
    if handler is None:
        raise InstanceError(f"no verifier for {type(instance).__name__}")
    return handler(instance, sol, ledger)


def _verify_lossy(inst: LossyInstance, sol: Solution, led: QueryLedger) -> bool:
    if sol.variant == "s1":
        (x,) = sol.witness
        if not 1 <= x <= inst.M:
            return False
        return evaluate(inst.f, evaluate(inst.g, x, led), led) != x
    if sol.variant == "s2" and inst.bijective:
        (y,) = sol.witness
        if not 1 <= y <= inst.N:
            return False
        return evaluate(inst.g, evaluate(inst.f, y, led), led) != y
    raise IllegalVariant(f"lossy variant {sol.variant!r} (bijective={inst.bijective})")


def _verify_empty_child(inst: EmptyChildInstance, sol: Solution, led: QueryLedger) -> bool:
    F, L, R = inst.F, inst.L, inst.R
    if sol.variant not in inst.variants_allowed:
        raise IllegalVariant(f"empty-child variant {sol.variant!r} for {inst.variant}")
    (u,) = sol.witness
    if not 1 <= u <= inst.V:
        return False
    if sol.variant == "s1":
        lu = evaluate(L, u, led)
        if evaluate(F, lu, led) != u:
            return True
        ru = evaluate(R, u, led)
        if evaluate(F, ru, led) != u:
            return True
        return lu == ru and lu != u
    if sol.variant == "s2":
        if u != 1:
            return False
        return (
            evaluate(L, 1, led) == 1
            or evaluate(R, 1, led) == 1
            or evaluate(F, 1, led) != 1
        )
    if sol.variant == "s2a":
        if u != 1:
            return False
        return evaluate(L, 1, led) == 1 or evaluate(R, 1, led) == 1
    if sol.variant == "s3":
        if u == 1:
            return False
        fu = evaluate(F, u, led)
        return u != evaluate(L, fu, led) and u != evaluate(R, fu, led)
    H = inst.H
    assert H is not None
    if sol.variant == "s4":
        if u == 1:
            return evaluate(H, 1, led) != 1
        fu = evaluate(F, u, led)
        return u != fu and evaluate(H, u, led) != evaluate(H, fu, led) + 1
    if sol.variant == "s4p":
        if u == 1:
            return evaluate(H, 1, led) != 1
        fu = evaluate(F, u, led)
        return u != fu and evaluate(H, u, led) <= evaluate(H, fu, led)
    raise IllegalVariant(sol.variant)


def nephew_is_solution(inst: NephewInstance, u: int, led: QueryLedger) -> Optional[str]:
    """Variant tag of the clause u satisfies, or None.  Checks s1/s2 and, on
    with-inverse instances, s3/s4 as well."""
    f, g = inst.f, inst.g
    fgu = evaluate(f, evaluate(g, u, led), led)
    if fgu == u:
        return "s2"
    if evaluate(f, fgu, led) != evaluate(f, u, led):
        return "s1"
    if inst.with_inverse:
        assert inst.f_inv is not None
        iv = evaluate(inst.f_inv, u, led)
        if iv != inst.bot:
            if evaluate(f, iv, led) != u:
                return "s3"
        else:
            fu = evaluate(f, u, led)
            if evaluate(f, fu, led) != fu:
                return "s4"
    return None


def _verify_nephew(inst: NephewInstance, sol: Solution, led: QueryLedger) -> bool:
    f, g = inst.f, inst.g
    if sol.variant in ("s3", "s4") and not inst.with_inverse:
        raise IllegalVariant(f"nephew variant {sol.variant!r} without inverse")
    if sol.variant not in ("s1", "s2", "s3", "s4"):
        raise IllegalVariant(sol.variant)
    (u,) = sol.witness
    if not 1 <= u <= inst.V:
        return False
    if sol.variant == "s1":
        fgu = evaluate(f, evaluate(g, u, led), led)
        return evaluate(f, fgu, led) != evaluate(f, u, led)
    if sol.variant == "s2":
        return evaluate(f, evaluate(g, u, led), led) == u
    assert inst.f_inv is not None
    iv = evaluate(inst.f_inv, u, led)
    if sol.variant == "s3":
        return iv != inst.bot and evaluate(f, iv, led) != u
    fu = evaluate(f, u, led)
    return iv == inst.bot and evaluate(f, fu, led) != fu


def _verify_dlo(inst: DLOInstance, sol: Solution, led: QueryLedger) -> bool:
    if sol.variant == "s1":
        x, y, z = sol.witness
        if len({x, y, z}) != 3 or not all(1 <= v <= inst.N for v in (x, y, z)):
            return False
        return inst.prec(x, y, led) and inst.prec(y, z, led) and inst.prec(z, x, led)
    if sol.variant == "s2":
        x, y = sol.witness
        if x == y or not all(1 <= v <= inst.N for v in (x, y)):
            return False
        if not inst.prec(x, y, led):
            return False
        m = inst.median(x, y, led)
        if inst.literal_median_rule:
            return (not inst.prec(x, m, led)) and (not inst.prec(m, y, led))
        return not (inst.prec(x, m, led) and inst.prec(m, y, led))
    raise IllegalVariant(sol.variant)


def _verify_amgm(inst: AMGMInstance, sol: Solution, led: QueryLedger) -> bool:
    (p,) = sol.witness
    if not 1 <= p <= inst.P:
        return False
    if sol.variant == "s1":
        return evaluate(inst.G, evaluate(inst.F, p, led), led) != p
    if sol.variant == "s2":
        a, b = inst.pair_of(p, led)
        return inst.color(a, led) != 0 or inst.color(b, led) != 1
    raise IllegalVariant(sol.variant)


def _verify_metered(inst: MeteredLineInstance, sol: Solution, led: QueryLedger) -> bool:
    S, P = inst.S, inst.P
    (x,) = sol.witness
    if not 1 <= x <= inst.N:
        return False
    if sol.variant == "s1":
        return x == 1 and (
            evaluate(P, 1, led) != 1
            or evaluate(S, 1, led) == 1
            or inst.meter(1, led) != 1
        )
    if sol.variant == "s2":
        return evaluate(P, evaluate(S, x, led), led) != x
    if sol.variant == "s3":
        return x != 1 and inst.meter(x, led) == 1
    if sol.variant == "s4":
        vx = inst.meter(x, led)
        if vx > 0 and inst.meter(evaluate(S, x, led), led) - vx != 1:
            return True
        return vx > 1 and vx - inst.meter(evaluate(P, x, led), led) != 1
    if inst.variant != "end":
        raise IllegalVariant(f"metered-line variant {sol.variant!r} on sink instance")
    if sol.variant == "s5":
        return x != 1 and evaluate(S, evaluate(P, x, led), led) != x
    if sol.variant == "s6":
        vx = inst.meter(x, led)
        return vx > 0 and inst.meter(evaluate(S, x, led), led) - vx != 1
    raise IllegalVariant(sol.variant)


def _verify_sink_of_dag(inst: SinkOfDagInstance, sol: Solution, led: QueryLedger) -> bool:
    (v,) = sol.witness
    if not 1 <= v <= inst.N:
        return False
    succ, pot = inst.succ, inst.pot
    if sol.variant == "s1":
        return v == 1 and evaluate(succ, 1, led) == 1
    sv = evaluate(succ, v, led)
    if sol.variant == "s2":
        return sv != v and evaluate(succ, sv, led) == sv
    if sol.variant == "s3":
        return sv != v and evaluate(pot, sv, led) <= evaluate(pot, v, led)
    raise IllegalVariant(sol.variant)


def _verify_weak_pigeon(inst: WeakPigeonInstance, sol: Solution, led: QueryLedger) -> bool:
    if sol.variant != "s1":
        raise IllegalVariant(sol.variant)
    x, y = sol.witness
    if not (1 <= x < y <= (1 << inst.n)):
        return False
    return evaluate(inst.h, x, led) == evaluate(inst.h, y, led)


def btree_walk(
    inst: BTreeLeafInstance, word: Iterable[int], led: QueryLedger
) -> tuple[bool, int]:
    """Walk the word from v_star; returns (reached a leaf, final vertex).

    Raises PromiseViolation when a step would descend into a lone bot child.
    """
    v = inst.v_star
    for c in word:
        lv = evaluate(inst.Lp, v, led)
        rv = evaluate(inst.Rp, v, led)
        if lv == inst.bot and rv == inst.bot:
            return True, v
        if lv == inst.bot or rv == inst.bot:
            raise PromiseViolation(f"vertex {v} has exactly one bot child")
        v = lv if c == 1 else rv
    lv = evaluate(inst.Lp, v, led)
    rv = evaluate(inst.Rp, v, led)
    if lv == inst.bot and rv == inst.bot:
        return True, v
    if lv == inst.bot or rv == inst.bot:
        raise PromiseViolation(f"vertex {v} has exactly one bot child")
    return False, v


def _verify_btree(inst: BTreeLeafInstance, sol: Solution, led: QueryLedger) -> bool:
    if sol.variant != "s1":
        raise IllegalVariant(sol.variant)
    word = sol.witness
    if len(word) != inst.word_length or any(c not in (1, 2) for c in word):
        return False
    reached, _ = btree_walk(inst, word, led)
    return reached


_VERIFIERS = {
    LossyInstance: _verify_lossy,
    EmptyChildInstance: _verify_empty_child,
    NephewInstance: _verify_nephew,
    DLOInstance: _verify_dlo,
    AMGMInstance: _verify_amgm,
    MeteredLineInstance: _verify_metered,
    SinkOfDagInstance: _verify_sink_of_dag,
    WeakPigeonInstance: _verify_weak_pigeon,
    BTreeLeafInstance: _verify_btree,
}


# ---------------------------------------------------------------------------
# candidate enumeration and brute force


def _normalize_cycle(t: tuple[int, int, int]) -> tuple[int, int, int]:
    # rotate a 3-cycle witness so the smallest element leads
    k = t.index(min(t))
    return t[k:] + t[:k]


_EXTRA_ENUMERATORS: dict = {}


def candidate_solutions(instance: Instance) -> Iterator[Solution]:
    """Every legal (variant, witness) pair, each solution set represented once
    (unordered/cyclic witnesses normalized)."""
    extra = _EXTRA_ENUMERATORS.get(type(instance))
    if extra is not None:
        yield from extra(instance)
        return
    name = instance.problem_name
    if isinstance(instance, LossyInstance):
        for x in range(1, instance.M + 1):
            yield Solution(name, "s1", (x,))
        if instance.bijective:
            for y in range(1, instance.N + 1):
                yield Solution(name, "s2", (y,))
    elif isinstance(instance, EmptyChildInstance):
        for variant in instance.variants_allowed:
            if variant in ("s2", "s2a"):
                yield Solution(name, variant, (1,))
            else:
                for u in range(1, instance.V + 1):
                    yield Solution(name, variant, (u,))
    elif isinstance(instance, NephewInstance):
        variants = ("s1", "s2", "s3", "s4") if instance.with_inverse else ("s1", "s2")
        for variant in variants:
            for u in range(1, instance.V + 1):
                yield Solution(name, variant, (u,))
    elif isinstance(instance, DLOInstance):
        n = instance.N
        seen = set()
        for x in range(1, n + 1):
            for y in range(1, n + 1):
                if x == y:
                    continue
                for z in range(1, n + 1):
                    if z in (x, y):
                        continue
                    w = _normalize_cycle((x, y, z))
                    if w not in seen:
                        seen.add(w)
                        yield Solution(name, "s1", w)
        for x in range(1, n + 1):
            for y in range(1, n + 1):
                if x != y:
                    yield Solution(name, "s2", (x, y))
    elif isinstance(instance, AMGMInstance):
        for variant in ("s1", "s2"):
            for p in range(1, instance.P + 1):
                yield Solution(name, variant, (p,))
    elif isinstance(instance, MeteredLineInstance):
        variants = ("s1", "s2", "s3", "s4", "s5", "s6") if instance.variant == "end" else (
            "s1",
            "s2",
            "s3",
            "s4",
        )
        for variant in variants:
            if variant == "s1":
                yield Solution(name, variant, (1,))
            else:
                for x in range(1, instance.N + 1):
                    yield Solution(name, variant, (x,))
    elif isinstance(instance, SinkOfDagInstance):
        yield Solution(name, "s1", (1,))
        for variant in ("s2", "s3"):
            for v in range(1, instance.N + 1):
                yield Solution(name, variant, (v,))
    elif isinstance(instance, WeakPigeonInstance):
        D = 1 << instance.n
        for x in range(1, D + 1):
            for y in range(x + 1, D + 1):
                yield Solution(name, "s1", (x, y))
    elif isinstance(instance, BTreeLeafInstance):
        k = instance.word_length
        for bits in range(1 << k):
            word = tuple(1 + ((bits >> (k - 1 - i)) & 1) for i in range(k))
            yield Solution(name, "s1", word)
    else:
        raise InstanceError(f"no enumerator for {type(instance).__name__}")


def instance_size(instance: Instance) -> int:
    """Sum of candidate-witness space sizes, used against the brute cap."""
    return sum(1 for _ in candidate_solutions(instance))


def brute_solve(
    instance: Instance,
    cap: int = DEFAULT_BRUTE_CAP,
    ledger: Optional[QueryLedger] = None,
) -> set[Solution]:
    """All accepted solutions, by exhaustive enumeration.

    Collision problems read the whole map once and emit the matching pairs;
    the result is identical to scanning every pair through verify (the
    oracles are pure) without the quadratic ledger cost.
    """
    if ledger is None:
        ledger = QueryLedger()
    if isinstance(instance, WeakPigeonInstance):
        D = 1 << instance.n
        if D * D > cap:
            raise BruteCapExceeded(f"collision space {D}^2 exceeds cap {cap}")
        by_value: dict[int, list[int]] = {}
        for x in range(1, D + 1):
            by_value.setdefault(evaluate(instance.h, x, ledger), []).append(x)
        out = set()
        for bucket in by_value.values():
            for i, x in enumerate(bucket):
                for y in bucket[i + 1 :]:
                    out.add(Solution("weak_pigeon", "s1", (x, y)))
        return out
    out = set()
    count = 0
    for cand in candidate_solutions(instance):
        count += 1
        if count > cap:
            raise BruteCapExceeded(
                f"candidate space of {type(instance).__name__} exceeds cap {cap}"
            )
        if verify(instance, cand, ledger):
            out.add(cand)
    return out


# ---------------------------------------------------------------------------
# functional-graph levels


def compute_levels(f: FiniteFunction) -> list[int]:
    """Level of every vertex in the functional graph of f: distance to the
    unique cycle of its rho-shaped component (cycle vertices have level 0).

    Returns a list indexed by vertex-1.  Runs in O(V) amortized: each vertex
    is walked once and resolved by back-substitution.
    """
    V = f.domain_size
    scratch = QueryLedger()
    succ = [evaluate(f, v, scratch) for v in range(1, V + 1)]
    levels: list[Optional[int]] = [None] * (V + 1)
    state = [0] * (V + 1)  # 0 unvisited, 1 on current path, 2 done

    for start in range(1, V + 1):
        if state[start] == 2:
            continue
        path = []
        v = start
        while state[v] == 0:
            state[v] = 1
            path.append(v)
            v = succ[v - 1]
        if state[v] == 1:
            # fresh cycle: everything from v's first occurrence is level 0
            k = path.index(v)
            for u in path[k:]:
                levels[u] = 0
                state[u] = 2
            tail = path[:k]
        else:
            tail = path
        for u in reversed(tail):
            nxt = levels[succ[u - 1]]
            assert nxt is not None
            levels[u] = nxt + 1
            state[u] = 2
    return [levels[v] for v in range(1, V + 1)]  # type: ignore[misc]
