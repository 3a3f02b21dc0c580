"""Zero-error randomized solvers with success-probability instrumentation.

Every solver returns either a Solution that passes verify (checked by
construction: the solver only emits witnesses whose defining clause it has
just evaluated) or None for "don't know".  Trials are driven by the package
RNG, so outcomes are deterministic in the seed; boost() repeats split-seeded
trials until the aggregate failure probability target is met.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .oracle import QueryLedger, evaluate
from .problems import (
    BTreeLeafInstance,
    EmptyChildInstance,
    LossyInstance,
    NephewInstance,
    Solution,
    btree_walk,
    word_length_for,
)
from .reductions.nephew import nephew_to_btreeleaf
from .resolution import SearchCNFInstance
from .rng import Rng


@dataclass(frozen=True)
class RandomizedOutcome:
    result: Optional[Solution]
    trials_used: int
    queries_used: int
    seed: int

    @property
    def solved(self) -> bool:
        return self.result is not None


def _outcome(result, ledger: QueryLedger, rng: Rng, trials: int = 1) -> RandomizedOutcome:
    return RandomizedOutcome(result, trials, ledger.total, rng.seed)


def solve_btreeleaf_random(inst: BTreeLeafInstance, rng: Rng) -> RandomizedOutcome:
    """Guess a uniform word; a promise instance solves with prob >= 5/6."""
    k = inst.word_length
    word = tuple(rng.bits(1) + 1 for _ in range(k))
    led = QueryLedger()
    reached, _ = btree_walk(inst, word, led)
    return _outcome(Solution("btree_leaf", "s1", word) if reached else None, led, rng)


def exact_btreeleaf_success(inst: BTreeLeafInstance) -> Fraction:
    """Exact fraction of solution words, by counting bad walks: a word fails
    iff every vertex it visits (including the endpoint) has two children."""
    k = inst.word_length
    led = QueryLedger()
    children: dict[int, Optional[tuple[int, int]]] = {}

    def kids(v: int):
        if v not in children:
            lv, rv = evaluate(inst.Lp, v, led), evaluate(inst.Rp, v, led)
            children[v] = None if lv == inst.bot or rv == inst.bot else (lv, rv)
        return children[v]

    bad = {inst.v_star: 1} if kids(inst.v_star) else {}
    for _ in range(k):
        nxt: dict[int, int] = {}
        for v, cnt in bad.items():
            for c in kids(v):
                if kids(c) is not None:
                    nxt[c] = nxt.get(c, 0) + cnt
        bad = nxt
    return 1 - Fraction(sum(bad.values()), 1 << k)


def solve_ec_random(inst: EmptyChildInstance, rng: Rng) -> RandomizedOutcome:
    """Walk down from the root by fair coins, returning the first witness the
    walk bumps into; same word length as the leaf-search guess."""
    led = QueryLedger()
    if (
        evaluate(inst.L, 1, led) == 1
        or evaluate(inst.R, 1, led) == 1
        or evaluate(inst.F, 1, led) != 1
    ):
        tag = "s2a" if inst.variant == "prime" else "s2"
        return _outcome(Solution("empty_child", tag, (1,)), led, rng)
    k = word_length_for(inst.V)
    v = 1
    for _ in range(k):
        lv = evaluate(inst.L, v, led)
        rv = evaluate(inst.R, v, led)
        if (
            evaluate(inst.F, lv, led) != v
            or evaluate(inst.F, rv, led) != v
            or (lv == rv != v)
        ):
            return _outcome(Solution("empty_child", "s1", (v,)), led, rng)
        v = lv if rng.bits(1) == 0 else rv
    lv = evaluate(inst.L, v, led)
    rv = evaluate(inst.R, v, led)
    if (
        evaluate(inst.F, lv, led) != v
        or evaluate(inst.F, rv, led) != v
        or (lv == rv != v)
    ):
        return _outcome(Solution("empty_child", "s1", (v,)), led, rng)
    return _outcome(None, led, rng)


def solve_lossy_random(inst: LossyInstance, rng: Rng) -> RandomizedOutcome:
    """Sample a point of the big side; succeeds with prob >= 1 - N/M."""
    led = QueryLedger()
    x = rng.randint(1, inst.M)
    if evaluate(inst.f, evaluate(inst.g, x, led), led) != x:
        return _outcome(Solution("lossy", "s1", (x,)), led, rng)
    return _outcome(None, led, rng)


def solve_nephew_random(inst: NephewInstance, rng: Rng) -> RandomizedOutcome:
    """Check the three start probes, then descend the FindChildren tree from
    a coin-chosen root; per-trial success >= (1/2)(5/6) on clean instances."""
    led = QueryLedger()
    view = nephew_to_btreeleaf(inst, coin=rng.bits(1))
    if view.short_circuit is not None:
        return _outcome(view.short_circuit, led, rng)
    tree = view.tree
    assert tree is not None and view.extract is not None
    k = tree.word_length
    word = tuple(rng.bits(1) + 1 for _ in range(k))
    x = tree.v_star
    for c in word:
        lv = evaluate(tree.Lp, x, led)
        rv = evaluate(tree.Rp, x, led)
        if lv == tree.bot:
            return _outcome(view.extract(word, led), led, rng)
        x = lv if c == 1 else rv
    lv = evaluate(tree.Lp, x, led)
    if lv == tree.bot:
        return _outcome(view.extract(word, led), led, rng)
    return _outcome(None, led, rng)


def solve_search_cnf_random(inst: SearchCNFInstance, rng: Rng) -> RandomizedOutcome:
    """Sample a clause, query its literals, return its index if falsified."""
    led = QueryLedger()
    i = rng.randint(1, len(inst.cnf.clauses))
    clause = inst.cnf.clauses[i - 1]
    if all(inst.bit(abs(lit), led) != (1 if lit > 0 else 0) for lit in clause):
        return _outcome(Solution("search_cnf", "s1", (i,)), led, rng)
    return _outcome(None, led, rng)


def boost(
    solver: Callable[..., RandomizedOutcome],
    instance,
    rng: Rng,
    per_trial_success: Fraction,
    target_failure: Fraction,
    *args,
) -> RandomizedOutcome:
    """Repeat split-seeded trials until success, up to the trial count that
    drives the aggregate failure below target_failure."""
    import math

    p = float(per_trial_success)
    if not 0 < p <= 1:
        raise ValueError("per-trial success must be in (0, 1]")
    if p == 1:
        cap = 1
    else:
        cap = math.ceil(math.log(float(target_failure)) / math.log(1 - p))
    queries = 0
    for t in range(cap):
        out = solver(instance, *args, rng.split(t))
        queries += out.queries_used
        if out.result is not None:
            return RandomizedOutcome(out.result, t + 1, queries, rng.seed)
    return RandomizedOutcome(None, cap, queries, rng.seed)


def boost_trial_cap(per_trial_success: Fraction, target_failure: Fraction) -> int:
    import math

    p = float(per_trial_success)
    if p >= 1:
        return 1
    return math.ceil(math.log(float(target_failure)) / math.log(1 - p))
