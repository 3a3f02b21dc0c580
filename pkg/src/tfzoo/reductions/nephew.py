"""Reductions through the Nephew problem.

FindChildren probes four nearby vertices and either exposes a solution or
hands back two children whose structure makes the reachable set a binary
tree from any level->=2 root; everything else here is bookkeeping around that
fact: tree views, path-word hashing into weak pigeonhole collisions, and the
two Empty-Child translations (with and without an inverse oracle).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from ..oracle import QueryLedger, evaluate, make_rule_fn, make_table_fn
from ..problems import (
    BTreeLeafInstance,
    EmptyChildInstance,
    NephewInstance,
    Solution,
    WeakPigeonInstance,
    btree_walk,
    nephew_is_solution,
    word_length_for,
)
from .base import BackmapError, Reduction


def find_children(
    src: NephewInstance, v: int, ledger: Optional[QueryLedger] = None
) -> Optional[tuple[int, int]]:
    """(g(v), g(f(g(v)))) unless a solution hides among the four probed
    vertices, in which case None."""
    if ledger is None:
        ledger = QueryLedger()
    f, g = src.f, src.g
    w = evaluate(g, v, ledger)
    fw = evaluate(f, w, ledger)
    h = evaluate(g, fw, ledger)
    for probe in (v, w, fw, h):
        if nephew_is_solution(src, probe, ledger) is not None:
            return None
    return w, h


def _find_children_probes(src: NephewInstance, v: int, ledger: QueryLedger) -> list[int]:
    w = evaluate(src.g, v, ledger)
    fw = evaluate(src.f, w, ledger)
    return [v, w, fw, evaluate(src.g, fw, ledger)]


def _first_solution_among(
    src: NephewInstance, vertices, ledger: QueryLedger
) -> Optional[Solution]:
    for u in vertices:
        tag = nephew_is_solution(src, u, ledger)
        if tag is not None:
            return Solution("nephew", tag, (u,))
    return None


# ---------------------------------------------------------------------------
# Nephew -> BTreeLeaf view (single or paired), with leaf extraction


@dataclass
class NephewTreeView:
    """BTreeLeaf instance whose children are computed by FindChildren.

    short_circuit is set (and tree is None) when the three start probes
    already contain a solution.
    """

    source: NephewInstance
    start: int
    short_circuit: Optional[Solution]
    tree: Optional[BTreeLeafInstance]
    extract: Optional[Callable[[tuple[int, ...], QueryLedger], Solution]]


def nephew_to_btreeleaf(
    src: NephewInstance, coin: int, start: int = 1
) -> NephewTreeView:
    """Root the FindChildren tree at g(u) or g(f(u)) according to the coin;
    one of the two has level >= 2 whenever the start probes are clean, and
    then the promise holds."""
    ledger = QueryLedger()
    u = start
    v = evaluate(src.g, u, ledger)
    v2 = evaluate(src.g, evaluate(src.f, u, ledger), ledger)
    found = _first_solution_among(src, (u, v, v2), ledger)
    if found is not None:
        return NephewTreeView(src, start, found, None, None)
    root = v if coin == 0 else v2
    V = src.V
    bot = V + 1

    def side(which: int):
        def rule(x: int, led: QueryLedger) -> int:
            ch = find_children(src, x, led)
            return bot if ch is None else ch[which]

        return make_rule_fn(rule, V, V + 1, name="LR"[which] + "p")

    tree = BTreeLeafInstance(V, root, side(0), side(1))

    def extract(word: tuple[int, ...], led: QueryLedger) -> Solution:
        x = root
        for c in word:
            ch = find_children(src, x, led)
            if ch is None:
                break
            x = ch[c - 1]
        else:
            if find_children(src, x, led) is not None:
                raise BackmapError(f"word {word} never reaches a leaf from {root}")
        sol = _first_solution_among(src, _find_children_probes(src, x, led), led)
        if sol is None:
            raise BackmapError(f"leaf {x} exposes no solution")
        return sol

    return NephewTreeView(src, start, None, tree, extract)


# ---------------------------------------------------------------------------
# BTreeLeaf -> Weak-Pigeon


def btreeleaf_to_weakpigeon(src: BTreeLeafInstance) -> Reduction:
    """Hash path words to reached vertices; non-solution words land
    injectively on internal vertices while solution words pile on the root,
    so every collision contains a solution word."""
    k = src.word_length
    target_n = k  # domain 2^k words, codomain 2^(k-1) >= V holds vertices

    def h_rule(p: int, ledger: QueryLedger) -> int:
        reached, v = btree_walk(src, _index_to_word(p, k), ledger)
        return src.v_star if reached else v

    target = WeakPigeonInstance(
        target_n, make_rule_fn(h_rule, 1 << k, 1 << (k - 1), name="h")
    )

    def back(sol: Solution, ledger: QueryLedger) -> Solution:
        x, y = sol.witness
        for word_idx in (x, y):
            word = tuple(_index_to_word(word_idx, k))
            reached, _ = btree_walk(src, word, ledger)
            if reached:
                return Solution("btree_leaf", "s1", word)
        raise BackmapError("collision of two non-solution words: promise violated")

    return Reduction("btreeleaf_to_weakpigeon", src, target, back, budget=2 * (k + 1))


def _index_to_word(x: int, k: int) -> list[int]:
    bits = x - 1
    return [((bits >> (k - 1 - i)) & 1) + 1 for i in range(k)]


def _word_to_index(word) -> int:
    x = 0
    for c in word:
        x = (x << 1) | (c - 1)
    return x + 1


# ---------------------------------------------------------------------------
# Nephew -> Weak-Pigeon (paired product tree)


def nephew_to_weakpigeon(src: NephewInstance, start: int = 1) -> Reduction:
    """Run FindChildren in parallel on both candidate roots over V x V; one
    coordinate is a genuine tree, which is enough for path words to collide
    only on solutions.  If the start probes already contain a solution, emit
    a sentinel pigeonhole instance whose collisions decode to it."""
    ledger = QueryLedger()
    u = start
    v = evaluate(src.g, u, ledger)
    v2 = evaluate(src.g, evaluate(src.f, u, ledger), ledger)
    found = _first_solution_among(src, (u, v, v2), ledger)
    V = src.V
    if found is not None:
        sentinel = WeakPigeonInstance(1, make_table_fn([1, 1], 2, 1, "h"))

        def back_sent(sol: Solution, led: QueryLedger) -> Solution:
            got = _first_solution_among(src, (u, v, v2), led)
            if got is None:
                raise BackmapError("sentinel emitted but start probes are clean")
            return got

        return Reduction("nephew_to_weakpigeon", src, sentinel, back_sent, budget=40)

    V2 = V * V
    k = word_length_for(V2)
    root_pair = (v, v2)

    def pair_flat(p: int, q: int) -> int:
        return (p - 1) * V + q

    def walk(word, led: QueryLedger) -> tuple[bool, tuple[int, int]]:
        p, q = root_pair
        for c in word:
            a = find_children(src, p, led)
            b = find_children(src, q, led)
            if a is None or b is None:
                return True, (p, q)
            p, q = (a[0], b[0]) if c == 1 else (a[1], b[1])
        a = find_children(src, p, led)
        b = find_children(src, q, led)
        if a is None or b is None:
            return True, (p, q)
        return False, (p, q)

    def h_rule(widx: int, led: QueryLedger) -> int:
        word = _index_to_word(widx, k)
        leaf, (p, q) = walk(word, led)
        if leaf:
            return pair_flat(*root_pair)
        return pair_flat(p, q)

    target = WeakPigeonInstance(k, make_rule_fn(h_rule, 1 << k, 1 << (k - 1), name="h"))

    def back(sol: Solution, led: QueryLedger) -> Solution:
        x, y = sol.witness
        for widx in (x, y):
            word = _index_to_word(widx, k)
            leaf, (p, q) = walk(word, led)
            if leaf:
                cands = _find_children_probes(src, p, led) + _find_children_probes(
                    src, q, led
                )
                got = _first_solution_among(src, cands, led)
                if got is None:
                    raise BackmapError(f"paired leaf ({p},{q}) exposes no solution")
                return got
        raise BackmapError("collision of two non-solution words on the paired tree")

    per_step = 40  # two FindChildren bundles
    return Reduction(
        "nephew_to_weakpigeon", src, target, back, budget=per_step * (k + 1)
    )


# ---------------------------------------------------------------------------
# Empty-Child -> Nephew (with and without inverse)


def _ec_solution_at(
    src: EmptyChildInstance, u: int, ledger: QueryLedger
) -> Optional[Solution]:
    if not 1 <= u <= src.V:
        return None
    lu = evaluate(src.L, u, ledger)
    if evaluate(src.F, lu, ledger) != u:
        return Solution("empty_child", "s1", (u,))
    ru = evaluate(src.R, u, ledger)
    if evaluate(src.F, ru, ledger) != u:
        return Solution("empty_child", "s1", (u,))
    if lu == ru != u:
        return Solution("empty_child", "s1", (u,))
    if u == 1:
        if src.variant == "prime":
            if lu == 1 or ru == 1:
                return Solution("empty_child", "s2a", (1,))
        elif lu == 1 or ru == 1 or evaluate(src.F, 1, ledger) != 1:
            return Solution("empty_child", "s2", (1,))
    return None


def _pair_code(v: int, i: int) -> int:
    return 2 * (v - 1) + i + 1


def _pair_decode(flat: int) -> tuple[int, int]:
    return (flat - 1) // 2 + 1, (flat - 1) % 2


def ec_to_nephew(src: EmptyChildInstance) -> Reduction:
    return _ec_to_nephew_impl(src, with_inverse=False)


def ec_to_nephew_inv(src: EmptyChildInstance) -> Reduction:
    return _ec_to_nephew_impl(src, with_inverse=True)


def _ec_to_nephew_impl(src: EmptyChildInstance, with_inverse: bool) -> Reduction:
    """Duplicate every vertex: (v, 0) handles the right child, (v, 1) the
    left; empty-child and wrong-root witnesses become double self-loops,
    isolated vertices point at the canonical root copy."""
    if src.variant != "standard":
        raise ValueError("ec_to_nephew expects the standard variant")
    V = src.V
    V2 = 2 * V
    bot = V2 + 1

    def triple(flat: int, ledger: QueryLedger) -> tuple[int, int, int]:
        """(f, f_inv, g) images of (v, i), f_inv as flat or bot."""
        v, i = _pair_decode(flat)
        lv = evaluate(src.L, v, ledger)
        rv = evaluate(src.R, v, ledger)
        if (
            evaluate(src.F, lv, ledger) != v
            or evaluate(src.F, rv, ledger) != v
            or (lv == rv != v)
        ):
            return flat, flat, flat
        if v == 1 and (lv == 1 or rv == 1 or evaluate(src.F, 1, ledger) != 1):
            return flat, flat, flat
        fv = evaluate(src.F, v, ledger)
        if fv == v and lv == v and rv == v:
            return _pair_code(1, 0), bot, _pair_code(v, 1 - i)
        if v == 1:
            fval = _pair_code(1, 0)
        elif v == evaluate(src.R, fv, ledger):
            fval = _pair_code(fv, 1)
        else:
            fval = _pair_code(fv, 0)
        if (v, i) == (1, 0):
            gval = _pair_code(evaluate(src.L, lv, ledger), 0)
            ival = _pair_code(lv, 0)
        elif (v, i) == (1, 1):
            gval = _pair_code(1, 1)
            ival = bot
        elif i == 0:
            gval = _pair_code(rv, 0)
            ival = _pair_code(lv, 0)
        else:
            gval = _pair_code(lv, 0)
            ival = _pair_code(rv, 0)
        return fval, ival, gval

    f_fn = make_rule_fn(lambda x, led: triple(x, led)[0], V2, V2, name="f")
    g_fn = make_rule_fn(lambda x, led: triple(x, led)[2], V2, V2, name="g")
    f_inv_fn = (
        make_rule_fn(lambda x, led: triple(x, led)[1], V2, V2 + 1, name="f_inv")
        if with_inverse
        else None
    )
    target = NephewInstance(V2, f_fn, g_fn, f_inv_fn)

    def back(sol: Solution, ledger: QueryLedger) -> Solution:
        (flat,) = sol.witness
        v, _ = _pair_decode(flat)
        candidates = [v, evaluate(src.L, v, ledger), evaluate(src.R, v, ledger)]
        l1 = evaluate(src.L, 1, ledger)
        candidates.append(evaluate(src.L, l1, ledger))
        for c in candidates:
            got = _ec_solution_at(src, c, ledger)
            if got is not None:
                return got
        raise BackmapError(f"nephew witness {sol} with no nearby empty-child solution")

    rule = "ec_to_nephew_inv" if with_inverse else "ec_to_nephew"
    return Reduction(rule, src, target, back, budget=24)


# ---------------------------------------------------------------------------
# Nephew-with-Inverse -> Empty-Child'


def nephew_inv_to_ec_prime(src: NephewInstance) -> Reduction:
    """FindChildrenAndParent: vertices without an f-preimage become full
    self-loops; otherwise the children are computed through f_inv and the
    father is always f(v).  The distinguished vertex is picked so that
    f(f(1)) != f(1) after relabeling; if the three fixed probes already carry
    a solution, a single-vertex sentinel instance is emitted instead."""
    if not src.with_inverse:
        raise ValueError("nephew_inv_to_ec_prime needs an inverse-carrying instance")
    assert src.f_inv is not None
    V = src.V
    setup = QueryLedger()
    f1 = evaluate(src.f, 1, setup)
    gf1 = evaluate(src.g, f1, setup)
    probes = (1, f1, gf1)
    found = _first_solution_among(src, probes, setup)
    if found is not None:
        one = make_table_fn([1], 1, 1, "x")
        sentinel = EmptyChildInstance(1, one, one, one, variant="prime")

        def back_sent(sol: Solution, led: QueryLedger) -> Solution:
            got = _first_solution_among(src, probes, led)
            if got is None:
                raise BackmapError("sentinel emitted but fixed probes are clean")
            return got

        return Reduction("nephew_inv_to_ec_prime", src, sentinel, back_sent, budget=30)

    ff1 = evaluate(src.f, f1, setup)
    root = 1 if ff1 != f1 else gf1

    def relabel(w: int) -> int:
        if w == 1:
            return root
        if w == root:
            return 1
        return w

    if V < 2:
        raise ValueError("nephew_inv_to_ec_prime needs V >= 2 for the leaf filler")

    def fcap(x: int, ledger: QueryLedger) -> tuple[Optional[int], Optional[int], int]:
        """FindChildrenAndParent on a source vertex: (left, right, father)."""
        iv = evaluate(src.f_inv, x, ledger)
        if iv == src.bot:
            return x, x, x
        a = evaluate(src.f, evaluate(src.g, iv, ledger), ledger)
        if _first_solution_among(src, (x, iv, a), ledger) is not None:
            return None, None, evaluate(src.f, x, ledger)
        h = evaluate(src.g, a, ledger)
        return a, evaluate(src.f, h, ledger), evaluate(src.f, x, ledger)

    def filler(w: int) -> int:
        return 1 if w != 1 else 2

    def L_rule(w: int, ledger: QueryLedger) -> int:
        l, _, _ = fcap(relabel(w), ledger)
        return filler(w) if l is None else relabel(l)

    def R_rule(w: int, ledger: QueryLedger) -> int:
        _, r, _ = fcap(relabel(w), ledger)
        return filler(w) if r is None else relabel(r)

    def F_rule(w: int, ledger: QueryLedger) -> int:
        _, _, c = fcap(relabel(w), ledger)
        return relabel(c)

    target = EmptyChildInstance(
        V,
        make_rule_fn(F_rule, V, V, name="F"),
        make_rule_fn(L_rule, V, V, name="L"),
        make_rule_fn(R_rule, V, V, name="R"),
        variant="prime",
    )

    def back(sol: Solution, ledger: QueryLedger) -> Solution:
        (w,) = sol.witness
        x = relabel(w)
        cands = [x]
        iv = evaluate(src.f_inv, x, ledger)
        if iv != src.bot:
            cands.append(iv)
            cands.append(evaluate(src.f, evaluate(src.g, iv, ledger), ledger))
        cands.extend(probes)
        got = _first_solution_among(src, cands, ledger)
        if got is None:
            raise BackmapError(f"empty-child' witness {sol} with clean probes")
        return got

    return Reduction("nephew_inv_to_ec_prime", src, target, back, budget=30)
