"""Reductions between compressing pairs, leaf-search trees, and line/DAG
potentials.

The two layered "tree" constructions share a shape: a complete binary tree on
top and band levels of fixed width below, with fathers/children of band
vertices computed through the source oracles.  Back-mappers follow the case
analysis of the corresponding construction and raise BackmapError on any
uncovered case instead of guessing.
"""

from __future__ import annotations

from ..oracle import LevelScheme, QueryLedger, evaluate, make_rule_fn
from ..problems import (
    EmptyChildInstance,
    LossyInstance,
    MeteredLineInstance,
    SinkOfDagInstance,
    Solution,
    word_length_for,
)
from .base import BackmapError, Reduction


# ---------------------------------------------------------------------------
# leaf search -> compressing pair (walk words down, reconstruct words up)


def _word_to_index(word: list[int]) -> int:
    x = 0
    for c in word:
        x = (x << 1) | (c - 1)
    return x + 1


def _index_to_word(x: int, k: int) -> list[int]:
    bits = x - 1
    return [((bits >> (k - 1 - i)) & 1) + 1 for i in range(k)]


def ec_prime_to_lossy(src: EmptyChildInstance) -> Reduction:
    """Empty-Child (standard or weakened-root variant) to a 2x-stretch pair.

    Words over {L, R} of length ceil(log V)+1 map down the tree to vertices
    (the compressor); vertices map up through the father oracle back to words
    (the decompressor).  Any word the round trip misses yields an empty-child
    or wrong-internal-vertex witness via the mismatch-index case analysis.
    """
    if src.variant not in ("standard", "prime"):
        raise ValueError("ec_prime_to_lossy expects a standard or prime instance")
    V = src.V
    k = word_length_for(V)  # ceil(log V) + 1
    N, M = 1 << (k - 1), 1 << k
    root_variant = "s2a" if src.variant == "prime" else "s2"

    def walk_down(word: list[int], ledger: QueryLedger) -> list[int]:
        vs = [1]
        for c in word:
            step = src.L if c == 1 else src.R
            vs.append(evaluate(step, vs[-1], ledger))
        return vs

    def g_rule(x: int, ledger: QueryLedger) -> int:
        return walk_down(_index_to_word(x, k), ledger)[-1]

    def walk_up(u: int, ledger: QueryLedger) -> tuple[list[int], list[int]]:
        word = [0] * k
        us = [0] * (k + 1)
        us[k] = u
        for i in range(k, 0, -1):
            fu = evaluate(src.F, u, ledger)
            word[i - 1] = 1 if u == evaluate(src.L, fu, ledger) else 2
            u = fu
            us[i - 1] = u
        return word, us

    def f_rule(u: int, ledger: QueryLedger) -> int:
        if u > V:
            return 1
        word, _ = walk_up(u, ledger)
        return _word_to_index(word)

    target = LossyInstance(
        N,
        M,
        make_rule_fn(f_rule, N, M, name="up"),
        make_rule_fn(g_rule, M, N, name="down"),
    )

    def back(sol: Solution, ledger: QueryLedger) -> Solution:
        (x,) = sol.witness
        word = _index_to_word(x, k)
        vs = walk_down(word, ledger)
        # abnormal case: the walk stalls (child equals its parent)
        for i in range(k):
            if vs[i] == vs[i + 1]:
                if i == 0:
                    return Solution("empty_child", root_variant, (1,))
                if evaluate(src.F, vs[i], ledger) != vs[i - 1]:
                    return Solution("empty_child", "s1", (vs[i - 1],))
                return Solution("empty_child", "s1", (vs[i],))
        word_up, us = walk_up(vs[-1], ledger)
        for i in range(k, 0, -1):
            # at the largest mismatch index, vs[i] == us[i]; every case of the
            # analysis pins an empty child on the word's previous vertex
            if word_up[i - 1] != word[i - 1] or us[i - 1] != vs[i - 1]:
                return Solution("empty_child", "s1", (vs[i - 1],))
        raise BackmapError(f"word {x} round-trips but was claimed a solution")

    return Reduction("ec_prime_to_lossy", src, target, back, budget=3 * k)


# ---------------------------------------------------------------------------
# compressing pair -> leaf search (Empty-Child), and the bijective variant


def _pow2_exponent(N: int, what: str) -> int:
    n = N.bit_length() - 1
    if 1 << n != N:
        raise ValueError(f"{what} needs a power-of-two size, got {N} (pad first)")
    return n


def lossy_to_ec(src: LossyInstance) -> Reduction:
    """2x-stretch pair to Empty-Child: a perfect tree of 2n levels feeds N^2
    distinguished roots of a band forest whose fathers/children follow the
    pair; every empty-child witness in the bands exposes a round-trip failure.
    """
    return _lossy_to_ec_impl(src, binary=False)


def injlossy_to_bec(src: LossyInstance) -> Reduction:
    """Bijective pair to Binary-Empty-Child: same tree; wrong-father
    witnesses additionally decode through g(f(.)) failures."""
    if not src.bijective:
        raise ValueError("injlossy_to_bec expects a bijective pair")
    return _lossy_to_ec_impl(src, binary=True)


def _lossy_to_ec_impl(src: LossyInstance, binary: bool) -> Reduction:
    N, M = src.N, src.M
    if M != 2 * N:
        raise ValueError("tree construction expects stretch exactly 2x (pad first)")
    n = _pow2_exponent(N, "lossy_to_ec")
    if n < 1:
        raise ValueError("tree construction needs N >= 2")
    scheme = LevelScheme(tree_levels=2 * n, band_width=N, band_levels=2 * N)
    Vt = scheme.total

    def father(i: int, j: int, ledger: QueryLedger) -> tuple[int, int]:
        if i == 1:
            return 1, 1
        if i <= 2 * n:
            return i - 1, (j + 1) // 2
        b = i - 2 * n
        if b > N:  # distinguished roots hang off the perfect tree's leaves
            return 2 * n, ((b - N - 1) * N + j + 1) // 2
        return evaluate(src.f, b, ledger) + 2 * n, (evaluate(src.f, j, ledger) + 1) // 2

    def children(i: int, j: int, ledger: QueryLedger) -> tuple[tuple[int, int], tuple[int, int]]:
        if i < 2 * n:
            return (i + 1, 2 * j - 1), (i + 1, 2 * j)
        if i == 2 * n:
            b, jj = (j - 1) // (N // 2) + 1, (j - 1) % (N // 2) + 1
            return (b + 2 * n + N, 2 * jj - 1), (b + 2 * n + N, 2 * jj)
        b = i - 2 * n
        gb = evaluate(src.g, b, ledger) + 2 * n
        return (gb, evaluate(src.g, 2 * j - 1, ledger)), (
            gb,
            evaluate(src.g, 2 * j, ledger),
        )

    def F_rule(v: int, ledger: QueryLedger) -> int:
        return scheme.index(*father(*scheme.unindex(v), ledger))

    def L_rule(v: int, ledger: QueryLedger) -> int:
        return scheme.index(*children(*scheme.unindex(v), ledger)[0])

    def R_rule(v: int, ledger: QueryLedger) -> int:
        return scheme.index(*children(*scheme.unindex(v), ledger)[1])

    target = EmptyChildInstance(
        Vt,
        make_rule_fn(F_rule, Vt, Vt, name="F"),
        make_rule_fn(L_rule, Vt, Vt, name="L"),
        make_rule_fn(R_rule, Vt, Vt, name="R"),
        variant="binary" if binary else "standard",
    )

    def back(sol: Solution, ledger: QueryLedger) -> Solution:
        (v,) = sol.witness
        i_lvl, j = scheme.unindex(v)
        if sol.variant in ("s2", "s2a"):
            raise BackmapError("the constructed tree has a correct root")
        if i_lvl <= 2 * n:
            raise BackmapError(f"solution {sol} inside the perfect tree region")
        i = i_lvl - 2 * n
        if sol.variant == "s1":
            fgi = evaluate(src.f, evaluate(src.g, i, ledger), ledger)
            (li, lj), (ri, rj) = children(i_lvl, j, ledger)
            if scheme.index(*father(li, lj, ledger)) != v:
                if fgi != i:
                    return Solution("lossy", "s1", (i,))
                return Solution("lossy", "s1", (2 * j - 1,))
            if scheme.index(*father(ri, rj, ledger)) != v:
                if fgi != i:
                    return Solution("lossy", "s1", (i,))
                return Solution("lossy", "s1", (2 * j,))
            # left child equals right child: g collides on {2j-1, 2j}
            fg = evaluate(src.f, evaluate(src.g, 2 * j - 1, ledger), ledger)
            if fg != 2 * j - 1:
                return Solution("lossy", "s1", (2 * j - 1,))
            return Solution("lossy", "s1", (2 * j,))
        if sol.variant == "s3" and binary:
            if i > N:
                raise BackmapError("wrong-father witness among distinguished roots")
            if evaluate(src.g, evaluate(src.f, i, ledger), ledger) != i:
                return Solution("lossy", "s2", (i,))
            return Solution("lossy", "s2", (j,))
        raise BackmapError(f"unhandled target solution {sol}")

    rule = "injlossy_to_bec" if binary else "lossy_to_ec"
    return Reduction(rule, src, target, back, budget=12)


# ---------------------------------------------------------------------------
# heights: Empty-Child-with-Height -> Sink-of-DAG


def ecwh_to_sinkofdag(src: EmptyChildInstance) -> Reduction:
    """Follow left children; potentials are the heights.  Each sink defect
    decodes to a wrong root, an empty child, or a wrong height."""
    if not src.has_heights:
        raise ValueError("ecwh_to_sinkofdag needs a height-carrying instance")
    V = src.V
    target = SinkOfDagInstance(
        V,
        make_rule_fn(lambda v, led: evaluate(src.L, v, led), V, V, name="succ"),
        make_rule_fn(lambda v, led: evaluate(src.H, v, led), V, V, name="pot"),
    )

    def back(sol: Solution, ledger: QueryLedger) -> Solution:
        (v,) = sol.witness
        if sol.variant == "s1":
            return Solution("empty_child", "s2", (1,))
        lv = evaluate(src.L, v, ledger)
        if sol.variant == "s2":
            if evaluate(src.F, lv, ledger) != v:
                return Solution("empty_child", "s1", (v,))
            return Solution("empty_child", "s1", (lv,))
        # s3: non-increasing height along the left edge
        if evaluate(src.F, lv, ledger) != v:
            return Solution("empty_child", "s1", (v,))
        if lv == 1:
            return Solution("empty_child", "s2", (1,))
        return Solution("empty_child", "s4", (lv,))

    return Reduction("ecwh_to_sinkofdag", src, target, back, budget=6)


# ---------------------------------------------------------------------------
# pair + metered line -> Empty-Child-with-Height (and the bijective/EOML twin)


def lossy_and_sml_to_ecwh(srcA: LossyInstance, srcB: MeteredLineInstance) -> Reduction:
    """Combine a 2x pair with a sink-metered line into a height-annotated
    leaf-search tree: band level b sits at line vertex b, positions follow
    the pair, heights follow the meter."""
    return _combined_tree_impl(srcA, srcB, binary=False)


def injlossy_and_eoml_to_becwh(srcA: LossyInstance, srcB: MeteredLineInstance) -> Reduction:
    """Bijective pair + end-metered line -> binary tree with heights; the
    wrong-father clause decodes through g(f(.)) or end-of-line witnesses."""
    if not srcA.bijective:
        raise ValueError("injlossy_and_eoml_to_becwh expects a bijective pair")
    if srcB.variant != "end":
        raise ValueError("injlossy_and_eoml_to_becwh expects an end-variant line")
    return _combined_tree_impl(srcA, srcB, binary=True)


def _combined_tree_impl(
    srcA: LossyInstance, srcB: MeteredLineInstance, binary: bool
) -> Reduction:
    N, M2 = srcA.N, srcA.M
    if M2 != 2 * N:
        raise ValueError("tree construction expects stretch exactly 2x (pad first)")
    n = _pow2_exponent(N, "combined tree")
    if n < 1:
        raise ValueError("tree construction needs N >= 2")
    Mline = srcB.N
    scheme = LevelScheme(tree_levels=n, band_width=N, band_levels=Mline)
    Vt = scheme.total

    def meter(b: int, ledger: QueryLedger) -> int:
        return evaluate(srcB.V, b, ledger) - 1

    def father(i: int, j: int, ledger: QueryLedger) -> tuple[int, int]:
        if i == 1:
            return 1, 1
        if i <= n + 1:
            return i - 1, (j + 1) // 2
        b = i - n
        if meter(b, ledger) == 0:
            return i, j
        return (
            evaluate(srcB.P, b, ledger) + n,
            (evaluate(srcA.f, j, ledger) + 1) // 2,
        )

    def children(i: int, j: int, ledger: QueryLedger):
        if i <= n:
            return (i + 1, 2 * j - 1), (i + 1, 2 * j)
        b = i - n
        if meter(b, ledger) == 0:
            return (i, j), (i, j)
        sb = evaluate(srcB.S, b, ledger) + n
        return (sb, evaluate(srcA.g, 2 * j - 1, ledger)), (
            sb,
            evaluate(srcA.g, 2 * j, ledger),
        )

    def height(i: int, j: int, ledger: QueryLedger) -> int:
        if i <= n:
            return i
        return meter(i - n, ledger) + n

    def F_rule(v: int, ledger: QueryLedger) -> int:
        return scheme.index(*father(*scheme.unindex(v), ledger))

    def L_rule(v: int, ledger: QueryLedger) -> int:
        return scheme.index(*children(*scheme.unindex(v), ledger)[0])

    def R_rule(v: int, ledger: QueryLedger) -> int:
        return scheme.index(*children(*scheme.unindex(v), ledger)[1])

    def H_rule(v: int, ledger: QueryLedger) -> int:
        return height(*scheme.unindex(v), ledger)

    target = EmptyChildInstance(
        Vt,
        make_rule_fn(F_rule, Vt, Vt, name="F"),
        make_rule_fn(L_rule, Vt, Vt, name="L"),
        make_rule_fn(R_rule, Vt, Vt, name="R"),
        variant="binary_with_height" if binary else "with_height",
        H=make_rule_fn(H_rule, Vt, Vt, name="H"),
    )

    def line_sol(variant: str, x: int) -> Solution:
        return Solution("metered_line", variant, (x,))

    def check_source_head(ledger: QueryLedger):
        if (
            evaluate(srcB.P, 1, ledger) != 1
            or evaluate(srcB.S, 1, ledger) == 1
            or meter(1, ledger) != 1
        ):
            return line_sol("s1", 1)
        return None

    def back(sol: Solution, ledger: QueryLedger) -> Solution:
        (v,) = sol.witness
        i_lvl, j = scheme.unindex(v)
        if sol.variant in ("s2", "s2a"):
            raise BackmapError("the constructed tree has a correct root")
        if sol.variant == "s1":
            if i_lvl <= n:
                raise BackmapError("empty child inside the perfect tree region")
            b = i_lvl - n
            if meter(b, ledger) == 0:
                if b == 1:
                    return line_sol("s1", 1)  # V(1) = 0: bad source
                raise BackmapError("frozen band rows below the first are self-loops")
            sb = evaluate(srcB.S, b, ledger)

            def child_fault(xside: int) -> Solution:
                # the child (S(b)+n, g(xside)) does not point back to (i_lvl, j)
                if sb == 1:
                    head = check_source_head(ledger)
                    if head is not None:
                        return head
                    return line_sol("s2", b)  # P(S(b)) = 1 != b
                if meter(sb, ledger) == 0:
                    # meter drops to zero along a live edge
                    return line_sol("s4", b)
                if evaluate(srcB.P, sb, ledger) != b:
                    return line_sol("s2", b)
                fg = evaluate(srcA.f, evaluate(srcA.g, xside, ledger), ledger)
                if (fg + 1) // 2 != j:
                    return Solution("lossy", "s1", (xside,))
                raise BackmapError(f"child of ({i_lvl},{j}) consistent on both axes")

            (li, lj), (ri, rj) = children(i_lvl, j, ledger)
            if scheme.index(*father(li, lj, ledger)) != v:
                return child_fault(2 * j - 1)
            if scheme.index(*father(ri, rj, ledger)) != v:
                return child_fault(2 * j)
            # left equals right: g collides on the sibling pair
            fg = evaluate(srcA.f, evaluate(srcA.g, 2 * j - 1, ledger), ledger)
            if fg != 2 * j - 1:
                return Solution("lossy", "s1", (2 * j - 1,))
            return Solution("lossy", "s1", (2 * j,))
        if sol.variant == "s4":
            if i_lvl <= n:
                raise BackmapError("wrong height inside the perfect tree region")
            b = i_lvl - n
            if b == 1:
                return line_sol("s1", 1)  # V(1) != 1
            if meter(b, ledger) == 0:
                raise BackmapError("frozen rows are father self-loops")
            if meter(b, ledger) > 1:
                return line_sol("s4", b)
            return line_sol("s3", b)
        if sol.variant == "s3" and binary:
            if i_lvl <= n + 1:
                raise BackmapError("wrong father in the tree region or first band")
            b = i_lvl - n
            if meter(b, ledger) == 0:
                raise BackmapError("frozen rows are their own father's child")
            pb = evaluate(srcB.P, b, ledger)
            if meter(pb, ledger) == 0:
                # father row frozen while ours is live: the meter lies at b
                if meter(b, ledger) > 1:
                    return line_sol("s4", b)
                return line_sol("s3", b)
            spb = evaluate(srcB.S, pb, ledger)
            if spb != b:
                return line_sol("s5", b)
            fj = evaluate(srcA.f, j, ledger)
            if evaluate(srcA.g, fj, ledger) != j:
                return Solution("lossy", "s2", (j,))
            raise BackmapError(f"wrong-father witness ({i_lvl},{j}) fully consistent")
        raise BackmapError(f"unhandled target solution {sol}")

    rule = "injlossy_and_eoml_to_becwh" if binary else "lossy_and_sml_to_ecwh"
    return Reduction(rule, (srcA, srcB), target, back, budget=20)
