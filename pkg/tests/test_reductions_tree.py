import math

import pytest

from tfzoo.oracle import QueryLedger, evaluate
from tfzoo.problems import (
    LossyInstance,
    Solution,
    brute_solve,
    gen_instance,
    verify,
    word_length_for,
)
from tfzoo.reductions import (
    ec_prime_to_lossy,
    ecwh_to_sinkofdag,
    injlossy_and_eoml_to_becwh,
    injlossy_to_bec,
    lossy_and_sml_to_ecwh,
    lossy_to_ec,
)


def assert_sound(red, source=None, cap=1 << 16):
    source = red.source if source is None else source
    sols = brute_solve(red.target, cap=cap)
    for sol in sols:
        got = red.back_map(sol)
        assert verify(source, got), (sol, got)
    return sols


def assert_sound_combined(red, srcA, srcB, cap=1 << 16):
    sols = brute_solve(red.target, cap=cap)
    for sol in sols:
        got = red.back_map(sol)
        src = srcA if got.problem == "lossy" else srcB
        assert verify(src, got), (sol, got)
    return sols


# -- Empty-Child' -> pair -----------------------------------------------------


def test_ec_prime_to_lossy_complete_tree():
    src = gen_instance("empty_child", 7, mode="structured", seed=0).instance
    red = ec_prime_to_lossy(src)
    assert red.target.N == 8 and red.target.M == 16
    sols = assert_sound(red)
    # every word but the all-right one stalls inconsistently at a leaf (the
    # all-right word's stall reconstruction coincides with itself), and each
    # failing word back-maps to one of the four leaves
    assert len(sols) == 15
    all_right = Solution("lossy", "s1", (16,))
    assert all_right not in sols
    leaves = {Solution("empty_child", "s1", (u,)) for u in (4, 5, 6, 7)}
    assert {red.back_map(s) for s in sols} == leaves


def test_ec_prime_to_lossy_degenerate_root():
    from tfzoo.oracle import make_table_fn
    from tfzoo.problems import EmptyChildInstance

    one = make_table_fn([1], 1, 1, "x")
    src = EmptyChildInstance(1, one, one, one, variant="prime")
    red = ec_prime_to_lossy(src)
    sols = assert_sound(red)
    assert sols  # N=1, M=2 forces at least one failing word
    for s in sols:
        assert red.back_map(s) == Solution("empty_child", "s2a", (1,))


def test_ec_prime_to_lossy_uniform_instances():
    for seed in range(25):
        src = gen_instance("empty_child", 6, mode="uniform", seed=seed).instance
        assert_sound(ec_prime_to_lossy(src))


def test_ec_prime_to_lossy_prime_variant():
    for seed in range(10):
        src = gen_instance(
            "empty_child", 5, mode="uniform", seed=seed, variant="prime"
        ).instance
        assert_sound(ec_prime_to_lossy(src))


def test_ec_prime_query_budget():
    for V in (5, 7, 12):
        src = gen_instance("empty_child", V, mode="uniform", seed=V).instance
        red = ec_prime_to_lossy(src)
        k = word_length_for(V)
        for x in range(1, red.target.M + 1):
            led = QueryLedger()
            evaluate(red.target.g, x, led)
            assert led.total <= 3 * k
        for u in range(1, red.target.N + 1):
            led = QueryLedger()
            evaluate(red.target.f, u, led)
            assert led.total <= 3 * k


# -- pair -> Empty-Child ------------------------------------------------------


def test_lossy_to_ec_dimensions():
    src = gen_instance("lossy", 2, mode="uniform", seed=0).instance
    red = lossy_to_ec(src)
    assert red.target.V == 3 + 8  # N^2 - 1 + 2N^2 for N = 2


def test_lossy_to_ec_exhaustive_n2():
    for seed in range(30):
        src = gen_instance("lossy", 2, mode="uniform", seed=seed).instance
        red = lossy_to_ec(src)
        sols = assert_sound(red)
        assert not any(s.variant == "s2" for s in sols)


def test_lossy_to_ec_n4():
    for seed in range(5):
        src = gen_instance("lossy", 4, mode="uniform", seed=seed).instance
        red = lossy_to_ec(src)
        sols = assert_sound(red, cap=1 << 17)
        assert not any(s.variant == "s2" for s in sols)


def test_lossy_to_ec_perfect_tree_region_clean():
    src = gen_instance("lossy", 4, mode="uniform", seed=9).instance
    red = lossy_to_ec(src)
    n = 2
    tree_size = (1 << (2 * n)) - 1
    for v in range(1, tree_size + 1):
        assert not verify(red.target, Solution("empty_child", "s1", (v,)))


def test_lossy_to_ec_planted_break_pair():
    src = gen_instance("lossy", 4, mode="structured", seed=0, break_pair=2).instance
    red = lossy_to_ec(src)
    sols = brute_solve(red.target, cap=1 << 17)
    backs = {red.back_map(s) for s in sols}
    coset = {Solution("lossy", "s1", (3,)), Solution("lossy", "s1", (4,))}
    assert backs & coset
    for got in backs:
        assert verify(src, got)


def test_injlossy_to_bec_exhaustive():
    for seed in range(20):
        src = gen_instance("lossy", 2, mode="uniform", seed=seed, bijective=True).instance
        assert_sound(injlossy_to_bec(src))


def test_injlossy_to_bec_planted_gf_failure():
    src = gen_instance("lossy", 4, mode="planted_bijective", seed=3, k=2).instance
    red = injlossy_to_bec(src)
    sols = brute_solve(red.target, cap=1 << 17)
    s3s = [s for s in sols if s.variant == "s3"]
    assert s3s
    for s in s3s:
        got = red.back_map(s)
        assert verify(src, got)
    assert any(red.back_map(s) == Solution("lossy", "s2", (2,)) for s in s3s)


# -- heights ------------------------------------------------------------------


def test_ecwh_to_sinkofdag_valid_tree():
    src = gen_instance(
        "empty_child", 7, mode="structured", seed=0, variant="with_height"
    ).instance
    red = ecwh_to_sinkofdag(src)
    sols = assert_sound(red)
    assert any(red.back_map(s).variant == "s1" for s in sols)


def test_ecwh_to_sinkofdag_root_self_loop():
    from tfzoo.oracle import make_table_fn
    from tfzoo.problems import EmptyChildInstance

    one = make_table_fn([1], 1, 1, "x")
    src = EmptyChildInstance(1, one, one, one, variant="with_height", H=one)
    red = ecwh_to_sinkofdag(src)
    sols = brute_solve(red.target)
    assert Solution("sink_of_dag", "s1", (1,)) in sols
    assert red.back_map(Solution("sink_of_dag", "s1", (1,))) == Solution(
        "empty_child", "s2", (1,)
    )


def test_ecwh_to_sinkofdag_uniform():
    for seed in range(25):
        src = gen_instance(
            "empty_child", 9, mode="uniform", seed=seed, variant="with_height"
        ).instance
        assert_sound(ecwh_to_sinkofdag(src))


# -- combined trees -----------------------------------------------------------


def test_lossy_and_sml_to_ecwh_exhaustive():
    for seed in range(12):
        srcA = gen_instance("lossy", 2, mode="uniform", seed=seed).instance
        srcB = gen_instance("metered_line", 3, mode="uniform", seed=seed + 100).instance
        red = lossy_and_sml_to_ecwh(srcA, srcB)
        assert_sound_combined(red, srcA, srcB)


def test_lossy_and_sml_valid_line_planted_lossy():
    srcA = gen_instance("lossy", 2, mode="structured", seed=0, break_pair=1).instance
    srcB = gen_instance("metered_line", 4, mode="structured", seed=1, line_length=3).instance
    red = lossy_and_sml_to_ecwh(srcA, srcB)
    sols = brute_solve(red.target, cap=1 << 16)
    backs = {red.back_map(s) for s in sols}
    assert any(b.problem == "lossy" for b in backs)
    for b in backs:
        src = srcA if b.problem == "lossy" else srcB
        assert verify(src, b)


def test_frozen_rows_never_solve():
    srcA = gen_instance("lossy", 2, mode="uniform", seed=4).instance
    srcB = gen_instance("metered_line", 4, mode="structured", seed=2, line_length=2).instance
    red = lossy_and_sml_to_ecwh(srcA, srcB)
    # rows with meter zero are self-loops: no s1/s4 witnesses there
    from tfzoo.oracle import LevelScheme

    scheme = LevelScheme(tree_levels=1, band_width=2, band_levels=4)
    led = QueryLedger()
    for b in range(1, 5):
        if srcB.meter(b, led) != 0:
            continue
        for j in (1, 2):
            v = scheme.index(b + 1, j)
            assert not verify(red.target, Solution("empty_child", "s1", (v,)))
            assert not verify(red.target, Solution("empty_child", "s4", (v,)))


def test_injlossy_and_eoml_exhaustive():
    for seed in range(12):
        srcA = gen_instance("lossy", 2, mode="uniform", seed=seed, bijective=True).instance
        srcB = gen_instance(
            "metered_line", 3, mode="uniform", seed=seed + 50, variant="end"
        ).instance
        red = injlossy_and_eoml_to_becwh(srcA, srcB)
        assert_sound_combined(red, srcA, srcB)


def test_injlossy_and_eoml_planted_s5():
    # a line with S(P(x)) != x at a planted x: make P collapse two vertices
    from tfzoo.oracle import make_table_fn
    from tfzoo.problems import MeteredLineInstance

    N = 4
    S = make_table_fn([2, 3, 3, 4], N, N, "S")
    P = make_table_fn([1, 1, 2, 3], N, N, "P")  # S(P(4)) = S(3) = 3 != 4
    V = make_table_fn([2, 3, 4, 1], N, N + 1, "V")
    srcB = MeteredLineInstance(N, S, P, V, variant="end")
    assert verify(srcB, Solution("metered_line", "s5", (4,)))
    srcA = gen_instance("lossy", 2, mode="structured", seed=0, bijective=True).instance
    red = injlossy_and_eoml_to_becwh(srcA, srcB)
    sols = brute_solve(red.target, cap=1 << 16)
    backs = {red.back_map(s) for s in sols}
    for b in backs:
        src = srcA if b.problem == "lossy" else srcB
        assert verify(src, b)


def test_injlossy_honest_bijection_block_is_clean():
    # structured bijective pair without a planted break: g(f(y)) = y holds
    # everywhere, so no wrong-father witnesses exist at all, and every empty
    # child traces to the f(g(x)) != x failures (the even block)
    src = gen_instance("lossy", 4, mode="structured", seed=0, bijective=True).instance
    red = injlossy_to_bec(src)
    sols = brute_solve(red.target, cap=1 << 17)
    assert sols and not any(s.variant == "s3" for s in sols)
    for s in sols:
        got = red.back_map(s)
        assert got.variant == "s1" and got.witness[0] % 2 == 0


def test_ecwh_planted_height_violation_maps_to_s4():
    from tfzoo.oracle import make_table_fn
    from tfzoo.problems import EmptyChildInstance

    base = gen_instance(
        "empty_child", 15, mode="structured", seed=0, variant="with_height"
    ).instance
    h = list(base.H.table)
    h[2] = h[2] + 3  # corrupt the height of internal vertex 3
    src = EmptyChildInstance(
        15, base.F, base.L, base.R, "with_height", make_table_fn(h, 15, 15, "H")
    )
    red = ecwh_to_sinkofdag(src)
    sols = brute_solve(red.target)
    backs = {red.back_map(s) for s in sols}
    for b in backs:
        assert verify(src, b)
    assert any(b.variant == "s4" for b in backs)
