import pytest

from tfzoo.oracle import QueryLedger, evaluate
from tfzoo.problems import LossyInstance, Solution, brute_solve, gen_instance, verify
from tfzoo.reductions import chain, identity_reduction, lossy_pad_pow2, lossy_stretch


def all_target_solutions(target):
    return brute_solve(target, cap=1 << 16)


def assert_sound(reduction, source=None):
    """Every target solution back-maps to an accepted source solution."""
    source = reduction.source if source is None else source
    sols = all_target_solutions(reduction.target)
    for sol in sols:
        got = reduction.back_map(sol)
        assert verify(source, got), (sol, got)
    return sols


def test_stretch_doubling_two_stages():
    r = gen_instance("lossy", 4, mode="uniform", seed=3)
    red = lossy_stretch(r.instance, 16)
    assert red.target.N == 4 and red.target.M == 16
    assert_sound(red)


def test_stretch_identity_when_target_equals_codomain():
    r = gen_instance("lossy", 4, mode="uniform", seed=5)
    red = lossy_stretch(r.instance, 8)
    led = QueryLedger()
    for x in range(1, 9):
        assert evaluate(red.target.g, x, led) == evaluate(r.instance.g, x, led)
    for y in range(1, 5):
        assert evaluate(red.target.f, y, led) == evaluate(r.instance.f, y, led)


def test_stretch_exhaustive_small_sizes():
    for seed in range(12):
        src = gen_instance("lossy", 4, mode="uniform", seed=seed).instance
        red = lossy_stretch(src, 32)
        assert_sound(red)


def test_stretch_back_on_planted_single_failure():
    src = gen_instance("lossy", 4, mode="planted", seed=2, M=5, k=1).instance
    planted = next(iter(brute_solve(src)))
    red = lossy_stretch(src, 20)
    sols = all_target_solutions(red.target)
    assert sols
    for sol in sols:
        assert red.back_map(sol) == planted


def test_stretch_sub_doubling_source():
    # eps = 1/4: exercises the additive stage fallback
    src = gen_instance("lossy", 4, mode="planted", seed=7, M=5, k=2).instance
    red = lossy_stretch(src, 17)
    assert red.target.M == 17
    assert_sound(red)


def test_stretch_query_budget():
    import math

    for N, M_target in [(4, 16), (4, 64), (8, 32)]:
        src = gen_instance("lossy", N, mode="uniform", seed=N).instance
        red = lossy_stretch(src, M_target)
        eps = (src.M - src.N) / src.N
        bound = 2 * math.ceil(math.log2(M_target / src.N) / eps) + 2  # documented c = 2
        for x in range(1, M_target + 1):
            led = QueryLedger()
            evaluate(red.target.g, x, led)
            assert led.total <= bound
        for y in range(1, red.target.N + 1):
            led = QueryLedger()
            evaluate(red.target.f, y, led)
            assert led.total <= bound


@pytest.mark.parametrize("N", [3, 5, 6, 7])
def test_pad_pow2(N):
    for seed in range(6):
        src = gen_instance("lossy", N, mode="uniform", seed=seed).instance
        red = lossy_pad_pow2(src)
        n = (N - 1).bit_length()
        assert red.target.N == 1 << n and red.target.M == 1 << (n + 1)
        assert_sound(red)


def test_chain_identity_is_noop():
    src = gen_instance("lossy", 4, mode="uniform", seed=1).instance
    ident = identity_reduction(src)
    red = lossy_stretch(ident.target, 16)
    composed = chain(ident, red)
    assert composed.budget == red.budget
    assert_sound(composed, source=src)


def test_chain_rejects_mismatched_instances():
    a = gen_instance("lossy", 4, mode="uniform", seed=1).instance
    b = gen_instance("lossy", 4, mode="uniform", seed=2).instance
    with pytest.raises(ValueError):
        chain(identity_reduction(a), identity_reduction(b))
