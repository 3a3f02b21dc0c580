import pytest

from tfzoo.oracle import QueryLedger, evaluate
from tfzoo.problems import Solution, brute_solve, gen_instance, verify
from tfzoo.reductions import dlo_to_lossy


def assert_sound(red, cap=1 << 17):
    sols = brute_solve(red.target, cap=cap)
    for sol in sols:
        got = red.back_map(sol)
        assert verify(red.source, got), (sol, got)
    return sols


def test_dlo_valid_order_true_median_exhaustive():
    for seed in range(8):
        src = gen_instance("dlo", 4, mode="structured", seed=seed).instance
        red = dlo_to_lossy(src)
        assert_sound(red)


def test_dlo_word_space_is_a_valid_stretch():
    src = gen_instance("dlo", 4, mode="structured", seed=0).instance
    red = dlo_to_lossy(src)
    assert red.target.N == 4
    assert red.target.M >= 2 * red.target.N


def test_dlo_low_median_adjacent_pairs_recovered():
    src = gen_instance("dlo", 4, mode="structured", seed=2, median_rule="low").instance
    red = dlo_to_lossy(src)
    sols = brute_solve(red.target, cap=1 << 17)
    assert sols
    backs = {red.back_map(s) for s in sols}
    for b in backs:
        assert verify(src, b)
    assert any(b.variant == "s2" for b in backs)


def test_dlo_planted_cycle_sound_everywhere():
    for seed in range(6):
        for pos in range(3):
            src = gen_instance(
                "dlo", 5, mode="structured", seed=seed, cycle=True, cycle_at=pos
            ).instance
            red = dlo_to_lossy(src)
            for s in brute_solve(red.target, cap=1 << 17):
                assert verify(src, red.back_map(s))


def test_dlo_planted_cycle_recovered():
    # a placement where the search provably walks through the flipped pair
    src = gen_instance("dlo", 6, mode="structured", seed=3, cycle=True, cycle_at=2).instance
    red = dlo_to_lossy(src)
    sols = brute_solve(red.target, cap=1 << 17)
    backs = {red.back_map(s) for s in sols}
    for b in backs:
        assert verify(src, b)
    assert any(b.variant == "s1" for b in backs)


def test_dlo_uniform_instances():
    for seed in range(10):
        src = gen_instance("dlo", 3, mode="uniform", seed=seed).instance
        assert_sound(dlo_to_lossy(src))


def test_dlo_query_budget_per_eval():
    src = gen_instance("dlo", 8, mode="structured", seed=1).instance
    red = dlo_to_lossy(src)
    ell = 4 * 3
    for widx in range(1, red.target.M + 1, 97):
        led = QueryLedger()
        evaluate(red.target.g, widx, led)
        assert led.total <= 3 * ell
    for m in range(1, 9):
        led = QueryLedger()
        evaluate(red.target.f, m, led)
        assert led.total <= 3 * ell


def test_dlo_needs_two_elements():
    with pytest.raises(ValueError):
        dlo_to_lossy(gen_instance("dlo", 1, mode="uniform", seed=0).instance)
