import pytest

from tfzoo.problems import Solution, brute_solve, gen_instance
from tfzoo.problems.generate import GenerationError


def test_determinism_same_seed():
    a = gen_instance("lossy", 8, mode="uniform", seed=7).instance
    b = gen_instance("lossy", 8, mode="uniform", seed=7).instance
    assert a.f.table == b.f.table and a.g.table == b.g.table
    c = gen_instance("lossy", 8, mode="uniform", seed=8).instance
    assert (a.f.table, a.g.table) != (c.f.table, c.g.table)


def test_complete_tree_solutions_are_the_leaves():
    r = gen_instance("empty_child", 15, mode="structured", seed=0)
    expected = {Solution("empty_child", "s1", (u,)) for u in range(8, 16)}
    assert r.planted == expected
    assert brute_solve(r.instance) == expected


def test_dlo_low_median_makes_adjacent_pairs_solutions():
    r = gen_instance("dlo", 8, mode="structured", seed=3, median_rule="low")
    sols = brute_solve(r.instance)
    # recover the order and check adjacency pairs all appear as s2
    inst = r.instance
    from tfzoo.oracle import QueryLedger

    led = QueryLedger()
    ranked = sorted(range(1, 9), key=lambda v: sum(inst.prec(u, v, led) for u in range(1, 9)))
    for a, b in zip(ranked, ranked[1:]):
        assert Solution("dlo", "s2", (a, b)) in sols


def test_dlo_planted_manifest_is_adjacency():
    r = gen_instance("dlo", 6, mode="planted", seed=11)
    assert r.planted is not None and len(r.planted) == 5
    assert brute_solve(r.instance) == set(r.planted)


def test_planted_lossy_exact():
    r = gen_instance("lossy", 4, mode="planted", seed=2, M=6, k=3)
    assert r.planted is not None and len(r.planted) == 3
    assert brute_solve(r.instance) == set(r.planted)


def test_planted_single_failure_needs_room():
    with pytest.raises(GenerationError):
        gen_instance("lossy", 4, mode="planted", seed=0, M=8, k=2)
    r = gen_instance("lossy", 4, mode="planted", seed=0, M=5, k=1)
    assert len(r.planted) == 1


def test_planted_weak_pigeon_pairs():
    r = gen_instance("weak_pigeon", 3, mode="planted", seed=9)
    assert len(r.planted) == 4
    assert brute_solve(r.instance) == set(r.planted)


def test_planted_metered_line_and_sink_of_dag():
    r = gen_instance("metered_line", 10, mode="planted", seed=1, variant="end", line_length=6)
    assert brute_solve(r.instance) == set(r.planted)
    r2 = gen_instance("sink_of_dag", 10, mode="planted", seed=1, chain_length=5)
    assert brute_solve(r2.instance) == set(r2.planted)


def test_planted_amgm():
    r = gen_instance("amgm", 2, mode="planted", seed=4)
    assert brute_solve(r.instance) == set(r.planted)
    assert all(s.variant == "s1" for s in r.planted)


def test_structured_lossy_break_pair():
    r = gen_instance("lossy", 4, mode="structured", seed=0, break_pair=2)
    assert Solution("lossy", "s1", (3,)) in r.planted
    assert brute_solve(r.instance) == set(r.planted)


def test_totality_smoke_sample():
    cases = [
        ("lossy", 6, {}),
        ("empty_child", 9, {"variant": "with_height"}),
        ("nephew", 9, {"with_inverse": True}),
        ("dlo", 5, {}),
        ("amgm", 2, {}),
        ("metered_line", 9, {"variant": "end"}),
        ("sink_of_dag", 9, {}),
        ("weak_pigeon", 3, {}),
    ]
    for problem, size, kw in cases:
        for seed in range(8):
            inst = gen_instance(problem, size, mode="uniform", seed=seed, **kw).instance
            assert brute_solve(inst), (problem, seed)
