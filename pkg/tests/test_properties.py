"""Cross-cutting randomized properties over generated structures."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from tfzoo.nwprg import lex_pair
from tfzoo.oracle import QueryLedger, make_table_fn
from tfzoo.problems import (
    LossyInstance,
    Solution,
    WeakPigeonInstance,
    brute_solve,
    compute_levels,
    verify,
)
from tfzoo.problems.verify import candidate_solutions
from tfzoo.rng import Rng


@settings(max_examples=60)
@given(st.integers(1, 6), st.data())
def test_compressing_pair_failure_count_lower_bound(N, data):
    # f.g fixes at most N points of [M], so at least M - N witnesses exist
    M = data.draw(st.integers(N + 1, 3 * N + 2))
    f = make_table_fn(data.draw(st.lists(st.integers(1, M), min_size=N, max_size=N)), N, M, "f")
    g = make_table_fn(data.draw(st.lists(st.integers(1, N), min_size=M, max_size=M)), M, N, "g")
    inst = LossyInstance(N, M, f, g)
    sols = brute_solve(inst)
    assert len(sols) >= M - N
    for s in sols:
        assert verify(inst, s)


@settings(max_examples=40)
@given(st.integers(1, 3), st.data())
def test_collision_fast_path_matches_naive(n, data):
    D, H = 1 << n, 1 << (n - 1)
    table = data.draw(st.lists(st.integers(1, H), min_size=D, max_size=D))
    inst = WeakPigeonInstance(n, make_table_fn(table, D, H, "h"))
    fast = brute_solve(inst)
    naive = {c for c in candidate_solutions(inst) if verify(inst, c)}
    assert fast == naive
    assert len(fast) >= D - H  # pigeonhole: at least D - H colliding pairs


@settings(max_examples=50)
@given(st.integers(1, 40), st.data())
def test_levels_recurrence_random_functions(V, data):
    table = data.draw(st.lists(st.integers(1, V), min_size=V, max_size=V))
    f = make_table_fn(table, V, V, "f")
    levels = compute_levels(f)
    led = QueryLedger()
    zero_count = sum(1 for l in levels if l == 0)
    assert zero_count >= 1  # every functional graph has a cycle
    for v in range(1, V + 1):
        fv = f(v, led)
        assert levels[v - 1] == 0 or levels[v - 1] == levels[fv - 1] + 1


@settings(max_examples=60)
@given(
    st.integers(0, 12),
    st.integers(0, 12),
    st.integers(0, 4),
    st.integers(0, 4),
)
def test_lex_pair_valid_iff_counting(na, nb, a_slack, b_slack):
    pair = lex_pair(list(range(na)), list(range(100, 100 + nb)), a_slack, b_slack)
    assert pair.valid == (na + a_slack <= nb + b_slack)
    if not pair.valid:
        assert pair.failures()


@settings(max_examples=20)
@given(st.integers(0, 2**40), st.integers(1, 200))
def test_rng_stream_is_stateless_in_seed_and_counter(seed, k):
    a = Rng(seed)
    first = [a.bits(8) for _ in range(k)]
    b = Rng(seed)
    assert [b.bits(8) for _ in range(k)] == first


@settings(max_examples=30)
@given(st.integers(1, 5), st.integers(0, 2**20))
def test_generated_solutions_always_reverify(n, seed):
    from tfzoo.problems import gen_instance

    inst = gen_instance("weak_pigeon", n, mode="planted", seed=seed).instance
    for s in brute_solve(inst):
        assert verify(inst, s)
