from fractions import Fraction

import pytest

from tfzoo.nwprg import (
    ApproxCertificate,
    CompressionWitness,
    HadamardCode,
    NWEngine,
    NWError,
    build_weak_design,
    lex_pair,
    make_params,
    nw_eval,
)
from tfzoo.rng import Rng


# -- weak designs --------------------------------------------------------------


def test_design_single_set():
    d = build_weak_design(3, 2, 1)
    assert d.m == 1 and len(d.sets[0]) == 3
    d.check()


def test_design_small():
    d = build_weak_design(3, 2, 4)
    assert d.d == 15  # ceil(3/ln 2) * 3
    d.check()
    bound = Fraction(2) * 3
    for i, s in enumerate(d.overlap_sums()):
        if i > 0:
            assert s <= bound


def test_design_disjoint_when_room():
    d = build_weak_design(2, 2, 3)
    # universe (d = 6) is big enough for disjoint blocks: overlaps all empty,
    # so the i-th sum is i-1
    assert d.d == 6
    assert d.overlap_sums()[1:] == [1, 2]


def test_design_invalid_params():
    with pytest.raises(NWError):
        build_weak_design(2, 1, 2)


# -- Hadamard code --------------------------------------------------------------


def test_encode_zero_message():
    code = HadamardCode(3)
    assert code.encode(0) == 0


def test_decode_contains_message_at_distance_zero():
    code = HadamardCode(4)
    eps = Fraction(1, 8)
    for f in range(16):
        assert f in code.list_decode(code.encode(f), eps)


def test_decode_under_flips():
    code = HadamardCode(3)
    eps = Fraction(1, 8)
    r = int(code.radius(eps))
    rng = Rng(7)
    for f in range(8):
        word = code.encode(f)
        flipped = word
        positions = list(range(code.block))
        rng.shuffle(positions)
        for pos in positions[:r]:
            flipped ^= 1 << pos
        assert f in code.list_decode(flipped, eps)


def test_list_cap_respected_exhaustively_small():
    code = HadamardCode(3)
    eps = Fraction(1, 8)
    cap = code.list_cap(eps)
    for word in range(1 << code.block):
        assert len(code.list_decode(word, eps)) <= cap


# -- generator basics ------------------------------------------------------------


def small_params():
    return make_params(3, 2, Fraction(1, 2), 8)


def test_nw_zero_message_all_zero_output():
    p = small_params()
    for z in range(min(p.D, 64)):
        assert nw_eval(p, 0, z) == 0


def test_nw_single_output_bit_is_code_bit():
    p = make_params(3, 1, Fraction(1, 2), 64)
    eng = NWEngine(p)
    for f in (1, 5):
        for z in range(p.D):
            zp = eng.restrict(z, p.design.sets[0])
            assert eng.prg(f, z) == p.code.encode_bit(f, zp)


def test_prg_multiset_matches_direct_enumeration():
    p = make_params(2, 2, Fraction(1, 2), 4)
    eng = NWEngine(p)
    for f in range(4):
        direct = [
            (p.code.encode_bit(f, eng.restrict(z, p.design.sets[0])))
            | (p.code.encode_bit(f, eng.restrict(z, p.design.sets[1])) << 1)
            for z in range(p.D)
        ]
        assert eng.prg_multiset(f) == direct


def test_split_unsplit_round_trip():
    p = small_params()
    eng = NWEngine(p)
    for i in range(1, p.m + 1):
        for z in range(0, p.D, 7):
            for r in range(p.M):
                zp, r_i, aux = eng.split(i, z, r)
                assert eng.unsplit(i, zp, r_i, aux) == (z, r)


def test_hybrid_identity_x_y_size_difference():
    # |X| - |Y| = dist(fb1, f~) - dist(fb0, f~) for every slot and aux
    p = small_params()
    eng = NWEngine(p)
    rng = Rng(3)
    S = frozenset(o for o in range(p.M) if rng.coin())
    for f in range(0, 1 << p.n, 3):
        fcode = p.code.encode(f)
        for i in range(1, p.m + 1):
            for aux in range(p.aux_count):
                X, Y = eng.xy_sets(f, i, aux, S)
                slot_bit = eng.slot_bit_from_f(f, i, aux)
                fb = [eng._fb_string(i, aux, b, S, slot_bit) for b in (0, 1)]
                d0 = p.code.distance(fb[0], fcode)
                d1 = p.code.distance(fb[1], fcode)
                assert len(X) - len(Y) == d1 - d0


# -- lex pairs --------------------------------------------------------------------


def test_lex_pair_identity():
    pair = lex_pair([3, 1, 2], [10, 20, 30])
    assert pair.valid
    for x in range(1, 4):
        assert pair.bwd(pair.fwd(x)) == x


def test_lex_pair_with_slack_valid():
    pair = lex_pair([1, 2, 3], [5, 9], b_slack=2)
    assert pair.valid


def test_lex_pair_overflow_has_failures():
    pair = lex_pair([1, 2, 3, 4], [7, 8], b_slack=1)
    assert not pair.valid
    assert pair.failures()


# -- endpoints, certificates, dichotomy -------------------------------------------


def test_hybrid_endpoint_sizes():
    p = small_params()
    eng = NWEngine(p)
    rng = Rng(11)
    S = frozenset(o for o in range(p.M) if rng.coin())
    for f in (0, 3, 6):
        v0 = eng.v_set(f, 0, S)
        vm = eng.v_set(f, p.m, S)
        assert len(v0) == p.D * len(S)
        hits = sum(1 for z in range(p.D) if eng.prg(f, z) in S)
        assert len(vm) == hits * p.M


def test_certificate_empty_set():
    p = small_params()
    eng = NWEngine(p)
    out = eng.certify(0, frozenset())
    assert isinstance(out, ApproxCertificate)
    assert out.val == 0 and not out.v0 and not out.vm


def test_certificate_full_cube():
    p = small_params()
    eng = NWEngine(p)
    out = eng.certify(5, frozenset(range(p.M)))
    assert isinstance(out, ApproxCertificate)
    assert out.val == p.M


def dichotomy_check(p, eng, f, S):
    out = eng.certify(f, S)
    if isinstance(out, ApproxCertificate):
        # counted additive error within eps
        assert abs(out.val - len(S)) <= p.eps * p.M
        assert out.pair_lt.valid
        assert out.pair_gt.valid
        return "cert"
    assert isinstance(out, CompressionWitness)
    assert out.advice < p.K
    assert eng.decomp(out.advice, S) == f
    return "comp"


@pytest.mark.parametrize(
    "n,m,eps,rho",
    [(3, 2, Fraction(1, 2), 8), (2, 4, Fraction(1, 2), 4), (4, 3, Fraction(1, 2), 16)],
)
def test_dichotomy_exhaustive_over_messages(n, m, eps, rho):
    p = make_params(n, m, eps, rho)
    eng = NWEngine(p)
    rng = Rng(n * 100 + m)
    outcomes = set()
    for trial in range(6):
        S = frozenset(o for o in range(p.M) if rng.coin())
        for f in range(1 << n):
            outcomes.add(dichotomy_check(p, eng, f, S))
    assert "cert" in outcomes


def test_compression_round_trip_all_failures():
    # every genuinely overflowing slot yields an exact round trip
    p = make_params(3, 2, Fraction(1, 2), 8)
    eng = NWEngine(p)
    rng = Rng(23)
    found = 0
    for trial in range(40):
        S = frozenset(o for o in range(p.M) if rng.coin())
        for f in range(1 << p.n):
            bad = eng.find_bad_slot(f, S)
            if bad is None:
                continue
            i, aux = bad
            advice = eng.comp(f, i, aux, S)
            assert eng.decomp(advice, S) == f
            found += 1
    assert found  # the scan exercised real compressions


def test_advice_width_within_declared_shape():
    import math

    for n, m, eps, rho in [(3, 2, Fraction(1, 2), 8), (2, 4, Fraction(1, 2), 4)]:
        p = make_params(n, m, eps, rho)
        bound = (
            max((m - 1).bit_length(), 0)
            + (p.d - p.ell + p.m - 1)
            + float(p.design.rho) * (m - 1)
            + math.log2(max(p.list_cap, 1))
            + 2
        )
        assert p.advice_bits <= bound + 1


def test_decomp_range_small_for_single_slot_params():
    # advice narrower than the message space: a hard message must exist
    p = make_params(6, 1, Fraction(7, 3), 1 << 12)
    assert p.d == p.ell == 6
    eng = NWEngine(p)
    rng = Rng(5)
    S = frozenset(o for o in range(p.M) if rng.coin())
    reachable = eng.decomp_range(S)
    assert len(reachable) <= p.K < 1 << p.n
