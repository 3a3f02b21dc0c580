"""Bichromatic-rectangle pigeonhole to a compressing pair, through the
reconstructive generator.

The pair routes each (message f, pigeon p, seed pair) through two hybrid
injection chains: one estimating the 0-colored side, one the 1-colored side.
A message whose chains behave is carried verbatim next to the packed chain
image; a message that breaks a chain is replaced by its fixed-width advice
word, which the decompressor inverts exactly.  Any surviving round-trip
failure therefore pins a defect on the source pairing itself.

Domain/codomain sizes are computed honestly; whether |Y| < |X| actually
holds depends on the parameter set (the advice width must stay below the
message width), which the constructor checks and reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..oracle import QueryLedger, cached, evaluate, make_rule_fn
from ..problems import AMGMInstance, LossyInstance, Solution
from .base import BackmapError, Reduction
from ..nwprg import NWEngine, NWError, NWParams, make_params


class AmgmParamError(Exception):
    def __init__(self, msg: str, ratio: Fraction):
        super().__init__(f"{msg} (|Y|/|X| = {ratio} = {float(ratio):.3f})")
        self.ratio = ratio


@dataclass(frozen=True)
class AmgmSizes:
    Nprime: int
    P: int
    D: int
    K: int
    box: int  # per-chain image bound: D*2^m + m*diff
    Bmax: int  # packed two-chain image bound
    X: int
    Y1: int
    Y2: int

    @property
    def Y(self) -> int:
        return self.Y1 + self.Y2 + 1  # +1 for the invalid-hole atom

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.Y, self.X)


def amgm_params(N: int, c: Fraction | int) -> NWParams:
    """Parameter set for a 2N-vertex coloring: m = log2(2N) output bits.

    For N = 1 the advice is narrower than the message and the resulting pair
    genuinely compresses; for N >= 2 the aux/table advice outgrows any
    brute-enumerable message length and the pair must be built with
    require_valid_stretch=False.
    """
    two_n = 2 * N
    m = two_n.bit_length() - 1
    if 1 << m != two_n:
        raise ValueError("amgm reduction needs 2N a power of two")
    eps = (Fraction(c) - 1) / 3
    if m == 1:
        # single-slot design over d = ell coordinates: rho >= e^ell
        ell = 6
        rho = Fraction(1 << (ell + 6))
    else:
        # rho large enough that the design universe collapses to d = ell,
        # trading overlap-table advice bits for a small seed space
        ell = 2
        rho = Fraction(16)
    return make_params(ell, m, eps, rho)


def amgm_sizes(src: AMGMInstance, params: NWParams) -> AmgmSizes:
    p = params
    Nprime = 1 << p.n
    P = src.P
    D = p.D
    box = D * p.M + p.m * p.diff
    # the packed image of the two chains: sizes depend on the split of seeds
    # between colors; maximize (cnt0*M + m*diff) * ((D-cnt0)*M + m*diff)
    best = 0
    for cnt0 in range(D + 1):
        best = max(best, (cnt0 * p.M + p.m * p.diff) * ((D - cnt0) * p.M + p.m * p.diff))
    X = Nprime * P * D * D
    Y1 = Nprime * best
    Y2 = 2 * p.K * P * D * D
    return AmgmSizes(Nprime, P, D, p.K, box, best, X, Y1, Y2)


def amgm_to_lossy(
    src: AMGMInstance,
    params: NWParams | None = None,
    require_valid_stretch: bool = True,
) -> Reduction:
    if params is None:
        params = amgm_params(src.N, src.c)
    p = params
    engine = NWEngine(p)
    two_n = 2 * src.N
    if 1 << p.m != two_n:
        raise ValueError("parameter output width does not match the coloring domain")
    sizes = amgm_sizes(src, params)
    if sizes.ratio >= 1 and require_valid_stretch:
        raise AmgmParamError(
            "advice space too wide for the message space at these toy sizes",
            sizes.ratio,
        )

    # snapshot the coloring once (2N reads, charged to the setup ledger);
    # the color classes then act as the set oracles of the hybrid machinery
    setup = QueryLedger()
    C_cached = cached(src.C)
    colors = [evaluate(C_cached, v, setup) - 1 for v in range(1, two_n + 1)]
    S_of = (
        frozenset(o for o in range(two_n) if colors[o] == 0),
        frozenset(o for o in range(two_n) if colors[o] == 1),
    )

    M_out = p.M  # = 2N

    def v0_point(vertex: int, seed: int) -> int:
        # V_0 element (z = seed-1, r = vertex-1), 1-based engine coding
        return (seed - 1) * M_out + (vertex - 1) + 1

    def v0_unpoint(point: int) -> tuple[int, int]:
        z, r = (point - 1) // M_out, (point - 1) % M_out
        return r + 1, z + 1

    goods_cache: dict = {}

    def good_z_list(f0: int, color: int) -> list[int]:
        key = (f0, color)
        if key not in goods_cache:
            S = S_of[color]
            goods_cache[key] = [z for z in range(p.D) if engine.prg(f0, z) in S]
        return goods_cache[key]

    def pack_point(point: int, goods: list[int]) -> int:
        """V_m element or slack -> rank-packed index in [cnt*M + m*diff]."""
        if point > engine.OFF:
            return len(goods) * M_out + (point - engine.OFF - 1) + 1
        z, r = (point - 1) // M_out, (point - 1) % M_out
        return goods.index(z) * M_out + r + 1

    def unpack_point(idx: int, goods: list[int]) -> int:
        base = len(goods) * M_out
        if idx > base:
            return engine.OFF + (idx - base - 1) + 1
        z = goods[(idx - 1) // M_out]
        return z * M_out + (idx - 1) % M_out + 1

    # X-side flat coding: ((f * P + (pigeon-1)) * D + (u1-1)) * D + (u2-1) + 1
    def x_code(f0: int, pigeon: int, u1: int, u2: int) -> int:
        return ((f0 * sizes.P + pigeon - 1) * p.D + u1 - 1) * p.D + (u2 - 1) + 1

    def x_decode(x: int) -> tuple[int, int, int, int]:
        t = x - 1
        u2 = t % p.D + 1
        t //= p.D
        u1 = t % p.D + 1
        t //= p.D
        pigeon = t % sizes.P + 1
        return t // sizes.P, pigeon, u1, u2

    # Y-side: [Y1 | Y2 | bottom]
    def y1_code(f0: int, q: int) -> int:
        return f0 * sizes.Bmax + q  # q is 1-based within [B(f)]

    def y2_code(branch: int, advice: int, pigeon: int, u1: int, u2: int) -> int:
        t = ((branch * p.K + advice) * sizes.P + pigeon - 1) * p.D + (u1 - 1)
        return sizes.Y1 + t * p.D + (u2 - 1) + 1

    bottom = sizes.Y

    def walk_or_fail(f0: int, point: int, color: int):
        """H_> then the per-step check; returns ("ok", image) or
        ("bad", slot, aux)."""
        S = S_of[color]
        v = point
        for i in range(1, p.m + 1):
            if v > engine.OFF:
                v = engine.OFF + (v - engine.OFF - 1) + p.diff + 1
                continue
            nxt = engine.step_gt(f0, i, v, S)
            if engine.unstep_gt(f0, i, nxt, S) != v:
                z, r = (v - 1) // M_out, (v - 1) % M_out
                _, _, aux = engine.split(i, z, r)
                return "bad", i, aux
            v = nxt
        return "ok", v

    def g_back(f0: int, image: int, color: int) -> int:
        return engine.walk(f0, image, S_of[color], "gt", forward=False)

    def F_star(x: int, ledger: QueryLedger) -> int:
        f0, pigeon, u1, u2 = x_decode(x)
        flat_ab = evaluate(src.F, pigeon, ledger)
        a, b = (flat_ab - 1) // two_n + 1, (flat_ab - 1) % two_n + 1
        if colors[a - 1] != 0 or colors[b - 1] != 1:
            return bottom  # invalid hole: p is already a source solution
        st0 = walk_or_fail(f0, v0_point(a, u1), 0)
        if st0[0] == "bad":
            advice = engine.comp(f0, st0[1], st0[2], S_of[0])
            return y2_code(0, advice, pigeon, u1, u2)
        st1 = walk_or_fail(f0, v0_point(b, u2), 1)
        if st1[0] == "bad":
            advice = engine.comp(f0, st1[1], st1[2], S_of[1])
            return y2_code(1, advice, pigeon, u1, u2)
        goods0 = good_z_list(f0, 0)
        goods1 = good_z_list(f0, 1)
        y0 = pack_point(st0[1], goods0)
        y1 = pack_point(st1[1], goods1)
        flat1 = len(goods1) * M_out + p.m * p.diff
        q = (y0 - 1) * flat1 + y1
        return y1_code(f0, q)

    def G_star(y: int, ledger: QueryLedger) -> int:
        if y == bottom:
            return 1
        if y <= sizes.Y1:
            f0, q = (y - 1) // sizes.Bmax, (y - 1) % sizes.Bmax + 1
            goods0 = good_z_list(f0, 0)
            goods1 = good_z_list(f0, 1)
            flat1 = len(goods1) * M_out + p.m * p.diff
            flat0 = len(goods0) * M_out + p.m * p.diff
            y0, y1 = (q - 1) // flat1 + 1, (q - 1) % flat1 + 1
            if y0 > flat0:
                return 1  # outside the packed image; arbitrary
            pt0 = g_back(f0, unpack_point(y0, goods0), 0)
            pt1 = g_back(f0, unpack_point(y1, goods1), 1)
            a, u1 = v0_unpoint(pt0)
            b, u2 = v0_unpoint(pt1)
            pigeon = evaluate(src.G, (a - 1) * two_n + b, ledger)
            return x_code(f0, pigeon, u1, u2)
        t = y - sizes.Y1 - 1
        u2 = t % p.D + 1
        t //= p.D
        u1 = t % p.D + 1
        t //= p.D
        pigeon = t % sizes.P + 1
        t //= sizes.P
        branch, advice = t // p.K, t % p.K
        try:
            f0 = engine.decomp(advice, S_of[branch])
        except NWError:
            f0 = 0  # undecodable advice: never produced by the forward map
        return x_code(f0, pigeon, u1, u2)

    target = LossyInstance(
        sizes.Y,
        sizes.X,
        make_rule_fn(G_star, sizes.Y, sizes.X, name="G*"),
        make_rule_fn(F_star, sizes.X, sizes.Y, name="F*"),
        weak_stretch_ok=sizes.ratio >= 1,
    )

    def back(sol: Solution, ledger: QueryLedger) -> Solution:
        (x,) = sol.witness
        f0, pigeon, u1, u2 = x_decode(x)
        flat_ab = evaluate(src.F, pigeon, ledger)
        a, b = (flat_ab - 1) // two_n + 1, (flat_ab - 1) % two_n + 1
        if colors[a - 1] != 0 or colors[b - 1] != 1:
            return Solution("amgm", "s2", (pigeon,))
        if walk_or_fail(f0, v0_point(a, u1), 0)[0] == "bad":
            raise BackmapError("compressed branch 0 round-trips exactly")
        if walk_or_fail(f0, v0_point(b, u2), 1)[0] == "bad":
            raise BackmapError("compressed branch 1 round-trips exactly")
        if evaluate(src.G, flat_ab, ledger) != pigeon:
            return Solution("amgm", "s1", (pigeon,))
        raise BackmapError(f"target witness {x} has no source defect")

    reduction = Reduction("amgm_to_lossy", src, target, back, budget=8 * p.D * p.M)
    reduction.sizes = sizes  # type: ignore[attr-defined]
    return reduction
