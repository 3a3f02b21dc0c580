"""Toy-scale reconstructive generator with feasible witnesses.

The pipeline: a weak design selects which message-code bits feed each output
bit; per output bit, hybrid sets X/Y over the code cube are compared by
rank-matching injection-surjection pairs with an explicit slack block.  For
every message f and target set S, either all per-slot pairs are within slack
(yielding size certificates whose composed maps round-trip exactly), or some
slot overflows, in which case the message is compressible: a fixed-width
advice word reconstructs it exactly through the set oracle and the code's
brute-force list decoder.

All arithmetic is exact (ints and Fractions); messages, seeds, and outputs
are 0-based bitmask integers throughout this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Optional, Sequence


class NWError(Exception):
    pass


# ---------------------------------------------------------------------------
# weak designs


@dataclass(frozen=True)
class WeakDesign:
    d: int
    ell: int
    rho: Fraction
    sets: tuple[tuple[int, ...], ...]  # 1-based positions in [d]

    @property
    def m(self) -> int:
        return len(self.sets)

    def overlap_sums(self) -> list[int]:
        out = []
        for i, Ii in enumerate(self.sets):
            si = set(Ii)
            out.append(sum(1 << len(si & set(Ij)) for Ij in self.sets[:i]))
        return out

    def check(self) -> None:
        for i, Ii in enumerate(self.sets):
            if len(Ii) != self.ell:
                raise NWError(f"set {i + 1} has size {len(Ii)} != {self.ell}")
            if not all(1 <= p <= self.d for p in Ii):
                raise NWError(f"set {i + 1} outside universe [{self.d}]")
        bound = self.rho * (self.m - 1)
        for i, s in enumerate(self.overlap_sums()):
            if i > 0 and s > bound:
                raise NWError(f"overlap sum {s} at set {i + 1} exceeds {bound}")


def build_weak_design(ell: int, rho: Fraction | int, m: int) -> WeakDesign:
    """Greedy construction over d = ceil(ell/ln rho) * ell coordinates: each
    new set minimizes the overlap mass against its predecessors.  Raises if
    the greedy choice ever exceeds the bound (which would contradict the
    existence guarantee for this d)."""
    import math

    rho = Fraction(rho)
    if rho <= 1 or ell < 1 or m < 1:
        raise NWError("need rho > 1, ell >= 1, m >= 1")
    d = max(ell, math.ceil(Fraction(ell) / Fraction(math.log(float(rho)))) * ell)
    chosen: list[tuple[int, ...]] = [tuple(range(1, ell + 1))]
    universe = list(range(1, d + 1))
    for i in range(1, m):
        best = None
        best_sum = None
        for cand in combinations(universe, ell):
            cset = set(cand)
            s = sum(1 << len(cset & set(Ij)) for Ij in chosen)
            if best_sum is None or s < best_sum:
                best, best_sum = cand, s
                if s == i:  # all overlaps empty: cannot do better
                    break
        assert best is not None and best_sum is not None
        if best_sum > rho * (m - 1):
            raise NWError(
                f"greedy failed at set {i + 1}: best overlap mass {best_sum} > "
                f"{rho * (m - 1)}"
            )
        chosen.append(tuple(best))
    design = WeakDesign(d, ell, rho, tuple(chosen))
    design.check()
    return design


# ---------------------------------------------------------------------------
# Hadamard code with brute-force list decoding


def _popcount(x: int) -> int:
    return x.bit_count()


@dataclass(frozen=True)
class HadamardCode:
    """Enc: n-bit message -> 2^n-bit word, bit z = <msg, z> mod 2.

    Minimum distance is exactly 2^(n-1); the decoder brute-forces all
    messages within the requested radius, so the list contract holds by
    construction and only the list-size cap needs care (Johnson bound on the
    integer radius)."""

    n: int

    @property
    def ell(self) -> int:
        return self.n

    @property
    def block(self) -> int:
        return 1 << self.n

    def encode_bit(self, msg: int, z: int) -> int:
        return _popcount(msg & z) & 1

    def encode(self, msg: int) -> int:
        word = 0
        for z in range(self.block):
            word |= self.encode_bit(msg, z) << z
        return word

    def distance(self, a: int, b: int) -> int:
        return _popcount(a ^ b)

    def radius(self, eps: Fraction) -> Fraction:
        return (Fraction(1, 2) - eps) * self.block

    def list_decode(self, word: int, eps: Fraction) -> list[int]:
        r = self.radius(eps)
        out = [
            msg for msg in range(1 << self.n) if self.distance(self.encode(msg), word) <= r
        ]
        cap = self.list_cap(eps)
        if len(out) > cap:
            raise NWError(f"list size {len(out)} exceeds Johnson cap {cap}")
        return out

    def list_cap(self, eps: Fraction) -> int:
        """Johnson bound with the integer decoding radius."""
        nb = self.block
        dmin = nb // 2
        e = int(self.radius(eps))  # integer distances, so floor is exact
        denom = dmin * nb - 2 * e * (nb - e)
        if denom <= 0:
            return 1 << self.n
        return (dmin * nb) // denom


# ---------------------------------------------------------------------------
# parameters


@dataclass(frozen=True)
class NWParams:
    code: HadamardCode
    design: WeakDesign
    m: int
    eps: Fraction
    eps_prime: Fraction

    def __post_init__(self):
        if self.design.m != self.m:
            raise NWError("design size and output width disagree")
        if self.design.ell != self.code.ell:
            raise NWError("design set size and code cube width disagree")
        if self.slack < 1:
            raise NWError("slack block below one element; raise eps or ell")

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def ell(self) -> int:
        return self.code.ell

    @property
    def d(self) -> int:
        return self.design.d

    @property
    def D(self) -> int:
        return 1 << self.d

    @property
    def M(self) -> int:
        return 1 << self.m

    @property
    def slack(self) -> int:
        # per-slot slack eps' * 2^(ell+1); integral for eps' = 2^-t, t <= ell+1
        s = self.eps_prime * (1 << (self.ell + 1))
        if s.denominator != 1:
            raise NWError("slack is not integral; pick eps' a power of two >= 2^-(ell+1)")
        return int(s)

    @property
    def aux_count(self) -> int:
        return 1 << (self.d - self.ell + self.m - 1)

    @property
    def diff(self) -> int:
        return self.slack * self.aux_count  # = eps' * 2^(m+d)

    # -- advice layout -------------------------------------------------------

    @property
    def width_i(self) -> int:
        return (self.m - 1).bit_length()

    @property
    def width_aux(self) -> int:
        return self.d - self.ell + self.m - 1

    @property
    def width_tables(self) -> int:
        sums = self.design.overlap_sums()
        return max(sums) if sums else 0

    @property
    def list_cap(self) -> int:
        return self.code.list_cap(self.eps_prime)

    @property
    def width_idx(self) -> int:
        return max(self.list_cap - 1, 0).bit_length()

    @property
    def advice_bits(self) -> int:
        return self.width_i + self.width_aux + self.width_tables + 2 + self.width_idx

    @property
    def K(self) -> int:
        return 1 << self.advice_bits


def make_params(n: int, m: int, eps: Fraction | int, rho: Fraction | int) -> NWParams:
    eps = Fraction(eps)
    cap = min(eps / m, Fraction(1, 4))
    t = 2
    while Fraction(1, 1 << t) > cap:
        t += 1
    eps_prime = Fraction(1, 1 << t)
    return NWParams(HadamardCode(n), build_weak_design(n, rho, m), m, eps, eps_prime)


# ---------------------------------------------------------------------------
# injection-surjection pairs


@dataclass
class InjSurjPair:
    """H: [a_size] -> [b_size], G: [b_size] -> [a_size]; valid when G.H is
    the identity on the meaningful domain (failures are first-class)."""

    a_size: int
    b_size: int
    fwd: Callable[[int], int]
    bwd: Callable[[int], int]
    domain: Optional[tuple[int, ...]] = None  # meaningful A-points; default all

    def points(self):
        return self.domain if self.domain is not None else range(1, self.a_size + 1)

    def valid_at(self, x: int) -> bool:
        return self.bwd(self.fwd(x)) == x

    def failures(self) -> list[int]:
        return [x for x in self.points() if not self.valid_at(x)]

    @property
    def valid(self) -> bool:
        return not self.failures()


def lex_pair(
    A: Sequence[int], B: Sequence[int], a_slack: int = 0, b_slack: int = 0
) -> InjSurjPair:
    """Rank-matching pair (A + slack) -> (B + slack): the p-th smallest element
    maps to the p-th smallest; overflow ranks land on the smallest element."""
    na, nb = len(A), len(B)
    a_size, b_size = na + a_slack, nb + b_slack

    def fwd(x: int) -> int:
        # points are rank-coded: [1, na] set elements, (na, na+a_slack] slack
        p = x - 1
        if p < nb + b_slack:
            return p + 1
        return nb + b_slack  # clamp: arbitrary (largest) slot

    def bwd(y: int) -> int:
        p = y - 1
        if p < na + a_slack:
            return p + 1
        return 1  # arbitrary, say the smallest

    return InjSurjPair(a_size, b_size, fwd, bwd)


# ---------------------------------------------------------------------------
# the generator engine

Membership = frozenset


class NWEngine:
    """All hybrid-set machinery for one parameter set.  Sets S are explicit
    frozensets of m-bit outputs; per-(S, f, slot, aux) sets are cached."""

    def __init__(self, params: NWParams):
        self.p = params
        self._sets_cache: dict = {}
        self._rank_cache: dict = {}
        self._comp_cache: dict[int, tuple[int, ...]] = {}

    # -- bit plumbing ---------------------------------------------------------

    def restrict(self, z: int, positions: Sequence[int]) -> int:
        out = 0
        for t, pos in enumerate(positions):
            out |= ((z >> (pos - 1)) & 1) << t
        return out

    def code_bit(self, f: int, zp: int) -> int:
        return self.p.code.encode_bit(f, zp)

    def prg(self, f: int, z: int) -> int:
        out = 0
        for i, I in enumerate(self.p.design.sets):
            out |= self.code_bit(f, self.restrict(z, I)) << i
        return out

    def prg_multiset(self, f: int) -> list[int]:
        return [self.prg(f, z) for z in range(self.p.D)]

    def _comp_positions(self, i: int) -> tuple[int, ...]:
        if i not in self._comp_cache:
            Ii = set(self.p.design.sets[i - 1])
            self._comp_cache[i] = tuple(
                q for q in range(1, self.p.d + 1) if q not in Ii
            )
        return self._comp_cache[i]

    def split(self, i: int, z: int, r: int) -> tuple[int, int, int]:
        """(z', r_i, aux) of an element (z, r) at slot i."""
        Ii = self.p.design.sets[i - 1]
        zp = self.restrict(z, Ii)
        r_i = (r >> (i - 1)) & 1
        aux_z = self.restrict(z, self._comp_positions(i))
        aux_r = 0
        t = 0
        for j in range(self.p.m):
            if j != i - 1:
                aux_r |= ((r >> j) & 1) << t
                t += 1
        return zp, r_i, (aux_z << (self.p.m - 1)) | aux_r

    def unsplit(self, i: int, zp: int, r_i: int, aux: int) -> tuple[int, int]:
        aux_r = aux & ((1 << (self.p.m - 1)) - 1)
        aux_z = aux >> (self.p.m - 1)
        z = 0
        for t, pos in enumerate(self.p.design.sets[i - 1]):
            z |= ((zp >> t) & 1) << (pos - 1)
        for t, pos in enumerate(self._comp_positions(i)):
            z |= ((aux_z >> t) & 1) << (pos - 1)
        r = 0
        t = 0
        for j in range(self.p.m):
            if j == i - 1:
                r |= r_i << j
            else:
                r |= ((aux_r >> t) & 1) << j
                t += 1
        return z, r

    # -- hybrid sets ----------------------------------------------------------

    def hyb_member(self, f: int, i: int, z: int, r: int, S: frozenset) -> bool:
        """Is (z, r) in V_i: the first i output bits from the code, the rest
        from r, landing in S."""
        out = 0
        for j in range(1, self.p.m + 1):
            if j <= i:
                bit = self.code_bit(f, self.restrict(z, self.p.design.sets[j - 1]))
            else:
                bit = (r >> (j - 1)) & 1
            out |= bit << (j - 1)
        return out in S

    def x_member(
        self,
        i: int,
        aux: int,
        zp: int,
        r_i: int,
        S: frozenset,
        slot_bit: Callable[[int, int], int],
    ) -> bool:
        """Membership in X_{i,aux}; slot_bit(j, zp) supplies the code bit of
        slot j < i (either from f or from advice tables)."""
        z, r = self.unsplit(i, zp, r_i, aux)
        out = 0
        for j in range(1, self.p.m + 1):
            if j < i:
                bit = slot_bit(j, zp)
            elif j == i:
                bit = r_i
            else:
                bit = (r >> (j - 1)) & 1
            out |= bit << (j - 1)
        return out in S

    def slot_bit_from_f(self, f: int, i: int, aux: int) -> Callable[[int, int], int]:
        def bit(j: int, zp: int) -> int:
            z, _ = self.unsplit(i, zp, 0, aux)
            return self.code_bit(f, self.restrict(z, self.p.design.sets[j - 1]))

        return bit

    def xy_sets(
        self, f: int, i: int, aux: int, S: frozenset
    ) -> tuple[list[int], list[int]]:
        """X and Y at (i, aux), elements coded as zp*2 + r_i, sorted."""
        key = (S, f, i, aux)
        if key in self._sets_cache:
            return self._sets_cache[key]
        slot_bit = self.slot_bit_from_f(f, i, aux)
        X = []
        for zp in range(1 << self.p.ell):
            for r_i in (0, 1):
                if self.x_member(i, aux, zp, r_i, S, slot_bit):
                    X.append(zp * 2 + r_i)
        x_lookup = set(X)
        fset = {
            zp
            for zp in range(1 << self.p.ell)
            if (zp * 2 + self.code_bit(f, zp)) in x_lookup
        }
        Y = [zp * 2 + b for zp in sorted(fset) for b in (0, 1)]
        Y.sort()
        out = (sorted(X), Y)
        self._sets_cache[key] = out
        return out

    # -- composed walks -------------------------------------------------------
    # point coding: set elements are z * 2^m + r + 1; slack j is OFF + j + 1

    @property
    def OFF(self) -> int:
        return 1 << (self.p.d + self.p.m)

    def _elem(self, z: int, r: int) -> int:
        return z * self.p.M + r + 1

    def _unelem(self, v: int) -> tuple[int, int]:
        return (v - 1) // self.p.M, (v - 1) % self.p.M

    def _rank_maps(self, f: int, i: int, aux: int, S: frozenset):
        key = (S, f, i, aux)
        if key not in self._rank_cache:
            X, Y = self.xy_sets(f, i, aux, S)
            self._rank_cache[key] = (
                X,
                Y,
                {v: p for p, v in enumerate(X)},
                {v: p for p, v in enumerate(Y)},
            )
        return self._rank_cache[key]

    def step_lt(self, f: int, i: int, v: int, S: frozenset) -> int:
        """H_i of the <= family: V_i element -> V_{i-1} element or slack."""
        z, r = self._unelem(v)
        zp, r_i, aux = self.split(i, z, r)
        X, Y, xr, yr = self._rank_maps(f, i, aux, S)
        p = yr.get(zp * 2 + r_i, 0)
        if p < len(X):
            z2, r2 = self.unsplit(i, X[p] // 2, X[p] % 2, aux)
            return self._elem(z2, r2)
        t = p - len(X)
        if t >= self.p.slack:
            t = self.p.slack - 1  # clamp; detected as a failure
        return self.OFF + aux * self.p.slack + t + 1

    def unstep_lt(self, f: int, i: int, v: int, S: frozenset) -> int:
        """G_i of the <= family: V_{i-1} element or slack -> V_i element."""
        if v > self.OFF:
            s = v - self.OFF - 1
            aux, t = s // self.p.slack, s % self.p.slack
            X, Y, xr, yr = self._rank_maps(f, i, aux, S)
            p = len(X) + t
        else:
            z, r = self._unelem(v)
            zp, r_i, aux = self.split(i, z, r)
            X, Y, xr, yr = self._rank_maps(f, i, aux, S)
            p = xr.get(zp * 2 + r_i, 0)
        if p < len(Y):
            code = Y[p]
        else:
            code = Y[0] if Y else 0  # arbitrary (smallest); failure territory
        z2, r2 = self.unsplit(i, code // 2, code % 2, aux)
        return self._elem(z2, r2)

    def step_gt(self, f: int, i: int, v: int, S: frozenset) -> int:
        """H'_i of the >= family: V_{i-1} element -> V_i element or slack."""
        z, r = self._unelem(v)
        zp, r_i, aux = self.split(i, z, r)
        X, Y, xr, yr = self._rank_maps(f, i, aux, S)
        p = xr.get(zp * 2 + r_i, 0)
        if p < len(Y):
            z2, r2 = self.unsplit(i, Y[p] // 2, Y[p] % 2, aux)
            return self._elem(z2, r2)
        t = p - len(Y)
        if t >= self.p.slack:
            t = self.p.slack - 1
        return self.OFF + aux * self.p.slack + t + 1

    def unstep_gt(self, f: int, i: int, v: int, S: frozenset) -> int:
        """G'_i of the >= family: V_i element or slack -> V_{i-1} element."""
        if v > self.OFF:
            s = v - self.OFF - 1
            aux, t = s // self.p.slack, s % self.p.slack
            X, Y, xr, yr = self._rank_maps(f, i, aux, S)
            p = len(Y) + t
        else:
            z, r = self._unelem(v)
            zp, r_i, aux = self.split(i, z, r)
            X, Y, xr, yr = self._rank_maps(f, i, aux, S)
            p = yr.get(zp * 2 + r_i, 0)
        if p < len(X):
            code = X[p]
        else:
            code = X[0] if X else 0
        z2, r2 = self.unsplit(i, code // 2, code % 2, aux)
        return self._elem(z2, r2)

    def walk(
        self,
        f: int,
        v: int,
        S: frozenset,
        family: str,
        forward: bool,
    ) -> int:
        """Composed pair maps.  family "lt": H< walks i = m..1 (forward) and
        G< walks i = 1..m (backward); family "gt": H> walks i = 1..m and G>
        walks i = m..1.  Slack ages by one diff per remaining step."""
        p = self.p
        if family == "lt":
            order = range(p.m, 0, -1) if forward else range(1, p.m + 1)
            stepper = self.step_lt if forward else self.unstep_lt
        else:
            order = range(1, p.m + 1) if forward else range(p.m, 0, -1)
            stepper = self.step_gt if forward else self.unstep_gt
        for i in order:
            if v > self.OFF:
                s = v - self.OFF - 1
                if forward:
                    v = self.OFF + s + p.diff + 1
                elif s >= p.diff:
                    v = self.OFF + s - p.diff + 1
                else:
                    v = stepper(f, i, v, S)
            else:
                v = stepper(f, i, v, S)
        return v

    # -- certificates and compression -----------------------------------------

    def v_set(self, f: int, i: int, S: frozenset) -> list[int]:
        out = []
        for z in range(self.p.D):
            for r in range(self.p.M):
                if self.hyb_member(f, i, z, r, S):
                    out.append(self._elem(z, r))
        return out

    def find_bad_slot(self, f: int, S: frozenset) -> Optional[tuple[int, int]]:
        """First (i, aux) whose X/Y sizes differ by more than the slack."""
        for i in range(1, self.p.m + 1):
            for aux in range(self.p.aux_count):
                X, Y = self.xy_sets(f, i, aux, S)
                if abs(len(X) - len(Y)) > self.p.slack:
                    return i, aux
        return None

    def certify(self, f: int, S: frozenset):
        """Either an ApproxCertificate or a CompressionWitness; never neither."""
        bad = self.find_bad_slot(f, S)
        if bad is not None:
            i, aux = bad
            return CompressionWitness(i, aux, self.comp(f, i, aux, S))
        p = self.p
        cnt = sum(1 for z in range(p.D) if self.prg(f, z) in S)
        val = Fraction(cnt * p.M, p.D)
        v0 = self.v_set(f, 0, S)
        vm = self.v_set(f, p.m, S)
        pair_lt = InjSurjPair(
            self.OFF + p.m * p.diff,
            self.OFF + p.m * p.diff,
            lambda v: self.walk(f, v, S, "lt", True),
            lambda v: self.walk(f, v, S, "lt", False),
            domain=tuple(vm),
        )
        pair_gt = InjSurjPair(
            self.OFF + p.m * p.diff,
            self.OFF + p.m * p.diff,
            lambda v: self.walk(f, v, S, "gt", True),
            lambda v: self.walk(f, v, S, "gt", False),
            domain=tuple(v0),
        )
        return ApproxCertificate(val, cnt, pair_lt, pair_gt, tuple(v0), tuple(vm))

    # -- compression ----------------------------------------------------------

    def _overlap_positions(self, i: int, j: int) -> list[int]:
        """Positions (0-based within z') of I_i bits shared with I_j."""
        Ij = set(self.p.design.sets[j - 1])
        return [t for t, pos in enumerate(self.p.design.sets[i - 1]) if pos in Ij]

    def _tables_for(self, f: int, i: int, aux: int) -> list[tuple[int, ...]]:
        tables = []
        for j in range(1, i):
            ov = self._overlap_positions(i, j)
            entries = []
            for t in range(1 << len(ov)):
                zp = 0
                for b, posidx in enumerate(ov):
                    zp |= ((t >> b) & 1) << posidx
                z, _ = self.unsplit(i, zp, 0, aux)
                entries.append(
                    self.code_bit(f, self.restrict(z, self.p.design.sets[j - 1]))
                )
            tables.append(tuple(entries))
        return tables

    def _slot_bit_from_tables(self, i: int, tables) -> Callable[[int, int], int]:
        def bit(j: int, zp: int) -> int:
            ov = self._overlap_positions(i, j)
            t = 0
            for b, posidx in enumerate(ov):
                t |= ((zp >> posidx) & 1) << b
            return tables[j - 1][t]

        return bit

    def _fb_string(
        self, i: int, aux: int, b: int, S: frozenset, slot_bit
    ) -> int:
        word = 0
        for zp in range(1 << self.p.ell):
            if self.x_member(i, aux, zp, b, S, slot_bit):
                word |= 1 << zp
        return word

    def comp(self, f: int, i: int, aux: int, S: frozenset) -> int:
        """Advice word reconstructing f, valid whenever (i, aux) is a genuinely
        overflowing slot."""
        p = self.p
        code = p.code
        tables = self._tables_for(f, i, aux)
        slot_bit = self._slot_bit_from_tables(i, tables)
        f_code = code.encode(f)
        lo = Fraction(code.block, 2) - p.eps_prime * code.block
        hi = Fraction(code.block, 2) + p.eps_prime * code.block
        chosen = None
        for b in (0, 1):
            fb = self._fb_string(i, aux, b, S, slot_bit)
            dist = code.distance(fb, f_code)
            if not lo <= dist <= hi:
                chosen = (b, fb, dist)
                break
        if chosen is None:
            raise NWError(f"comp at ({i},{aux}): both proxies inside the band")
        b, fb, dist = chosen
        bprime = 1 if dist > Fraction(code.block, 2) else 0
        y = fb ^ ((1 << code.block) - 1) if bprime else fb
        lst = code.list_decode(y, p.eps_prime)
        if f not in lst:
            raise NWError("comp: message missing from its own decode list")
        idx = lst.index(f)
        # pack tables in slot order, each little-endian
        tab_word = 0
        shift = 0
        for entries in tables:
            for bit_idx, bit in enumerate(entries):
                tab_word |= bit << (shift + bit_idx)
            shift += len(entries)
        advice = i - 1
        advice = (advice << p.width_aux) | aux
        advice = (advice << p.width_tables) | tab_word
        advice = (advice << 1) | b
        advice = (advice << 1) | bprime
        advice = (advice << p.width_idx) | idx
        return advice

    def decomp(self, advice: int, S: frozenset) -> int:
        p = self.p
        code = p.code
        idx = advice & ((1 << p.width_idx) - 1)
        advice >>= p.width_idx
        bprime = advice & 1
        advice >>= 1
        b = advice & 1
        advice >>= 1
        tab_word = advice & ((1 << p.width_tables) - 1)
        advice >>= p.width_tables
        aux = advice & ((1 << p.width_aux) - 1)
        advice >>= p.width_aux
        i = advice + 1
        if not 1 <= i <= p.m:
            raise NWError(f"decomp: slot field {i} outside [1, {p.m}]")
        tables = []
        shift = 0
        for j in range(1, i):
            size = 1 << len(self._overlap_positions(i, j))
            tables.append(tuple((tab_word >> (shift + t)) & 1 for t in range(size)))
            shift += size
        slot_bit = self._slot_bit_from_tables(i, tables)
        fb = self._fb_string(i, aux, b, S, slot_bit)
        y = fb ^ ((1 << code.block) - 1) if bprime else fb
        lst = code.list_decode(y, p.eps_prime)
        if idx >= len(lst):
            raise NWError(f"decomp: list index {idx} out of range {len(lst)}")
        return lst[idx]

    def decomp_range(self, S: frozenset) -> set[int]:
        """Every message reachable from any advice word (counting oracle for
        hard-message existence)."""
        out = set()
        for advice in range(self.p.K):
            try:
                out.add(self.decomp(advice, S))
            except NWError:
                continue
        return out


@dataclass
class ApproxCertificate:
    val: Fraction
    hit_count: int
    pair_lt: InjSurjPair
    pair_gt: InjSurjPair
    v0: tuple[int, ...]
    vm: tuple[int, ...]


@dataclass(frozen=True)
class CompressionWitness:
    slot: int
    aux: int
    advice: int


def nw_eval(params: NWParams, f: int, z: int) -> int:
    return NWEngine(params).prg(f, z)
