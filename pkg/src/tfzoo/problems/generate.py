"""Deterministic instance generators: uniform, planted, and structured modes.

Planted modes return the exact intended solution set in the manifest and, for
instances inside the brute cap, assert at generation time that brute_solve
agrees.  Structured modes build canonical shapes (complete trees, valid
lines, honest pairings) whose solution structure the tests rely on; their
manifest is None unless the construction pins the full set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..oracle import make_table_fn
from ..rng import Rng
from .instances import (
    AMGMInstance,
    BTreeLeafInstance,
    DLOInstance,
    EmptyChildInstance,
    Instance,
    LossyInstance,
    MeteredLineInstance,
    NephewInstance,
    SinkOfDagInstance,
    Solution,
    WeakPigeonInstance,
)
from .verify import DEFAULT_BRUTE_CAP, brute_solve, instance_size


class GenerationError(Exception):
    pass


@dataclass(frozen=True)
class GenResult:
    instance: Instance
    planted: Optional[frozenset[Solution]] = None


def _rand_table(rng: Rng, dom: int, cod: int, name: str):
    return make_table_fn([rng.randint(1, cod) for _ in range(dom)], dom, cod, name)


def _assert_planted(result: GenResult, cap: int) -> GenResult:
    assert result.planted is not None
    if instance_size(result.instance) <= cap:
        got = brute_solve(result.instance, cap=cap)
        if got != set(result.planted):
            raise GenerationError(
                f"planted set mismatch: planted {sorted(map(repr, result.planted))} "
                f"vs brute {sorted(map(repr, got))}"
            )
    return result


# ---------------------------------------------------------------------------
# lossy


def gen_lossy(
    N: int,
    mode: str = "uniform",
    seed: int = 0,
    M: Optional[int] = None,
    bijective: bool = False,
    k: Optional[int] = None,
    break_pair: Optional[int] = None,
    cap: int = DEFAULT_BRUTE_CAP,
) -> GenResult:
    rng = Rng(seed)
    M = 2 * N if M is None else M
    if mode == "uniform":
        inst = LossyInstance(
            N, M, _rand_table(rng, N, M, "f"), _rand_table(rng, M, N, "g"), bijective
        )
        return GenResult(inst)
    if mode == "planted":
        # choose the failing set W; everything outside maps to itself via f.g
        k = M - N if k is None else k
        if k < M - N:
            raise GenerationError(f"lossy planting needs k >= M-N = {M - N}")
        points = list(range(1, M + 1))
        rng.shuffle(points)
        fail, ok = set(points[:k]), points[k:]
        f_table = [0] * N
        g_table = [0] * M
        slots = list(range(1, N + 1))
        rng.shuffle(slots)
        for x, s in zip(ok, slots):
            g_table[x - 1] = s
            f_table[s - 1] = x
        free = slots[len(ok):]
        for s in free:
            f_table[s - 1] = rng.choice(points)
        for x in sorted(fail):
            for s in slots:
                if f_table[s - 1] != x:  # avoid accidentally healing x
                    g_table[x - 1] = s
                    break
            else:
                raise GenerationError(f"cannot plant failure at {x}: every slot heals it")
        inst = LossyInstance(
            N,
            M,
            make_table_fn(f_table, N, M, "f"),
            make_table_fn(g_table, M, N, "g"),
            bijective=False,
        )
        planted = frozenset(Solution("lossy", "s1", (x,)) for x in fail)
        return _assert_planted(GenResult(inst, planted), cap)
    if mode == "structured":
        # halving pair: g(x) = ceil(x/2), f(j) = 2j-1; every even x fails
        if M != 2 * N:
            raise GenerationError("structured lossy needs M = 2N")
        f_table = [2 * j - 1 for j in range(1, N + 1)]
        g_table = [(x + 1) // 2 for x in range(1, M + 1)]
        fail = {2 * j for j in range(1, N + 1)}
        if break_pair is not None:
            if not 1 <= break_pair <= N:
                raise GenerationError("break_pair outside [1, N]")
            other = 1 + break_pair % N
            f_table[break_pair - 1] = 2 * other - 1  # both members of the pair fail
            fail.add(2 * break_pair - 1)
        inst = LossyInstance(
            N,
            M,
            make_table_fn(f_table, N, M, "f"),
            make_table_fn(g_table, M, N, "g"),
            bijective,
        )
        planted = frozenset(Solution("lossy", "s1", (x,)) for x in fail)
        if bijective:
            extra = set()
            for y in range(1, N + 1):
                if g_table[f_table[y - 1] - 1] != y:
                    extra.add(Solution("lossy", "s2", (y,)))
            planted = frozenset(planted | extra)
        return _assert_planted(GenResult(inst, planted), cap)
    if mode == "planted_bijective":
        # honest bijection onto the odd block, then break g.f at one point
        y_star = k if k is not None else 1 + rng.randint(0, N - 1)
        f_table = [2 * y - 1 for y in range(1, N + 1)]
        g_table = [(x + 1) // 2 if x % 2 == 1 else (x + 1) // 2 for x in range(1, M + 1)]
        inst0_fail = {2 * y for y in range(1, N + 1)}
        other = 1 + y_star % N
        f_table[y_star - 1] = 2 * other - 1
        planted = {Solution("lossy", "s1", (x,)) for x in inst0_fail}
        planted.add(Solution("lossy", "s1", (2 * y_star - 1,)))
        planted.add(Solution("lossy", "s2", (y_star,)))
        inst = LossyInstance(
            N,
            M,
            make_table_fn(f_table, N, M, "f"),
            make_table_fn(g_table, M, N, "g"),
            bijective=True,
        )
        return _assert_planted(GenResult(inst, frozenset(planted)), cap)
    raise GenerationError(f"unknown lossy mode {mode!r}")


# ---------------------------------------------------------------------------
# empty child


def _tree_tables(parent: dict[int, int], children: dict[int, tuple[int, int]], V: int):
    F = [parent.get(u, u) for u in range(1, V + 1)]
    L = [children.get(u, (u, u))[0] for u in range(1, V + 1)]
    R = [children.get(u, (u, u))[1] for u in range(1, V + 1)]
    return (
        make_table_fn(F, V, V, "F"),
        make_table_fn(L, V, V, "L"),
        make_table_fn(R, V, V, "R"),
    )


def _full_tree_shape(V: int, rng: Optional[Rng]) -> tuple[dict, dict, list[int]]:
    """Parent/children maps of a full binary tree on vertices 1..V (V odd);
    random shape when rng is given, complete-heap shape otherwise."""
    if V % 2 == 0:
        raise GenerationError("a full binary tree needs an odd vertex count")
    parent: dict[int, int] = {}
    children: dict[int, tuple[int, int]] = {}
    if rng is None:
        internal = V // 2
        for u in range(1, internal + 1):
            children[u] = (2 * u, 2 * u + 1)
            parent[2 * u] = u
            parent[2 * u + 1] = u
    else:
        frontier = [1]
        next_vertex = 2
        while next_vertex + 1 <= V:
            u = frontier.pop(rng.randint(0, len(frontier) - 1))
            a, b = next_vertex, next_vertex + 1
            next_vertex += 2
            children[u] = (a, b)
            parent[a] = u
            parent[b] = u
            frontier.extend([a, b])
    leaves = [u for u in range(1, V + 1) if u not in children]
    return parent, children, leaves


def gen_empty_child(
    V: int,
    mode: str = "uniform",
    seed: int = 0,
    variant: str = "standard",
    cap: int = DEFAULT_BRUTE_CAP,
) -> GenResult:
    rng = Rng(seed)
    if mode == "uniform":
        F = _rand_table(rng, V, V, "F")
        L = _rand_table(rng, V, V, "L")
        R = _rand_table(rng, V, V, "R")
        H = _rand_table(rng, V, V, "H") if "height" in variant else None
        return GenResult(EmptyChildInstance(V, F, L, R, variant, H))
    if mode in ("structured", "planted"):
        if V == 1:
            F, L, R = _tree_tables({}, {}, 1)
            H = make_table_fn([1], 1, 1, "H") if "height" in variant else None
            inst = EmptyChildInstance(1, F, L, R, variant, H)
            planted = {Solution("empty_child", "s2a" if variant == "prime" else "s2", (1,))}
            return _assert_planted(GenResult(inst, frozenset(planted)), cap)
        shape_rng = rng if mode == "planted" else None
        parent, children, leaves = _full_tree_shape(V, shape_rng)
        F, L, R = _tree_tables(parent, children, V)
        H = None
        if "height" in variant:
            depth = {1: 1}
            stack = [1]
            while stack:
                u = stack.pop()
                for c in children.get(u, ()):
                    depth[c] = depth[u] + 1
                    stack.append(c)
            H = make_table_fn([depth[u] for u in range(1, V + 1)], V, V, "H")
        inst = EmptyChildInstance(V, F, L, R, variant, H)
        planted = frozenset(Solution("empty_child", "s1", (u,)) for u in leaves)
        return _assert_planted(GenResult(inst, planted), cap)
    raise GenerationError(f"unknown empty-child mode {mode!r}")


# ---------------------------------------------------------------------------
# nephew


def gen_nephew(
    V: int,
    mode: str = "uniform",
    seed: int = 0,
    with_inverse: bool = False,
    solution_at: Optional[int] = None,
    cap: int = DEFAULT_BRUTE_CAP,
) -> GenResult:
    rng = Rng(seed)
    if mode == "uniform":
        f = _rand_table(rng, V, V, "f")
        g = _rand_table(rng, V, V, "g")
        f_inv = _rand_table(rng, V, V + 1, "f_inv") if with_inverse else None
        inst = NephewInstance(V, f, g, f_inv)
        if solution_at is not None:
            # force f(g(u)) = u at the requested start vertex
            g_t = list(inst.g.table)
            f_t = list(inst.f.table)
            g_t[solution_at - 1] = solution_at
            f_t[solution_at - 1] = solution_at
            inst = NephewInstance(
                V,
                make_table_fn(f_t, V, V, "f"),
                make_table_fn(g_t, V, V, "g"),
                f_inv,
            )
        return GenResult(inst)
    if mode == "structured":
        # complete-tree parent map with g = first child of the sibling, so the
        # level structure is a genuine tree and interior vertices are clean
        if V < 3 or (V + 1) & V != 0:
            raise GenerationError("structured nephew needs V = 2^k - 1 >= 3")
        f_table = [max(u // 2, 1) for u in range(1, V + 1)]
        g_table = []
        for u in range(1, V + 1):
            if u == 1:
                g_table.append(2 * 2 if 2 * 2 <= V else 1)
                continue
            sib = u + 1 if u % 2 == 0 else u - 1
            child = 2 * sib
            g_table.append(child if child <= V else u)
        inst = NephewInstance(
            V,
            make_table_fn(f_table, V, V, "f"),
            make_table_fn(g_table, V, V, "g"),
        )
        return GenResult(inst)
    raise GenerationError(f"unknown nephew mode {mode!r}")


# ---------------------------------------------------------------------------
# dense linear order


def gen_dlo(
    N: int,
    mode: str = "uniform",
    seed: int = 0,
    median_rule: str = "true",
    cycle: bool = False,
    cycle_at: int = 0,
    literal_median_rule: bool = False,
    cap: int = DEFAULT_BRUTE_CAP,
) -> GenResult:
    rng = Rng(seed)
    strict_pairs = [(x, y) for y in range(2, N + 1) for x in range(1, y)]
    diag_pairs = [(x, y) for y in range(1, N + 1) for x in range(1, y + 1)]
    if mode == "uniform":
        order = make_table_fn(
            [rng.randint(1, 2) for _ in strict_pairs], len(strict_pairs), 2, "order"
        )
        med = make_table_fn(
            [rng.randint(1, N) for _ in diag_pairs], len(diag_pairs), N, "med"
        )
        return GenResult(DLOInstance(N, order, med, literal_median_rule))
    if mode in ("structured", "planted"):
        perm = list(range(1, N + 1))
        rng.shuffle(perm)  # perm[r] = element of rank r
        rank = {v: r for r, v in enumerate(perm)}
        order_bits = []
        for x, y in strict_pairs:
            order_bits.append(1 if rank[x] < rank[y] else 2)
        if cycle:
            if not 0 <= cycle_at <= N - 3:
                raise GenerationError("cycle position needs 0 <= cycle_at <= N-3")
            a, c = perm[cycle_at], perm[cycle_at + 2]
            lo, hi = min(a, c), max(a, c)
            idx = strict_pairs.index((lo, hi))
            order_bits[idx] = 3 - order_bits[idx]
        med_vals = []
        for x, y in diag_pairs:
            if x == y:
                med_vals.append(x)
            elif median_rule == "true":
                med_vals.append(perm[(rank[x] + rank[y]) // 2])
            elif median_rule == "low":
                med_vals.append(x if rank[x] < rank[y] else y)
            else:
                raise GenerationError(f"unknown median rule {median_rule!r}")
        inst = DLOInstance(
            N,
            make_table_fn(order_bits, len(strict_pairs), 2, "order"),
            make_table_fn(med_vals, len(diag_pairs), N, "med"),
            literal_median_rule,
        )
        if mode == "planted":
            if cycle or median_rule != "true" or literal_median_rule:
                raise GenerationError(
                    "exact planting is only supported for the true-median valid order"
                )
            planted = frozenset(
                Solution("dlo", "s2", (perm[r], perm[r + 1])) for r in range(N - 1)
            )
            return _assert_planted(GenResult(inst, planted), cap)
        return GenResult(inst)
    raise GenerationError(f"unknown dlo mode {mode!r}")


# ---------------------------------------------------------------------------
# amgm


def gen_amgm(
    N: int,
    mode: str = "uniform",
    seed: int = 0,
    c: Fraction | int = 2,
    cap: int = DEFAULT_BRUTE_CAP,
) -> GenResult:
    rng = Rng(seed)
    c = Fraction(c)
    P = int(c * N * N)
    two_n = 2 * N
    if mode == "uniform":
        return GenResult(
            AMGMInstance(
                c,
                N,
                _rand_table(rng, two_n, 2, "C"),
                _rand_table(rng, P, two_n * two_n, "F"),
                _rand_table(rng, two_n * two_n, P, "G"),
            )
        )
    if mode == "planted":
        # balanced coloring; F bijects the first N^2 pigeons onto H, overflow
        # pigeons reuse slots (their decode lands elsewhere -> s1)
        colors = [1] * N + [2] * N
        rng.shuffle(colors)
        zeros = [v for v in range(1, two_n + 1) if colors[v - 1] == 1]
        ones = [v for v in range(1, two_n + 1) if colors[v - 1] == 2]
        hole_flat = [
            (a - 1) * two_n + b for a in zeros for b in ones
        ]
        rng.shuffle(hole_flat)
        F_table = [0] * P
        G_table = [rng.randint(1, P) for _ in range(two_n * two_n)]
        for p in range(1, P + 1):
            slot = hole_flat[(p - 1) % len(hole_flat)]
            F_table[p - 1] = slot
            if p <= len(hole_flat):
                G_table[slot - 1] = p
        inst = AMGMInstance(
            c,
            N,
            make_table_fn(colors, two_n, 2, "C"),
            make_table_fn(F_table, P, two_n * two_n, "F"),
            make_table_fn(G_table, two_n * two_n, P, "G"),
        )
        planted = frozenset(
            Solution("amgm", "s1", (p,)) for p in range(len(hole_flat) + 1, P + 1)
        )
        return _assert_planted(GenResult(inst, planted), cap)
    raise GenerationError(f"unknown amgm mode {mode!r}")


# ---------------------------------------------------------------------------
# metered line / sink of dag


def gen_metered_line(
    N: int,
    mode: str = "uniform",
    seed: int = 0,
    variant: str = "sink",
    line_length: Optional[int] = None,
    cap: int = DEFAULT_BRUTE_CAP,
) -> GenResult:
    rng = Rng(seed)
    if mode == "uniform":
        return GenResult(
            MeteredLineInstance(
                N,
                _rand_table(rng, N, N, "S"),
                _rand_table(rng, N, N, "P"),
                _rand_table(rng, N, N + 1, "V"),
                variant,
            )
        )
    if mode in ("structured", "planted"):
        m = line_length if line_length is not None else max(2, N // 2)
        if not 2 <= m <= N:
            raise GenerationError("line length must be in [2, N]")
        S = list(range(1, N + 1))
        Pp = list(range(1, N + 1))
        Vv = [1] * N  # potential 0 everywhere off the line
        for i in range(1, m):
            S[i - 1] = i + 1
            Pp[i] = i
        S[m - 1] = m
        Pp[0] = 1
        for i in range(1, m + 1):
            Vv[i - 1] = i + 1  # potential i
        inst = MeteredLineInstance(
            N,
            make_table_fn(S, N, N, "S"),
            make_table_fn(Pp, N, N, "P"),
            make_table_fn(Vv, N, N + 1, "V"),
            variant,
        )
        planted = {
            Solution("metered_line", "s2", (m,)),
            Solution("metered_line", "s4", (m,)),
        }
        if variant == "end":
            planted.add(Solution("metered_line", "s6", (m,)))
        if mode == "planted":
            return _assert_planted(GenResult(inst, frozenset(planted)), cap)
        return GenResult(inst, frozenset(planted))
    raise GenerationError(f"unknown metered-line mode {mode!r}")


def gen_sink_of_dag(
    N: int,
    mode: str = "uniform",
    seed: int = 0,
    chain_length: Optional[int] = None,
    cap: int = DEFAULT_BRUTE_CAP,
) -> GenResult:
    rng = Rng(seed)
    if mode == "uniform":
        return GenResult(
            SinkOfDagInstance(N, _rand_table(rng, N, N, "succ"), _rand_table(rng, N, N, "pot"))
        )
    if mode in ("structured", "planted"):
        m = chain_length if chain_length is not None else max(2, N // 2)
        if not 2 <= m <= N:
            raise GenerationError("chain length must be in [2, N]")
        succ = [min(i + 1, m) if i <= m else i for i in range(1, N + 1)]
        succ[m - 1] = m
        pot = [min(i, m) for i in range(1, N + 1)]
        inst = SinkOfDagInstance(
            N, make_table_fn(succ, N, N, "succ"), make_table_fn(pot, N, N, "pot")
        )
        planted = frozenset({Solution("sink_of_dag", "s2", (m - 1,))})
        if mode == "planted":
            return _assert_planted(GenResult(inst, planted), cap)
        return GenResult(inst, planted)
    raise GenerationError(f"unknown sink-of-dag mode {mode!r}")


# ---------------------------------------------------------------------------
# weak pigeon / btree leaf


def gen_weak_pigeon(
    n: int, mode: str = "uniform", seed: int = 0, cap: int = DEFAULT_BRUTE_CAP
) -> GenResult:
    rng = Rng(seed)
    D, H = 1 << n, 1 << (n - 1)
    if mode == "uniform":
        return GenResult(WeakPigeonInstance(n, _rand_table(rng, D, H, "h")))
    if mode == "planted":
        # a perfect pairing: each hole holds exactly two pigeons
        pigeons = list(range(1, D + 1))
        rng.shuffle(pigeons)
        holes = list(range(1, H + 1))
        rng.shuffle(holes)
        table = [0] * D
        planted = set()
        for i, hole in enumerate(holes):
            x, y = pigeons[2 * i], pigeons[2 * i + 1]
            table[x - 1] = hole
            table[y - 1] = hole
            planted.add(Solution("weak_pigeon", "s1", (min(x, y), max(x, y))))
        inst = WeakPigeonInstance(n, make_table_fn(table, D, H, "h"))
        return _assert_planted(GenResult(inst, frozenset(planted)), cap)
    raise GenerationError(f"unknown weak-pigeon mode {mode!r}")


def gen_btree_leaf(
    V: int, mode: str = "structured", seed: int = 0, cap: int = DEFAULT_BRUTE_CAP
) -> GenResult:
    if mode != "structured":
        raise GenerationError("btree-leaf instances are generated as random full trees")
    rng = Rng(seed)
    if V % 2 == 0:
        raise GenerationError("a full binary tree needs an odd vertex count")
    _, children, _ = _full_tree_shape(V, rng)
    bot = V + 1
    Lp = [children.get(u, (bot, bot))[0] for u in range(1, V + 1)]
    Rp = [children.get(u, (bot, bot))[1] for u in range(1, V + 1)]
    inst = BTreeLeafInstance(
        V,
        1,
        make_table_fn(Lp, V, V + 1, "Lp"),
        make_table_fn(Rp, V, V + 1, "Rp"),
        promise_checked=True,
    )
    return GenResult(inst)


# ---------------------------------------------------------------------------
# dispatch


_GENERATORS = {
    "lossy": gen_lossy,
    "empty_child": gen_empty_child,
    "nephew": gen_nephew,
    "dlo": gen_dlo,
    "amgm": gen_amgm,
    "metered_line": gen_metered_line,
    "sink_of_dag": gen_sink_of_dag,
    "weak_pigeon": gen_weak_pigeon,
    "btree_leaf": gen_btree_leaf,
}


def gen_instance(problem: str, size: int, mode: str = "uniform", seed: int = 0, **kw) -> GenResult:
    """Generate an instance of `problem` with the leading size parameter
    `size` (N, V, or n depending on the problem).  Deterministic in seed."""
    gen = _GENERATORS.get(problem)
    if gen is None:
        raise GenerationError(f"unknown problem {problem!r}")
    return gen(size, mode=mode, seed=seed, **kw)
