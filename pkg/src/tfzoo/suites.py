"""Shared property suites: the CLI self-test and the acceptance tests drive
the same code with different trial counts.

Each suite returns a SuiteResult; reduction soundness additionally exposes a
per-rule case registry so benchmarks and tests can draw identical instance
streams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .oracle import QueryLedger, evaluate
from .problems import (
    Solution,
    brute_solve,
    compute_levels,
    gen_instance,
    verify,
    word_length_for,
)
from .reductions import (
    Reduction,
    amgm_to_lossy,
    btreeleaf_to_weakpigeon,
    dlo_to_lossy,
    ec_prime_to_lossy,
    ec_to_nephew,
    ec_to_nephew_inv,
    ecwh_to_sinkofdag,
    find_children,
    injlossy_and_eoml_to_becwh,
    injlossy_to_bec,
    lossy_and_sml_to_ecwh,
    lossy_pad_pow2,
    lossy_stretch,
    lossy_to_ec,
    nephew_inv_to_ec_prime,
    nephew_to_weakpigeon,
)
from .resolution import (
    CNF,
    bot_probability,
    build_solving_tree,
    dt_to_proof,
    proof_to_dt,
    search_of_cnf,
    tree_eval,
    verify_tree_resolution,
    zppdt_to_randres,
)
from .rng import Rng
from .solvers import (
    exact_btreeleaf_success,
    solve_btreeleaf_random,
    solve_ec_random,
    solve_lossy_random,
    solve_nephew_random,
    solve_search_cnf_random,
)
from .nwprg import ApproxCertificate, CompressionWitness, NWEngine, make_params


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checks: int
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"[{status}] {self.name}: {self.checks} checks{extra}"


class SuiteFailure(Exception):
    pass


# ---------------------------------------------------------------------------
# reduction soundness (acceptance criterion 1)


def _sized(rng: Rng, options):
    return options[rng.randint(0, len(options) - 1)]


def _cases_lossy_stretch(i: int, rng: Rng):
    if i % 3 == 0:
        src = gen_instance("lossy", 4, mode="planted", seed=i, M=5, k=1).instance
    else:
        N = _sized(rng, (2, 3, 4, 6, 8))
        src = gen_instance("lossy", N, mode="uniform", seed=i).instance
    target_M = src.M * _sized(rng, (2, 3, 4))
    return lossy_stretch(src, target_M)


def _cases_lossy_pad_pow2(i: int, rng: Rng):
    N = _sized(rng, (2, 3, 5, 6, 7, 8))
    return lossy_pad_pow2(gen_instance("lossy", N, mode="uniform", seed=i).instance)


def _cases_ec_prime_to_lossy(i: int, rng: Rng):
    V = _sized(rng, (1, 3, 5, 8, 12, 15))
    variant = "prime" if i % 3 == 0 else "standard"
    mode = "structured" if i % 5 == 0 and V % 2 == 1 else "uniform"
    src = gen_instance("empty_child", V, mode=mode, seed=i, variant=variant).instance
    return ec_prime_to_lossy(src)


def _cases_lossy_to_ec(i: int, rng: Rng):
    N = _sized(rng, (2, 2, 4, 8))
    src = gen_instance("lossy", N, mode="uniform", seed=i).instance
    return lossy_to_ec(src)


def _cases_injlossy_to_bec(i: int, rng: Rng):
    N = _sized(rng, (2, 2, 4))
    mode = "planted_bijective" if i % 4 == 0 else "uniform"
    src = gen_instance("lossy", N, mode=mode, seed=i, bijective=True).instance
    if not src.bijective:
        src = gen_instance("lossy", N, mode="uniform", seed=i, bijective=True).instance
    return injlossy_to_bec(src)


def _cases_ecwh_to_sinkofdag(i: int, rng: Rng):
    V = _sized(rng, (1, 4, 9, 16, 25, 32))
    mode = "structured" if i % 4 == 0 and V % 2 == 1 else "uniform"
    src = gen_instance("empty_child", V, mode=mode, seed=i, variant="with_height").instance
    return ecwh_to_sinkofdag(src)


def _cases_lossy_and_sml(i: int, rng: Rng):
    N = _sized(rng, (2, 2, 4))
    M = _sized(rng, (2, 3, 4, 5))
    srcA = gen_instance("lossy", N, mode="uniform", seed=i).instance
    modeB = "structured" if i % 4 == 0 else "uniform"
    srcB = gen_instance("metered_line", M, mode=modeB, seed=i + 7).instance
    return lossy_and_sml_to_ecwh(srcA, srcB)


def _cases_injlossy_and_eoml(i: int, rng: Rng):
    N = _sized(rng, (2, 2, 4))
    M = _sized(rng, (2, 3, 4))
    srcA = gen_instance("lossy", N, mode="uniform", seed=i, bijective=True).instance
    modeB = "structured" if i % 4 == 0 else "uniform"
    srcB = gen_instance("metered_line", M, mode=modeB, seed=i + 3, variant="end").instance
    return injlossy_and_eoml_to_becwh(srcA, srcB)


def _cases_btreeleaf_to_wp(i: int, rng: Rng):
    V = _sized(rng, (1, 3, 7, 9, 15))
    src = gen_instance("btree_leaf", V, mode="structured", seed=i).instance
    return btreeleaf_to_weakpigeon(src)


def _cases_nephew_to_wp(i: int, rng: Rng):
    V = _sized(rng, (2, 4, 6))
    kw = {"solution_at": 1} if i % 6 == 0 else {}
    src = gen_instance("nephew", V, mode="uniform", seed=i, **kw).instance
    return nephew_to_weakpigeon(src)


def _cases_ec_to_nephew(i: int, rng: Rng):
    V = _sized(rng, (1, 4, 7, 12, 16))
    mode = "structured" if i % 5 == 0 and (V + 1) & V == 0 and V >= 3 else "uniform"
    src = gen_instance("empty_child", V, mode=mode, seed=i).instance
    return ec_to_nephew(src)


def _cases_ec_to_nephew_inv(i: int, rng: Rng):
    V = _sized(rng, (1, 4, 7, 12, 16))
    src = gen_instance("empty_child", V, mode="uniform", seed=i).instance
    return ec_to_nephew_inv(src)


def _cases_nephew_inv_to_ec(i: int, rng: Rng):
    if i % 3 == 0:
        ec = gen_instance("empty_child", _sized(rng, (4, 7)), mode="uniform", seed=i).instance
        return nephew_inv_to_ec_prime(ec_to_nephew_inv(ec).target)
    V = _sized(rng, (2, 5, 9, 16))
    src = gen_instance("nephew", V, mode="uniform", seed=i, with_inverse=True).instance
    return nephew_inv_to_ec_prime(src)


def _cases_dlo_to_lossy(i: int, rng: Rng):
    N = _sized(rng, (2, 3, 4, 4))
    mode = "uniform" if i % 2 else "structured"
    kw = {}
    if mode == "structured":
        kw["median_rule"] = "low" if i % 4 == 0 else "true"
        if i % 6 == 0 and N >= 3:
            kw["cycle"] = True
    src = gen_instance("dlo", N, mode=mode, seed=i, **kw).instance
    return dlo_to_lossy(src)


def _cases_amgm_to_lossy(i: int, rng: Rng):
    mode = "planted" if i % 4 == 0 else "uniform"
    src = gen_instance("amgm", 2, mode=mode, seed=i).instance
    return amgm_to_lossy(src, require_valid_stretch=False)


REDUCTION_RULES: dict[str, Callable[[int, Rng], Reduction]] = {
    "lossy_stretch": _cases_lossy_stretch,
    "lossy_pad_pow2": _cases_lossy_pad_pow2,
    "ec_prime_to_lossy": _cases_ec_prime_to_lossy,
    "lossy_to_ec": _cases_lossy_to_ec,
    "injlossy_to_bec": _cases_injlossy_to_bec,
    "ecwh_to_sinkofdag": _cases_ecwh_to_sinkofdag,
    "lossy_and_sml_to_ecwh": _cases_lossy_and_sml,
    "injlossy_and_eoml_to_becwh": _cases_injlossy_and_eoml,
    "btreeleaf_to_weakpigeon": _cases_btreeleaf_to_wp,
    "nephew_to_weakpigeon": _cases_nephew_to_wp,
    "ec_to_nephew": _cases_ec_to_nephew,
    "ec_to_nephew_inv": _cases_ec_to_nephew_inv,
    "nephew_inv_to_ec_prime": _cases_nephew_inv_to_ec,
    "dlo_to_lossy": _cases_dlo_to_lossy,
    "amgm_to_lossy": _cases_amgm_to_lossy,
}


def verify_on_source(red: Reduction, got: Solution) -> bool:
    src = red.source
    if isinstance(src, tuple):  # combined-source reductions
        srcA, srcB = src
        return verify(srcA if got.problem == "lossy" else srcB, got)
    return verify(src, got)


def run_rule_soundness(rule: str, count: int, seed: int = 0) -> tuple[int, int]:
    """Back-map every target solution of `count` generated instances;
    returns (instances, solutions checked).  Raises SuiteFailure on any miss
    or on a back invocation exceeding the reduction's declared budget."""
    maker = REDUCTION_RULES[rule]
    rng = Rng(seed * 7919 + sum(ord(c) for c in rule))
    solutions = 0
    for i in range(count):
        red = maker(i, rng)
        try:
            sols = brute_solve(red.target, cap=1 << 17)
        except Exception as exc:  # pragma: no cover - suite plumbing
            raise SuiteFailure(f"{rule}[{i}]: target enumeration failed: {exc}")
        for sol in sols:
            led = QueryLedger()
            got = red.back_map(sol, led)
            if led.total > red.budget:
                raise SuiteFailure(
                    f"{rule}[{i}]: back of {sol} took {led.total} > budget {red.budget}"
                )
            if not verify_on_source(red, got):
                raise SuiteFailure(f"{rule}[{i}]: {sol} back-mapped to rejected {got}")
        solutions += len(sols)
    return count, solutions


def suite_reduction_soundness(per_rule: int = 20, seed: int = 0) -> SuiteResult:
    total = 0
    try:
        for rule in REDUCTION_RULES:
            _, sols = run_rule_soundness(rule, per_rule, seed)
            total += sols
    except SuiteFailure as exc:
        return SuiteResult("reduction-soundness", False, total, str(exc))
    return SuiteResult(
        "reduction-soundness",
        True,
        total,
        f"{len(REDUCTION_RULES)} rules x {per_rule} instances",
    )


# ---------------------------------------------------------------------------
# randomized-solver suites (criteria 2 and 3)


def suite_btreeleaf_success(
    instances: int = 20, mc_instances: int = 3, mc_trials: int = 10_000, seed: int = 0
) -> SuiteResult:
    rng = Rng(seed)
    checks = 0
    for i in range(instances):
        V = 2 * rng.randint(1, (1 << 11) - 1) + 1  # odd, up to 2^12 - 1
        inst = gen_instance("btree_leaf", V, mode="structured", seed=seed * 31 + i).instance
        p = exact_btreeleaf_success(inst)
        checks += 1
        if p < Fraction(5, 6):
            return SuiteResult(
                "btreeleaf-success", False, checks, f"instance {i}: exact {p} < 5/6"
            )
        if i < mc_instances:
            hits = 0
            trial_rng = Rng(seed * 977 + i)
            for t in range(mc_trials):
                if solve_btreeleaf_random(inst, trial_rng.split(t)).solved:
                    hits += 1
            pf = float(p)
            sigma = math.sqrt(pf * (1 - pf) / mc_trials)
            if abs(hits / mc_trials - pf) > max(3 * sigma, 1e-9):
                return SuiteResult(
                    "btreeleaf-success",
                    False,
                    checks,
                    f"instance {i}: MC {hits / mc_trials} vs exact {pf} beyond 3 sigma",
                )
            checks += mc_trials
    return SuiteResult("btreeleaf-success", True, checks)


def suite_zero_error(runs: int = 5000, seed: int = 0) -> SuiteResult:
    """Spread `runs` randomized solver calls across the zoo; any non-bot
    output failing verify fails the suite."""
    rng = Rng(seed)
    share = runs // 5
    checks = 0

    def fail(what, inst_seed, out):
        return SuiteResult(
            "zero-error", False, checks, f"{what}[{inst_seed}] emitted bad {out.result}"
        )

    for j in range(share):
        inst = gen_instance(
            "btree_leaf", 2 * (j % 40) + 3, mode="structured", seed=j % 25
        ).instance
        out = solve_btreeleaf_random(inst, rng.split(j))
        checks += 1
        if out.result is not None and not verify(inst, out.result):
            return fail("btree", j, out)
    for j in range(share):
        inst = gen_instance("lossy", 2 + j % 7, mode="uniform", seed=j % 50).instance
        out = solve_lossy_random(inst, rng.split(10_000_000 + j))
        checks += 1
        if out.result is not None and not verify(inst, out.result):
            return fail("lossy", j, out)
    for j in range(share):
        inst = gen_instance("empty_child", 2 + j % 14, mode="uniform", seed=j % 50).instance
        out = solve_ec_random(inst, rng.split(20_000_000 + j))
        checks += 1
        if out.result is not None and not verify(inst, out.result):
            return fail("empty_child", j, out)
    for j in range(share):
        inst = gen_instance("nephew", 2 + j % 30, mode="uniform", seed=j % 50).instance
        out = solve_nephew_random(inst, rng.split(30_000_000 + j))
        checks += 1
        if out.result is not None and not verify(inst, out.result):
            return fail("nephew", j, out)
    cnf_pool = []
    pool_rng = Rng(seed + 1)
    for _ in range(10):
        clauses = tuple(frozenset([v]) for v in range(1, 5)) + tuple(
            frozenset([-v]) for v in range(1, 5)
        )
        cnf_pool.append((CNF(4, clauses), pool_rng.bits(4)))
    for j in range(runs - 4 * share):
        cnf, x = cnf_pool[j % len(cnf_pool)]
        inst = search_of_cnf(cnf, x ^ (j & 15))
        out = solve_search_cnf_random(inst, rng.split(40_000_000 + j))
        checks += 1
        if out.result is not None and not verify(inst, out.result):
            return fail("search_cnf", j, out)
    return SuiteResult("zero-error", True, checks)


# ---------------------------------------------------------------------------
# FindChildren clauses (criterion 4)


def suite_find_children(instances: int = 60, vmax: int = 32, seed: int = 0) -> SuiteResult:
    rng = Rng(seed)
    checks = 0
    led = QueryLedger()
    for i in range(instances):
        V = rng.randint(1, vmax)
        inst = gen_instance("nephew", V, mode="uniform", seed=seed * 131 + i).instance
        levels = compute_levels(inst.f)
        for v in range(1, V + 1):
            out = find_children(inst, v)
            checks += 1
            if out is None:
                continue
            a, b = out
            fa, fb = inst.f(a, led), inst.f(b, led)
            ok = (
                a != b
                and fa != fb
                and inst.f(fa, led) == inst.f(fb, led) == inst.f(v, led)
            )
            if levels[v - 1] >= 2:
                ok = ok and levels[a - 1] == levels[b - 1] == levels[v - 1] + 1
            if not ok:
                return SuiteResult(
                    "find-children", False, checks, f"instance {i} vertex {v}"
                )
    return SuiteResult("find-children", True, checks)


# ---------------------------------------------------------------------------
# query budgets (criterion 5)


def suite_query_budgets(seed: int = 0) -> SuiteResult:
    checks = 0
    # ec_prime_to_lossy: per evaluation at most 3(ceil(log V) + 1)
    for i, V in enumerate((3, 5, 9, 17, 32)):
        src = gen_instance("empty_child", V, mode="uniform", seed=seed + i).instance
        red = ec_prime_to_lossy(src)
        k = word_length_for(V)
        for x in range(1, red.target.M + 1):
            led = QueryLedger()
            evaluate(red.target.g, x, led)
            checks += 1
            if led.total > 3 * k:
                return SuiteResult("query-budgets", False, checks, f"ec down {led.total}")
        for u in range(1, red.target.N + 1):
            led = QueryLedger()
            evaluate(red.target.f, u, led)
            checks += 1
            if led.total > 3 * k:
                return SuiteResult("query-budgets", False, checks, f"ec up {led.total}")
    # dlo_to_lossy: per evaluation at most 3 * ell, ell = 4 ceil(log N)
    for i, N in enumerate((2, 4, 8)):
        src = gen_instance("dlo", N, mode="structured", seed=seed + i).instance
        red = dlo_to_lossy(src)
        ell = 4 * max((N - 1).bit_length(), 1)
        for x in range(1, red.target.M + 1, 31):
            led = QueryLedger()
            evaluate(red.target.g, x, led)
            checks += 1
            if led.total > 3 * ell:
                return SuiteResult("query-budgets", False, checks, f"dlo g {led.total}")
        for m in range(1, N + 1):
            led = QueryLedger()
            evaluate(red.target.f, m, led)
            checks += 1
            if led.total > 3 * ell:
                return SuiteResult("query-budgets", False, checks, f"dlo f {led.total}")
    # lossy_stretch: per evaluation at most 2 ceil(eps^-1 log2(M/N)) + 2
    for i, (N, mult) in enumerate([(4, 4), (4, 16), (8, 4), (3, 8)]):
        src = gen_instance("lossy", N, mode="uniform", seed=seed + i).instance
        target_M = src.M * mult
        red = lossy_stretch(src, target_M)
        eps = (src.M - src.N) / src.N
        bound = 2 * math.ceil(math.log2(target_M / src.N) / eps) + 2
        for x in range(1, target_M + 1, 7):
            led = QueryLedger()
            evaluate(red.target.g, x, led)
            checks += 1
            if led.total > bound:
                return SuiteResult(
                    "query-budgets", False, checks, f"stretch g {led.total} > {bound}"
                )
        for y in range(1, red.target.N + 1):
            led = QueryLedger()
            evaluate(red.target.f, y, led)
            checks += 1
            if led.total > bound:
                return SuiteResult(
                    "query-budgets", False, checks, f"stretch f {led.total} > {bound}"
                )
    return SuiteResult("query-budgets", True, checks)


# ---------------------------------------------------------------------------
# resolution bridge (criterion 6)


def _random_unsat_cnf(n: int, rng: Rng, width: int = 3) -> CNF:
    while True:
        m = rng.randint(n + 1, 3 * n + 4)
        clauses = []
        for _ in range(m):
            k = rng.randint(1, min(width, n))
            vs: list[int] = []
            while len(vs) < k:
                v = rng.randint(1, n)
                if v not in vs:
                    vs.append(v)
            clauses.append(frozenset(v if rng.coin() else -v for v in vs))
        cnf = CNF(n, tuple(dict.fromkeys(clauses)))
        if cnf.is_unsat():
            return cnf


def suite_resolution_bridge(
    cnf_count: int = 100, dist_count: int = 10, seed: int = 0
) -> SuiteResult:
    rng = Rng(seed)
    checks = 0
    for i in range(cnf_count):
        n = rng.randint(3, 10)
        cnf = _random_unsat_cnf(n, rng)
        tree = build_solving_tree(cnf)
        proof = dt_to_proof(tree, cnf)
        report = verify_tree_resolution(proof, cnf)
        checks += 1
        if not report.valid:
            return SuiteResult("resolution-bridge", False, checks, report.reason)
        back = proof_to_dt(proof, cnf)
        for x in range(1 << n):
            label = tree_eval(back, x)
            if label is None or cnf.clause_satisfied(label, x):
                return SuiteResult(
                    "resolution-bridge", False, checks, f"tree fails at {x:b}"
                )
        again = dt_to_proof(back, cnf)
        if not verify_tree_resolution(again, cnf).valid:
            return SuiteResult("resolution-bridge", False, checks, "round trip broke")
    # pointwise 2/3 <-> 1/3 correspondence on constructed distributions; the
    # last distribution runs at the full 16-variable enumeration width
    from .resolution import graft_at_bots

    for i in range(dist_count):
        nvars = 16 if i == dist_count - 1 else 4
        units = 4 if nvars == 4 else 6
        clauses = tuple(frozenset([v]) for v in range(1, units + 1)) + tuple(
            frozenset([-v]) for v in range(1, units + 1)
        )
        cnf = CNF(nvars, clauses)
        m = len(cnf.clauses)
        members = []
        for j in range(1, m + 1):
            base = _clause_sampler_tree(cnf, j)
            twin = _clause_sampler_tree(cnf, (j + units - 1) % m + 1)
            members.append((Fraction(1, m), graft_at_bots(base, twin)))
        rp = zppdt_to_randres(members, cnf)
        for x in range(1 << cnf.nvars):
            bp = bot_probability(members, x)
            checks += 1
            if rp.b_satisfaction(x) != 1 - bp or rp.b_satisfaction(x) < Fraction(2, 3):
                return SuiteResult(
                    "resolution-bridge", False, checks, f"correspondence at {x:b}"
                )
    return SuiteResult("resolution-bridge", True, checks)


def _clause_sampler_tree(cnf: CNF, i: int):
    from .resolution import DTLeaf, DTNode

    lits = sorted(cnf.clauses[i - 1], key=abs)

    def rec(idx: int):
        if idx == len(lits):
            return DTLeaf(i)
        lit = lits[idx]
        below = rec(idx + 1)
        if lit > 0:
            return DTNode(lit, below, DTLeaf(None))
        return DTNode(-lit, DTLeaf(None), below)

    return rec(0)


# ---------------------------------------------------------------------------
# NW dichotomy (criterion 7)


NW_PARAM_SETS = (
    ("n3-m2", 3, 2, Fraction(1, 2), Fraction(8)),
    ("n2-m4", 2, 4, Fraction(1, 2), Fraction(4)),
    ("n4-m3", 4, 3, Fraction(1, 2), Fraction(16)),
)

NW_HARD_MESSAGE_PARAMS = ("n6-m1", 6, 1, Fraction(7, 3), Fraction(1 << 12))


def suite_nw_dichotomy(sets_per_params: int = 10, seed: int = 0) -> SuiteResult:
    checks = 0
    for name, n, m, eps, rho in NW_PARAM_SETS:
        p = make_params(n, m, eps, rho)
        eng = NWEngine(p)
        rng = Rng(seed + sum(ord(c) for c in name))
        for t in range(sets_per_params):
            S = frozenset(o for o in range(p.M) if rng.coin())
            for f in range(1 << n):
                out = eng.certify(f, S)
                checks += 1
                if isinstance(out, ApproxCertificate):
                    if abs(out.val - len(S)) > p.eps * p.M:
                        return SuiteResult(
                            "nw-dichotomy", False, checks, f"{name}: val error"
                        )
                    if not out.pair_lt.valid or not out.pair_gt.valid:
                        return SuiteResult(
                            "nw-dichotomy", False, checks, f"{name}: pair round trip"
                        )
                elif isinstance(out, CompressionWitness):
                    if eng.decomp(out.advice, S) != f:
                        return SuiteResult(
                            "nw-dichotomy", False, checks, f"{name}: decomp mismatch"
                        )
                else:  # pragma: no cover
                    return SuiteResult("nw-dichotomy", False, checks, "neither outcome")
    # hard-message existence on the single-slot parameter set
    name, n, m, eps, rho = NW_HARD_MESSAGE_PARAMS
    p = make_params(n, m, eps, rho)
    eng = NWEngine(p)
    rng = Rng(seed + 5)
    S = frozenset(o for o in range(p.M) if rng.coin())
    reachable = eng.decomp_range(S)
    checks += 1
    if not len(reachable) < (1 << p.n):
        return SuiteResult(
            "nw-dichotomy", False, checks, f"decomp range covers all {1 << p.n} messages"
        )
    return SuiteResult("nw-dichotomy", True, checks)


# ---------------------------------------------------------------------------
# totality smoke (criterion 8)


# (problem, mode, size range, extra kwargs); sizes reach the 2^10 desk cap
# wherever the candidate space stays enumerable
TOTALITY_CASES = (
    ("lossy", "uniform", (2, 8), {}),
    ("lossy", "uniform", (2, 6), {"bijective": True}),
    ("lossy", "uniform", (256, 1024), {}),
    ("empty_child", "uniform", (1, 12), {}),
    ("empty_child", "uniform", (1, 10), {"variant": "prime"}),
    ("empty_child", "uniform", (1, 10), {"variant": "binary"}),
    ("empty_child", "uniform", (1, 10), {"variant": "with_height"}),
    ("empty_child", "uniform", (1, 9), {"variant": "binary_with_height"}),
    ("empty_child", "uniform", (1, 9), {"variant": "with_height_strict"}),
    ("empty_child", "uniform", (256, 1024), {}),
    ("nephew", "uniform", (1, 16), {}),
    ("nephew", "uniform", (1, 12), {"with_inverse": True}),
    ("nephew", "uniform", (256, 1024), {}),
    ("dlo", "uniform", (2, 8), {}),
    ("amgm", "uniform", (1, 2), {}),
    ("metered_line", "uniform", (2, 10), {}),
    ("metered_line", "uniform", (2, 10), {"variant": "end"}),
    ("metered_line", "uniform", (256, 1024), {}),
    ("sink_of_dag", "uniform", (2, 10), {}),
    ("weak_pigeon", "uniform", (1, 5), {}),
    ("btree_leaf", "structured", (3, 41), {}),
)


def _random_unsat_search_instance(seed: int):
    rng = Rng(seed)
    cnf = _random_unsat_cnf(rng.randint(2, 6), rng)
    return search_of_cnf(cnf, rng.bits(cnf.nvars))


def suite_totality(count: int = 150, seed: int = 0) -> SuiteResult:
    rng = Rng(seed)
    checks = 0
    i = 0
    while checks < count:
        if i % (len(TOTALITY_CASES) + 1) == len(TOTALITY_CASES):
            problem, size = "search_cnf", 0
            inst = _random_unsat_search_instance(seed * 947 + i)
        else:
            problem, mode, (lo, hi), kw = TOTALITY_CASES[i % (len(TOTALITY_CASES) + 1)]
            size = rng.randint(lo, hi)
            if problem == "btree_leaf":
                size |= 1  # full trees need odd vertex counts
            inst = gen_instance(
                problem, size, mode=mode, seed=seed * 947 + i, **kw
            ).instance
        sols = brute_solve(inst, cap=1 << 17)
        checks += 1
        i += 1
        if not sols:
            return SuiteResult(
                "totality", False, checks, f"{problem} size {size} seed {i} empty"
            )
    return SuiteResult("totality", True, checks)


# ---------------------------------------------------------------------------
# runner


ALL_SUITES: dict[str, Callable[..., SuiteResult]] = {
    "reduction-soundness": suite_reduction_soundness,
    "btreeleaf-success": suite_btreeleaf_success,
    "zero-error": suite_zero_error,
    "find-children": suite_find_children,
    "query-budgets": suite_query_budgets,
    "resolution-bridge": suite_resolution_bridge,
    "nw-dichotomy": suite_nw_dichotomy,
    "totality": suite_totality,
}

QUICK_ARGS = {
    "reduction-soundness": {"per_rule": 4},
    "btreeleaf-success": {"instances": 5, "mc_instances": 1, "mc_trials": 2000},
    "zero-error": {"runs": 1000},
    "find-children": {"instances": 15},
    "query-budgets": {},
    "resolution-bridge": {"cnf_count": 20, "dist_count": 3},
    "nw-dichotomy": {"sets_per_params": 2},
    "totality": {"count": 40},
}


def run_all_suites(quick: bool = False, seed: int = 0) -> list[SuiteResult]:
    out = []
    for name, fn in ALL_SUITES.items():
        kwargs = dict(QUICK_ARGS[name]) if quick else {}
        out.append(fn(seed=seed, **kwargs))
    return out
