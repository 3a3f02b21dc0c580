"""Command-line surface: generate, verify, solve, reduce, chain, bench,
proof tools, and the self-test runner.

Exit codes: 0 success, 1 semantic failure (bad witness, unsolved, failing
suite), 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import reductions as red_mod
from .oracle import QueryLedger
from .problems import (
    BruteCapExceeded,
    brute_solve,
    gen_instance,
    verify,
)
from .reductions import Reduction, chain
from .resolution import (
    build_solving_tree,
    dt_to_proof,
    parse_dimacs,
    proof_from_json,
    proof_to_dt,
    proof_to_json,
    tree_depth,
    verify_tree_resolution,
)
from .rng import Rng
from .serialize import (
    digest,
    instance_to_obj,
    load_instance,
    load_json,
    load_solution,
    save_instance,
    save_recipe,
    save_solution,
    solution_to_obj,
)
from .solvers import (
    solve_btreeleaf_random,
    solve_ec_random,
    solve_lossy_random,
    solve_nephew_random,
)
from .suites import REDUCTION_RULES, run_all_suites, run_rule_soundness

# both the brute-solve candidate cap and the materialization threshold;
# override with TFZOO_CAP for larger desks
DEFAULT_MATERIALIZE_CAP = int(os.environ.get("TFZOO_CAP", 1 << 14))


class UsageError(Exception):
    pass


REDUCTION_BUILDERS = {
    "lossy_stretch": lambda srcs, args: red_mod.lossy_stretch(
        srcs[0], int(args["target_M"])
    ),
    "lossy_pad_pow2": lambda srcs, args: red_mod.lossy_pad_pow2(srcs[0]),
    "ec_prime_to_lossy": lambda srcs, args: red_mod.ec_prime_to_lossy(srcs[0]),
    "lossy_to_ec": lambda srcs, args: red_mod.lossy_to_ec(srcs[0]),
    "injlossy_to_bec": lambda srcs, args: red_mod.injlossy_to_bec(srcs[0]),
    "ecwh_to_sinkofdag": lambda srcs, args: red_mod.ecwh_to_sinkofdag(srcs[0]),
    "lossy_and_sml_to_ecwh": lambda srcs, args: red_mod.lossy_and_sml_to_ecwh(
        srcs[0], srcs[1]
    ),
    "injlossy_and_eoml_to_becwh": lambda srcs, args: red_mod.injlossy_and_eoml_to_becwh(
        srcs[0], srcs[1]
    ),
    "btreeleaf_to_weakpigeon": lambda srcs, args: red_mod.btreeleaf_to_weakpigeon(srcs[0]),
    "nephew_to_weakpigeon": lambda srcs, args: red_mod.nephew_to_weakpigeon(srcs[0]),
    "ec_to_nephew": lambda srcs, args: red_mod.ec_to_nephew(srcs[0]),
    "ec_to_nephew_inv": lambda srcs, args: red_mod.ec_to_nephew_inv(srcs[0]),
    "nephew_inv_to_ec_prime": lambda srcs, args: red_mod.nephew_inv_to_ec_prime(srcs[0]),
    "dlo_to_lossy": lambda srcs, args: red_mod.dlo_to_lossy(srcs[0]),
    "amgm_to_lossy": lambda srcs, args: red_mod.amgm_to_lossy(
        srcs[0], require_valid_stretch=not args.get("allow_weak_stretch", False)
    ),
}


def build_reduction(rule: str, source_paths: list[str], args: dict) -> Reduction:
    if rule not in REDUCTION_BUILDERS:
        raise UsageError(f"unknown rule {rule!r}; known: {', '.join(REDUCTION_BUILDERS)}")
    sources = [load_instance(p) for p in source_paths]
    return REDUCTION_BUILDERS[rule](sources, args)


def replay_recipe(path: str) -> Reduction:
    obj = load_json(path)
    if "recipe" not in obj:
        raise UsageError(f"{path} is not a recipe file")
    if "chain" in obj.get("args", {}):
        rules = obj["args"]["chain"]
        red = build_reduction(rules[0], obj["sources"], obj["args"])
        for rule in rules[1:]:
            red = chain(red, REDUCTION_BUILDERS[rule]([red.target], obj["args"]))
        return red
    return build_reduction(obj["recipe"], obj["sources"], obj.get("args", {}))


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(ns) -> int:
    kw = {}
    if ns.variant:
        kw["variant"] = ns.variant
    if ns.bijective:
        kw["bijective"] = True
    if ns.with_inverse:
        kw["with_inverse"] = True
    for key, val in ns.param or []:
        kw[key] = int(val) if val.lstrip("-").isdigit() else val
    result = gen_instance(ns.problem, ns.size, mode=ns.mode, seed=ns.seed, **kw)
    obj = save_instance(result.instance, ns.out)
    report = {"command": "gen", "out": ns.out, "digest": digest(obj)}
    if result.planted is not None:
        manifest = {
            "instance": ns.out,
            "digest": digest(obj),
            "planted": [solution_to_obj(s) for s in sorted(result.planted, key=repr)],
        }
        manifest_path = ns.manifest or (str(ns.out) + ".manifest.json")
        Path(manifest_path).write_text(json.dumps(manifest, indent=1) + "\n")
        report["manifest"] = manifest_path
    print(json.dumps(report))
    return 0


def cmd_verify(ns) -> int:
    inst = load_instance(ns.instance)
    sol = load_solution(ns.solution)
    led = QueryLedger()
    ok = verify(inst, sol, led)
    print(
        json.dumps(
            {
                "command": "verify",
                "instance_digest": digest(instance_to_obj(inst)),
                "solution": solution_to_obj(sol),
                "accepted": ok,
                "queries": led.total,
            }
        )
    )
    return 0 if ok else 1


def cmd_solve(ns) -> int:
    inst = load_instance(ns.instance)
    led = QueryLedger()
    t0 = time.time()
    if ns.brute:
        sols = sorted(brute_solve(inst, cap=ns.cap, ledger=led), key=repr)
        if not sols:
            print(json.dumps({"command": "solve", "mode": "brute", "solutions": 0}))
            return 1
        if ns.out:
            save_solution(sols[0], ns.out)
        print(
            json.dumps(
                {
                    "command": "solve",
                    "mode": "brute",
                    "solutions": len(sols),
                    "first": solution_to_obj(sols[0]),
                    "queries": led.total,
                    "wall_s": round(time.time() - t0, 4),
                }
            )
        )
        return 0
    solver = {
        "lossy": solve_lossy_random,
        "empty_child": solve_ec_random,
        "nephew": solve_nephew_random,
        "btree_leaf": solve_btreeleaf_random,
    }.get(inst.problem_name)
    if solver is None:
        print(f"no randomized solver for {inst.problem_name}", file=sys.stderr)
        return 2
    rng = Rng(ns.seed)
    queries = 0
    for t in range(ns.trials):
        out = solver(inst, rng.split(t))
        queries += out.queries_used
        if out.result is not None:
            if not verify(inst, out.result):
                print("solver emitted a rejected witness", file=sys.stderr)
                return 1
            if ns.out:
                save_solution(out.result, ns.out)
            print(
                json.dumps(
                    {
                        "command": "solve",
                        "mode": "random",
                        "trials_used": t + 1,
                        "queries": queries,
                        "solution": solution_to_obj(out.result),
                        "seed": ns.seed,
                        "wall_s": round(time.time() - t0, 4),
                    }
                )
            )
            return 0
    print(
        json.dumps(
            {"command": "solve", "mode": "random", "trials_used": ns.trials, "solution": None}
        )
    )
    return 1


def cmd_reduce(ns) -> int:
    sources = [ns.source] + ([ns.source2] if ns.source2 else [])
    args = dict(kv for kv in (ns.arg or []))
    if ns.allow_weak_stretch:
        args["allow_weak_stretch"] = True
    red = build_reduction(ns.rule, sources, args)
    if ns.back:
        sol = load_solution(ns.back)
        led = QueryLedger()
        got = red.back_map(sol, led)
        src = red.source[0] if isinstance(red.source, tuple) else red.source
        if isinstance(red.source, tuple) and got.problem != "lossy":
            src = red.source[1]
        ok = verify(src, got)
        print(
            json.dumps(
                {
                    "command": "reduce --back",
                    "rule": ns.rule,
                    "source_solution": solution_to_obj(got),
                    "accepted": ok,
                    "queries": led.total,
                }
            )
        )
        return 0 if ok else 1
    target = red.target
    out = ns.out or (ns.source + f".{ns.rule}.json")
    from tfzoo.problems import candidate_solutions
    from itertools import islice

    size = sum(1 for _ in islice(candidate_solutions(target), ns.cap + 1))
    if size <= ns.cap:
        obj = save_instance(target, out)
        kind = "materialized"
    else:
        save_recipe(ns.rule, sources, out, args)
        obj = load_json(out)
        kind = "recipe"
    print(
        json.dumps(
            {
                "command": "reduce",
                "rule": ns.rule,
                "kind": kind,
                "out": out,
                "digest": digest(obj),
                "budget": red.budget,
            }
        )
    )
    return 0


def cmd_chain(ns) -> int:
    rules = ns.rules.split(",")
    for rule in rules:
        if rule not in REDUCTION_BUILDERS:
            raise UsageError(f"unknown rule {rule!r}")
    save_recipe(rules[0], [ns.source], ns.out, {"chain": rules})
    print(json.dumps({"command": "chain", "rules": rules, "out": ns.out}))
    return 0


def cmd_chain_back(ns) -> int:
    red = replay_recipe(ns.recipe)
    sol = load_solution(ns.back)
    led = QueryLedger()
    got = red.back_map(sol, led)
    src = red.source[0] if isinstance(red.source, tuple) else red.source
    ok = verify(src, got)
    print(
        json.dumps(
            {
                "command": "chain --back",
                "source_solution": solution_to_obj(got),
                "accepted": ok,
                "queries": led.total,
            }
        )
    )
    return 0 if ok else 1


def cmd_bench(ns) -> int:
    rows = []
    rng = Rng(ns.seed)
    if ns.suite == "btreeleaf-success":
        from .solvers import exact_btreeleaf_success

        for i in range(ns.count):
            V = 2 * rng.randint(4, 2047) + 1
            inst = gen_instance("btree_leaf", V, mode="structured", seed=ns.seed + i).instance
            exact = exact_btreeleaf_success(inst)
            trials = ns.trials
            hits = 0
            queries = 0
            for t in range(trials):
                out = solve_btreeleaf_random(inst, rng.split(i * trials + t))
                hits += out.solved
                queries += out.queries_used
            rate = hits / trials
            half_width = 1.96 * (rate * (1 - rate) / trials) ** 0.5
            rows.append(
                {
                    "suite": ns.suite,
                    "V": V,
                    "exact": float(exact),
                    "success_rate": rate,
                    "ci95": [max(rate - half_width, 0.0), min(rate + half_width, 1.0)],
                    "mean_queries": queries / trials,
                }
            )
    elif ns.suite == "ec-prime-depth":
        from .oracle import evaluate
        from .problems import word_length_for

        for i in range(ns.count):
            V = rng.randint(2, 32)
            src = gen_instance("empty_child", V, mode="uniform", seed=ns.seed + i).instance
            red = red_mod.ec_prime_to_lossy(src)
            k = word_length_for(V)
            worst = 0
            for x in range(1, red.target.M + 1):
                led = QueryLedger()
                evaluate(red.target.g, x, led)
                worst = max(worst, led.total)
            for u in range(1, red.target.N + 1):
                led = QueryLedger()
                evaluate(red.target.f, u, led)
                worst = max(worst, led.total)
            rows.append(
                {"suite": ns.suite, "V": V, "max_queries": worst, "bound": 3 * k}
            )
    elif ns.suite == "soundness":
        for rule in REDUCTION_RULES:
            t0 = time.time()
            n, sols = run_rule_soundness(rule, ns.count, seed=ns.seed)
            rows.append(
                {
                    "suite": ns.suite,
                    "rule": rule,
                    "instances": n,
                    "target_solutions": sols,
                    "wall_s": round(time.time() - t0, 3),
                }
            )
    elif ns.suite == "empty":
        pass
    else:
        print(f"unknown bench suite {ns.suite!r}", file=sys.stderr)
        return 2
    if ns.format == "csv":
        cols: list[str] = []
        for row in rows:
            cols.extend(k for k in row if k not in cols)
        if not cols:
            cols = ["suite"]
        lines = [",".join(cols)]
        for row in rows:
            lines.append(",".join(json.dumps(row.get(c, "")) for c in cols))
        payload = "\n".join(lines)
    else:
        payload = json.dumps(rows, indent=1)
    if ns.out:
        Path(ns.out).write_text(payload + "\n")
    else:
        print(payload)
    return 0


def cmd_selftest(ns) -> int:
    results = run_all_suites(quick=ns.quick, seed=ns.seed)
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


def cmd_proof(ns) -> int:
    cnf = parse_dimacs(Path(ns.cnf).read_text())
    if ns.proof_cmd == "verify":
        proof = proof_from_json(load_json(ns.proof))
        report = verify_tree_resolution(proof, cnf)
        print(
            json.dumps(
                {
                    "command": "proof verify",
                    "valid": report.valid,
                    "size": report.size,
                    "width": report.width,
                    "reason": report.reason,
                }
            )
        )
        return 0 if report.valid else 1
    if ns.proof_cmd == "convert":
        if ns.direction == "cnf-to-proof":
            tree = build_solving_tree(cnf)
            proof = dt_to_proof(tree, cnf)
            Path(ns.out).write_text(json.dumps(proof_to_json(proof), indent=1) + "\n")
            print(
                json.dumps(
                    {
                        "command": "proof convert",
                        "out": ns.out,
                        "tree_depth": tree_depth(tree),
                    }
                )
            )
            return 0
        proof = proof_from_json(load_json(ns.proof))
        tree = proof_to_dt(proof, cnf)
        print(
            json.dumps({"command": "proof convert", "tree_depth": tree_depth(tree)})
        )
        return 0
    return 2


def cmd_prg_selftest(ns) -> int:
    from .suites import suite_nw_dichotomy

    result = suite_nw_dichotomy(sets_per_params=ns.sets, seed=ns.seed)
    print(result.line())
    return 0 if result.passed else 1


# ---------------------------------------------------------------------------
# parser


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tfzoo", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate an instance file")
    g.add_argument("--problem", required=True)
    g.add_argument("--size", type=int, required=True)
    g.add_argument("--mode", default="uniform")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--variant", default=None)
    g.add_argument("--bijective", action="store_true")
    g.add_argument("--with-inverse", dest="with_inverse", action="store_true")
    g.add_argument("--param", nargs=2, action="append", metavar=("KEY", "VAL"))
    g.add_argument("--out", required=True)
    g.add_argument("--manifest", default=None)
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="check a solution file against an instance")
    v.add_argument("--instance", required=True)
    v.add_argument("--solution", required=True)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("solve", help="brute-force or randomized solving")
    s.add_argument("--instance", required=True)
    s.add_argument("--brute", action="store_true")
    s.add_argument("--random", action="store_true")
    s.add_argument("--trials", type=int, default=64)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cap", type=int, default=DEFAULT_MATERIALIZE_CAP)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_solve)

    r = sub.add_parser("reduce", help="apply a reduction rule to an instance file")
    r.add_argument("--rule", required=True)
    r.add_argument("--from", dest="source", required=True)
    r.add_argument("--from2", dest="source2", default=None)
    r.add_argument("--out", default=None)
    r.add_argument("--cap", type=int, default=DEFAULT_MATERIALIZE_CAP)
    r.add_argument("--back", default=None, help="target solution file to back-map")
    r.add_argument("--allow-weak-stretch", action="store_true")
    r.add_argument("--arg", nargs=2, action="append", metavar=("KEY", "VAL"))
    r.set_defaults(func=cmd_reduce)

    c = sub.add_parser("chain", help="compose reduction rules into a recipe")
    c.add_argument("--rules", required=True, help="comma-separated rule names")
    c.add_argument("--from", dest="source", required=True)
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_chain)

    cb = sub.add_parser("chain-back", help="back-map a solution through a recipe")
    cb.add_argument("--recipe", required=True)
    cb.add_argument("--back", required=True)
    cb.set_defaults(func=cmd_chain_back)

    b = sub.add_parser("bench", help="query-count and success-rate suites")
    b.add_argument("--suite", required=True)
    b.add_argument("--count", type=int, default=10)
    b.add_argument("--trials", type=int, default=1000)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--format", choices=("json", "csv"), default="json")
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_bench)

    st = sub.add_parser("selftest", help="run every invariant suite")
    st.add_argument("--quick", action="store_true")
    st.add_argument("--seed", type=int, default=0)
    st.set_defaults(func=cmd_selftest)

    pr = sub.add_parser("proof", help="tree-resolution proof tools")
    prs = pr.add_subparsers(dest="proof_cmd", required=True)
    pv = prs.add_parser("verify")
    pv.add_argument("--cnf", required=True)
    pv.add_argument("--proof", required=True)
    pv.set_defaults(func=cmd_proof)
    pc = prs.add_parser("convert")
    pc.add_argument("--cnf", required=True)
    pc.add_argument("--proof", default=None)
    pc.add_argument("--direction", default="cnf-to-proof")
    pc.add_argument("--out", default="proof.json")
    pc.set_defaults(func=cmd_proof)

    pg = sub.add_parser("prg", help="reconstructive-generator tools")
    pgs = pg.add_subparsers(dest="prg_cmd", required=True)
    pgt = pgs.add_parser("selftest")
    pgt.add_argument("--sets", type=int, default=5)
    pgt.add_argument("--seed", type=int, default=0)
    pgt.set_defaults(func=cmd_prg_selftest)

    return ap


def main(argv=None) -> int:
    ap = make_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    from .problems import GenerationError, InstanceError
    from .resolution import ResolutionError
    from .serialize import SerializationError

    try:
        return ns.func(ns)
    except (
        UsageError,
        FileNotFoundError,
        KeyError,
        ValueError,
        json.JSONDecodeError,
        GenerationError,
        InstanceError,
        SerializationError,
        ResolutionError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BruteCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
