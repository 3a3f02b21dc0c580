"""JSON wire formats: instances, solutions, and reduction recipes.

Instance files carry explicit 1-indexed tables:
    {"problem": <name>, "params": {...}, "oracles": {"f": [...], ...}}
Lazily-derived targets (reduction outputs above the materialization cap)
serialize as recipe files referencing their source instead:
    {"recipe": <rule>, "sources": [<path>, ...], "args": {...}}
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path
from .oracle import FiniteFunction, materialize, make_table_fn
from .problems import (
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
from .resolution import SearchCNFInstance, parse_dimacs, to_dimacs


class SerializationError(Exception):
    pass


def _table(fn: FiniteFunction) -> list[int]:
    return list(materialize(fn).table)


def instance_to_obj(inst: Instance) -> dict:
    if isinstance(inst, LossyInstance):
        return {
            "problem": "lossy",
            "params": {
                "N": inst.N,
                "M": inst.M,
                "bijective": inst.bijective,
                "weak_stretch_ok": inst.weak_stretch_ok,
            },
            "oracles": {"f": _table(inst.f), "g": _table(inst.g)},
        }
    if isinstance(inst, EmptyChildInstance):
        oracles = {"F": _table(inst.F), "L": _table(inst.L), "R": _table(inst.R)}
        if inst.H is not None:
            oracles["H"] = _table(inst.H)
        return {
            "problem": "empty_child",
            "params": {"V": inst.V, "variant": inst.variant},
            "oracles": oracles,
        }
    if isinstance(inst, NephewInstance):
        oracles = {"f": _table(inst.f), "g": _table(inst.g)}
        if inst.f_inv is not None:
            oracles["f_inv"] = _table(inst.f_inv)
        return {"problem": "nephew", "params": {"V": inst.V}, "oracles": oracles}
    if isinstance(inst, DLOInstance):
        return {
            "problem": "dlo",
            "params": {"N": inst.N, "literal_median_rule": inst.literal_median_rule},
            "oracles": {"order": _table(inst.order), "med": _table(inst.med)},
        }
    if isinstance(inst, AMGMInstance):
        return {
            "problem": "amgm",
            "params": {"N": inst.N, "c": [inst.c.numerator, inst.c.denominator]},
            "oracles": {"C": _table(inst.C), "F": _table(inst.F), "G": _table(inst.G)},
        }
    if isinstance(inst, MeteredLineInstance):
        return {
            "problem": "metered_line",
            "params": {"N": inst.N, "variant": inst.variant},
            "oracles": {"S": _table(inst.S), "P": _table(inst.P), "V": _table(inst.V)},
        }
    if isinstance(inst, SinkOfDagInstance):
        return {
            "problem": "sink_of_dag",
            "params": {"N": inst.N},
            "oracles": {"succ": _table(inst.succ), "pot": _table(inst.pot)},
        }
    if isinstance(inst, WeakPigeonInstance):
        return {
            "problem": "weak_pigeon",
            "params": {"n": inst.n},
            "oracles": {"h": _table(inst.h)},
        }
    if isinstance(inst, BTreeLeafInstance):
        return {
            "problem": "btree_leaf",
            "params": {
                "V": inst.V,
                "v_star": inst.v_star,
                "promise_checked": inst.promise_checked,
            },
            "oracles": {"Lp": _table(inst.Lp), "Rp": _table(inst.Rp)},
        }
    if isinstance(inst, SearchCNFInstance):
        return {
            "problem": "search_cnf",
            "params": {"dimacs": to_dimacs(inst.cnf)},
            "oracles": {"x": _table(inst.x)},
        }
    raise SerializationError(f"cannot serialize {type(inst).__name__}")


def instance_from_obj(obj: dict) -> Instance:
    problem = obj.get("problem")
    params = obj.get("params", {})
    oracles = obj.get("oracles", {})

    def fn(name: str, dom: int, cod: int) -> FiniteFunction:
        if name not in oracles:
            raise SerializationError(f"missing oracle {name!r}")
        return make_table_fn(oracles[name], dom, cod, name)

    if problem == "lossy":
        N, M = params["N"], params["M"]
        return LossyInstance(
            N,
            M,
            fn("f", N, M),
            fn("g", M, N),
            bool(params.get("bijective", False)),
            bool(params.get("weak_stretch_ok", False)),
        )
    if problem == "empty_child":
        V = params["V"]
        variant = params.get("variant", "standard")
        H = fn("H", V, V) if "H" in oracles else None
        return EmptyChildInstance(V, fn("F", V, V), fn("L", V, V), fn("R", V, V), variant, H)
    if problem == "nephew":
        V = params["V"]
        f_inv = fn("f_inv", V, V + 1) if "f_inv" in oracles else None
        return NephewInstance(V, fn("f", V, V), fn("g", V, V), f_inv)
    if problem == "dlo":
        N = params["N"]
        return DLOInstance(
            N,
            fn("order", N * (N - 1) // 2, 2),
            fn("med", N * (N + 1) // 2, N),
            bool(params.get("literal_median_rule", False)),
        )
    if problem == "amgm":
        N = params["N"]
        num, den = params["c"]
        c = Fraction(num, den)
        P = int(c * N * N)
        return AMGMInstance(
            c, N, fn("C", 2 * N, 2), fn("F", P, 4 * N * N), fn("G", 4 * N * N, P)
        )
    if problem == "metered_line":
        N = params["N"]
        return MeteredLineInstance(
            N,
            fn("S", N, N),
            fn("P", N, N),
            fn("V", N, N + 1),
            params.get("variant", "sink"),
        )
    if problem == "sink_of_dag":
        N = params["N"]
        return SinkOfDagInstance(N, fn("succ", N, N), fn("pot", N, N))
    if problem == "weak_pigeon":
        n = params["n"]
        return WeakPigeonInstance(n, fn("h", 1 << n, 1 << (n - 1)))
    if problem == "btree_leaf":
        V = params["V"]
        return BTreeLeafInstance(
            V,
            params["v_star"],
            fn("Lp", V, V + 1),
            fn("Rp", V, V + 1),
            bool(params.get("promise_checked", False)),
        )
    if problem == "search_cnf":
        cnf = parse_dimacs(params["dimacs"])
        return SearchCNFInstance(cnf, fn("x", cnf.nvars, 2))
    raise SerializationError(f"unknown problem {problem!r}")


def solution_to_obj(sol: Solution) -> dict:
    return {"problem": sol.problem, "variant": sol.variant, "witness": list(sol.witness)}


def solution_from_obj(obj: dict) -> Solution:
    return Solution(obj["problem"], obj["variant"], tuple(obj["witness"]))


def digest(obj: dict) -> str:
    return hashlib.sha256(
        json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()[:16]


def save_instance(inst: Instance, path: str | Path) -> dict:
    obj = instance_to_obj(inst)
    Path(path).write_text(json.dumps(obj, indent=1) + "\n")
    return obj


def load_instance(path: str | Path) -> Instance:
    return instance_from_obj(json.loads(Path(path).read_text()))


def save_solution(sol: Solution, path: str | Path) -> None:
    Path(path).write_text(json.dumps(solution_to_obj(sol)) + "\n")


def load_solution(path: str | Path) -> Solution:
    return solution_from_obj(json.loads(Path(path).read_text()))


def save_recipe(rule: str, sources: list[str], path: str | Path, args: dict | None = None) -> None:
    obj = {"recipe": rule, "sources": sources, "args": args or {}}
    Path(path).write_text(json.dumps(obj, indent=1) + "\n")


def load_json(path: str | Path) -> dict:
    return json.loads(Path(path).read_text())
