import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tfzoo.problems import brute_solve, gen_instance, verify
from tfzoo.resolution import CNF, search_of_cnf
from tfzoo.serialize import (
    SerializationError,
    digest,
    instance_from_obj,
    instance_to_obj,
    solution_from_obj,
    solution_to_obj,
)


CASES = [
    ("lossy", 4, {}),
    ("lossy", 3, {"bijective": True}),
    ("empty_child", 7, {"variant": "binary_with_height"}),
    ("nephew", 6, {"with_inverse": True}),
    ("dlo", 5, {}),
    ("amgm", 2, {}),
    ("metered_line", 6, {"variant": "end"}),
    ("sink_of_dag", 6, {}),
    ("weak_pigeon", 3, {}),
]


@pytest.mark.parametrize("problem,size,kw", CASES)
def test_instance_json_round_trip(problem, size, kw):
    inst = gen_instance(problem, size, mode="uniform", seed=11, **kw).instance
    obj = instance_to_obj(inst)
    json.dumps(obj)  # serializable
    again = instance_from_obj(obj)
    assert instance_to_obj(again) == obj
    assert brute_solve(again, cap=1 << 16) == brute_solve(inst, cap=1 << 16)


def test_btree_round_trip():
    inst = gen_instance("btree_leaf", 7, mode="structured", seed=0).instance
    again = instance_from_obj(instance_to_obj(inst))
    assert brute_solve(again, cap=1 << 16) == brute_solve(inst, cap=1 << 16)


def test_search_cnf_round_trip():
    cnf = CNF(3, (frozenset([1, -2]), frozenset([3]), frozenset([-1])))
    inst = search_of_cnf(cnf, 0b101)
    again = instance_from_obj(instance_to_obj(inst))
    assert brute_solve(again) == brute_solve(inst)


def test_digest_stability_and_sensitivity():
    a = instance_to_obj(gen_instance("lossy", 4, seed=1).instance)
    b = instance_to_obj(gen_instance("lossy", 4, seed=1).instance)
    c = instance_to_obj(gen_instance("lossy", 4, seed=2).instance)
    assert digest(a) == digest(b) != digest(c)


@settings(max_examples=40)
@given(
    st.sampled_from(["lossy", "nephew", "dlo"]),
    st.text(alphabet="abs123", min_size=1, max_size=4),
    st.lists(st.integers(1, 50), min_size=1, max_size=4),
)
def test_solution_obj_round_trip(problem, variant, witness):
    obj = {"problem": problem, "variant": variant, "witness": witness}
    sol = solution_from_obj(obj)
    assert solution_to_obj(sol) == obj


def test_unknown_problem_rejected():
    with pytest.raises(SerializationError):
        instance_from_obj({"problem": "nope", "params": {}, "oracles": {}})


def test_missing_oracle_rejected():
    with pytest.raises(SerializationError):
        instance_from_obj({"problem": "lossy", "params": {"N": 1, "M": 2}, "oracles": {}})
