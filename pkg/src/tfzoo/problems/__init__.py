from .instances import (
    AMGMInstance,
    BTreeLeafInstance,
    DLOInstance,
    EmptyChildInstance,
    Instance,
    InstanceError,
    LossyInstance,
    MeteredLineInstance,
    NephewInstance,
    SinkOfDagInstance,
    Solution,
    WeakPigeonInstance,
    word_length_for,
)
from .verify import (
    BruteCapExceeded,
    DEFAULT_BRUTE_CAP,
    IllegalVariant,
    PromiseViolation,
    brute_solve,
    btree_walk,
    candidate_solutions,
    compute_levels,
    instance_size,
    nephew_is_solution,
    verify,
)
from .generate import GenerationError, GenResult, gen_instance

__all__ = [
    "AMGMInstance",
    "BTreeLeafInstance",
    "BruteCapExceeded",
    "DEFAULT_BRUTE_CAP",
    "DLOInstance",
    "EmptyChildInstance",
    "GenerationError",
    "GenResult",
    "IllegalVariant",
    "Instance",
    "InstanceError",
    "LossyInstance",
    "MeteredLineInstance",
    "NephewInstance",
    "PromiseViolation",
    "SinkOfDagInstance",
    "Solution",
    "WeakPigeonInstance",
    "brute_solve",
    "btree_walk",
    "candidate_solutions",
    "compute_levels",
    "gen_instance",
    "instance_size",
    "nephew_is_solution",
    "verify",
    "word_length_for",
]
