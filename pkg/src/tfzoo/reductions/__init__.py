from .base import BackmapError, Reduction, chain, identity_reduction
from .lossy import lossy_pad_pow2, lossy_stretch, stretch_stage_count
from .emptychild import (
    ec_prime_to_lossy,
    ecwh_to_sinkofdag,
    injlossy_and_eoml_to_becwh,
    injlossy_to_bec,
    lossy_and_sml_to_ecwh,
    lossy_to_ec,
)
from .nephew import (
    NephewTreeView,
    btreeleaf_to_weakpigeon,
    ec_to_nephew,
    ec_to_nephew_inv,
    find_children,
    nephew_inv_to_ec_prime,
    nephew_to_btreeleaf,
    nephew_to_weakpigeon,
)
from .dlo import dlo_to_lossy
from .amgm import AmgmParamError, AmgmSizes, amgm_params, amgm_sizes, amgm_to_lossy

__all__ = [
    "AmgmParamError",
    "AmgmSizes",
    "BackmapError",
    "NephewTreeView",
    "Reduction",
    "amgm_params",
    "amgm_sizes",
    "amgm_to_lossy",
    "btreeleaf_to_weakpigeon",
    "chain",
    "dlo_to_lossy",
    "ec_prime_to_lossy",
    "ec_to_nephew",
    "ec_to_nephew_inv",
    "ecwh_to_sinkofdag",
    "find_children",
    "identity_reduction",
    "injlossy_and_eoml_to_becwh",
    "injlossy_to_bec",
    "lossy_and_sml_to_ecwh",
    "lossy_pad_pow2",
    "lossy_stretch",
    "lossy_to_ec",
    "nephew_inv_to_ec_prime",
    "nephew_to_btreeleaf",
    "nephew_to_weakpigeon",
    "stretch_stage_count",
]
