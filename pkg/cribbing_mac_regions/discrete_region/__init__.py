from cribbing_mac_regions.discrete_region.data_model import (
    JOINT_LABELS,
    MAX_CELLS,
    AuxFactorization,
    ChannelForm,
    DiscreteChannelSpec,
    RateTriple,
)
from cribbing_mac_regions.discrete_region.bounds import (
    REMARK1_TOLERANCE,
    check_remark1,
    check_remark1_joint,
    compose_joint,
    joint_bounds,
    state_penalties,
    theorem1_bounds,
    theorem2_bounds,
)
from cribbing_mac_regions.discrete_region.sampling import (
    default_aux_sizes,
    random_channel,
    random_factor_arrays,
    random_factorization,
)
from cribbing_mac_regions.discrete_region.search import search_region
from cribbing_mac_regions.discrete_region.willems import willems_bounds, willems_support
from cribbing_mac_regions.discrete_region.spec_io import (
    ChannelSpecDocument,
    dump_channel_spec,
    parse_channel_spec,
)

__all__ = [
    "JOINT_LABELS",
    "MAX_CELLS",
    "AuxFactorization",
    "ChannelForm",
    "DiscreteChannelSpec",
    "RateTriple",
    "REMARK1_TOLERANCE",
    "check_remark1",
    "check_remark1_joint",
    "compose_joint",
    "joint_bounds",
    "state_penalties",
    "theorem1_bounds",
    "theorem2_bounds",
    "default_aux_sizes",
    "random_channel",
    "random_factor_arrays",
    "random_factorization",
    "search_region",
    "willems_bounds",
    "willems_support",
    "ChannelSpecDocument",
    "dump_channel_spec",
    "parse_channel_spec",
]
