__all__ = [
    "JointPmf",
    "entropy",
    "conditional_mutual_information",
    "mutual_information",
    "GaussianVector",
    "gaussian_mutual_information",
]

from cribbing_mac_regions.info_core.joint_pmf import (
    JointPmf,
    entropy,
    conditional_mutual_information,
    mutual_information,
)
from cribbing_mac_regions.info_core.gaussian_vector import (
    GaussianVector,
    gaussian_mutual_information,
)
