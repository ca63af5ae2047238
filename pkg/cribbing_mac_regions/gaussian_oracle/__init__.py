from cribbing_mac_regions.gaussian_oracle.scheme_covariance import (
    DERIVED,
    PRIMITIVES,
    SchemeCovariance,
    build_scheme_covariance,
)
from cribbing_mac_regions.gaussian_oracle.checks import (
    LEMMA1_TOLERANCE,
    MARKOV_TOLERANCE,
    ORTHOGONALITY_TOLERANCE,
    CheckRecord,
    CheckReport,
    dominance_record,
    identity_record,
    oracle_joint_sum_rate,
    oracle_layered_sum_rate,
    oracle_sum_rate,
    verify_lemma1,
    verify_markov_structure,
    verify_orthogonality,
)
from cribbing_mac_regions.gaussian_oracle.sampling import random_draw, random_draws

__all__ = [
    "DERIVED",
    "PRIMITIVES",
    "SchemeCovariance",
    "build_scheme_covariance",
    "LEMMA1_TOLERANCE",
    "MARKOV_TOLERANCE",
    "ORTHOGONALITY_TOLERANCE",
    "CheckRecord",
    "CheckReport",
    "dominance_record",
    "identity_record",
    "oracle_joint_sum_rate",
    "oracle_layered_sum_rate",
    "oracle_sum_rate",
    "verify_lemma1",
    "verify_markov_structure",
    "verify_orthogonality",
    "random_draw",
    "random_draws",
]
