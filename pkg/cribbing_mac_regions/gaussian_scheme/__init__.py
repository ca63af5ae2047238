from cribbing_mac_regions.gaussian_scheme.data_model import (
    SCENARIO_ORDER,
    GaussianMacConfig,
    PowerSplit,
    ScenarioId,
    SchemeCoefficients,
)
from cribbing_mac_regions.gaussian_scheme.coefficients import (
    derive_coefficients,
    normalize_split,
    sum_rate,
    sum_rate_grid,
)
from cribbing_mac_regions.gaussian_scheme.optimizer import feasible_box, optimize_sum_rate
from cribbing_mac_regions.gaussian_scheme.scenarios import (
    NestingCheck,
    ScenarioResult,
    check_nesting,
    cleaning_gain,
    scenario_region,
    scenario_result,
    scenario_sweep,
)

__all__ = [
    "SCENARIO_ORDER",
    "GaussianMacConfig",
    "PowerSplit",
    "ScenarioId",
    "SchemeCoefficients",
    "derive_coefficients",
    "normalize_split",
    "sum_rate",
    "sum_rate_grid",
    "feasible_box",
    "optimize_sum_rate",
    "NestingCheck",
    "ScenarioResult",
    "check_nesting",
    "cleaning_gain",
    "scenario_region",
    "scenario_result",
    "scenario_sweep",
]
