import math
from dataclasses import dataclass
from typing import Optional

from cribbing_mac_regions.gaussian_scheme.data_model import SCENARIO_ORDER, GaussianMacConfig, PowerSplit, ScenarioId
from cribbing_mac_regions.gaussian_scheme.optimizer import optimize_sum_rate
from cribbing_mac_regions.region_geometry import RateRegion, RateTriple, contains, from_triple

__all__ = [
    "ScenarioResult",
    "NestingCheck",
    "scenario_region",
    "scenario_result",
    "scenario_sweep",
    "check_nesting",
    "cleaning_gain",
]

NESTING_SLACK = 1e-9


def _awgn(snr: float) -> float:
    return 0.5 * math.log2(1.0 + snr)


def _triangle(sum_bound: float) -> RateRegion:
    return from_triple(RateTriple(sum_bound, sum_bound, sum_bound))


@dataclass(frozen=True)
class ScenarioResult:
    """One comparison scenario evaluated on a configuration.

    Attributes:
        scenario (ScenarioId) : Which scenario.
        region (RateRegion) : Its achievable region.
        split (PowerSplit, optional) : The optimized split, for the informed scenarios only.
    """
    scenario: ScenarioId
    region: RateRegion
    split: Optional[PowerSplit] = None

    @property
    def sum_bound(self) -> float:
        return self.region.sum_max


@dataclass(frozen=True)
class NestingCheck:
    inner: ScenarioId
    outer: ScenarioId
    inner_sum: float
    outer_sum: float
    holds: bool


def _dpc_cleaning_optimum(cfg: GaussianMacConfig) -> tuple[PowerSplit, float]:
    full = optimize_sum_rate(cfg)
    dpc_only = optimize_sum_rate(cfg, fix_eta=True)
    # the restricted optimum is a feasible point of the full problem
    return full if full[1] >= dpc_only[1] else dpc_only


def scenario_result(cfg: GaussianMacConfig, s: ScenarioId) -> ScenarioResult:
    if not isinstance(cfg, GaussianMacConfig):
        raise TypeError("cfg must be a GaussianMacConfig.")
    try:
        s = ScenarioId(s)
    except ValueError:
        raise ValueError(f"Unknown scenario {s!r}; expected one of {[x.value for x in ScenarioId]}.") from None
    noise_with_states = cfg.total_state_noise
    match s:
        case ScenarioId.UNINFORMED_SELFISH:
            triple = RateTriple(
                _awgn(cfg.p1 / noise_with_states),
                _awgn(cfg.p2 / noise_with_states),
                _awgn((cfg.p1 + cfg.p2) / noise_with_states),
            )
            return ScenarioResult(s, from_triple(triple))
        case ScenarioId.UNINFORMED_COOPERATING:
            coherent = (math.sqrt(cfg.p1) + math.sqrt(cfg.p2)) ** 2
            return ScenarioResult(s, _triangle(_awgn(coherent / noise_with_states)))
        case ScenarioId.INFORMED_DPC_ONLY:
            split, value = optimize_sum_rate(cfg, fix_eta=True)
            return ScenarioResult(s, _triangle(value), split)
        case ScenarioId.INFORMED_DPC_CLEANING:
            split, value = _dpc_cleaning_optimum(cfg)
            return ScenarioResult(s, _triangle(value), split)
        case ScenarioId.NO_STATE_CAPACITY:
            coherent = (math.sqrt(cfg.p1) + math.sqrt(cfg.p2)) ** 2
            return ScenarioResult(s, _triangle(_awgn(coherent / cfg.n)))


def scenario_region(cfg: GaussianMacConfig, s: ScenarioId) -> RateRegion:
    """Achievable region of one comparison scenario.

    The two uninformed baselines treat every state as extra Gaussian noise; the informed scenarios and the
    no-state capacity are triangles, since cribbing lets the encoders fully cooperate.

    Raises:
        ValueError : ``s`` is not a known scenario tag.
    """
    return scenario_result(cfg, s).region


def scenario_sweep(cfg: GaussianMacConfig) -> list[ScenarioResult]:
    """All five scenarios, from the uninformed selfish baseline up to the no-state capacity."""
    return [scenario_result(cfg, s) for s in SCENARIO_ORDER]


def check_nesting(sweep: list[ScenarioResult], slack: float = NESTING_SLACK) -> list[NestingCheck]:
    """Containment of each scenario region in the next one of the sweep."""
    checks = list[NestingCheck]()
    for inner, outer in zip(sweep, sweep[1:]):
        checks.append(
            NestingCheck(
                inner=inner.scenario,
                outer=outer.scenario,
                inner_sum=inner.sum_bound,
                outer_sum=outer.sum_bound,
                holds=contains(outer.region, inner.region, slack),
            )
        )
    return checks


def cleaning_gain(cfg: GaussianMacConfig) -> float:
    """How much the optimized DPC-plus-cleaning sum-rate exceeds the optimized DPC-only one."""
    _, with_cleaning = _dpc_cleaning_optimum(cfg)
    _, dpc_only = optimize_sum_rate(cfg, fix_eta=True)
    return with_cleaning - dpc_only
