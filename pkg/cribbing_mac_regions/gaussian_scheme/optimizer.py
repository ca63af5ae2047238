import functools
import logging

import numpy as np

from cribbing_mac_regions.gaussian_scheme.coefficients import sum_rate_grid
from cribbing_mac_regions.gaussian_scheme.data_model import GaussianMacConfig, PowerSplit

__all__ = [
    "GRID_POINTS",
    "REFINE_ROUNDS",
    "optimize_sum_rate",
    "feasible_box",
]

_log = logging.getLogger(__name__)

GRID_POINTS = 17
REFINE_ROUNDS = 3


def feasible_box(cfg: GaussianMacConfig, *, fix_eta: bool = False) -> tuple[tuple[float, float], ...]:
    """Bounds of (eta1, eta2, alpha1, alpha2); a degenerate interval means the parameter is pinned."""
    box = list[tuple[float, float]]()
    for encoder in (1, 2):
        lower = 1.0 if fix_eta else cfg.eta_lower_bound(encoder)
        box.append((lower, 1.0))
    for encoder in (1, 2):
        box.append((0.0, 1.0) if cfg.power(encoder) > 0.0 else (0.0, 0.0))
    return tuple(box)


def _axis(low: float, high: float) -> np.ndarray:
    if high <= low:
        return np.array([low])
    return np.linspace(low, high, GRID_POINTS)


def _evaluate(cfg: GaussianMacConfig, point: tuple[float, ...]) -> float:
    return float(sum_rate_grid(cfg, *point))


def optimize_sum_rate(cfg: GaussianMacConfig, *, fix_eta: bool = False) -> tuple[PowerSplit, float]:
    """Best split of the DPC-plus-cleaning scheme for ``cfg``.

    A 17-point grid per axis over the feasible box is scanned first; ties go to the lexicographically
    smallest (eta1, eta2, alpha1, alpha2). Three rounds of coordinate refinement follow, each with half
    the step of the previous one, accepting only strict improvements.

    Args:
        cfg (GaussianMacConfig) : The channel.
        fix_eta (bool) : Keep eta1 = eta2 = 1, i.e. dirty paper coding without cleaning.

    Returns:
        tuple[PowerSplit, float] : The split and its sum-rate in bits per channel use.
    """
    if not isinstance(cfg, GaussianMacConfig):
        raise TypeError("cfg must be a GaussianMacConfig.")
    split, value = _optimize_cached(cfg, bool(fix_eta))
    return split, value


@functools.lru_cache(maxsize=256)
def _optimize_cached(cfg: GaussianMacConfig, fix_eta: bool) -> tuple[PowerSplit, float]:
    box = feasible_box(cfg, fix_eta=fix_eta)
    axes = [_axis(low, high) for low, high in box]
    mesh = np.meshgrid(*axes, indexing="ij")
    values = sum_rate_grid(cfg, *mesh)
    flat = int(np.argmax(values))
    index = np.unravel_index(flat, values.shape)
    point = [float(axis[i]) for axis, i in zip(axes, index)]
    best = float(values[index])
    _log.debug("Grid optimum %.9f at %s over %d points.", best, point, values.size)

    for k in range(1, REFINE_ROUNDS + 1):
        for dim, (low, high) in enumerate(box):
            if high <= low:
                continue
            step = (high - low) / (GRID_POINTS - 1) / 2**k
            for direction in (-1.0, 1.0):
                candidate = list(point)
                candidate[dim] = min(max(point[dim] + direction * step, low), high)
                value = _evaluate(cfg, tuple(candidate))
                if value > best:
                    best, point = value, candidate
    _log.debug("Refined optimum %.9f at %s.", best, point)
    split = PowerSplit(eta1=point[0], eta2=point[1], alpha1=point[2], alpha2=point[3])
    return split, best
