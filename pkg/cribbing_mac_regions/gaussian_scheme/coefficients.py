import math

import numpy as np

from cribbing_mac_regions.errors import InfeasibleSplitError
from cribbing_mac_regions.gaussian_scheme.data_model import GaussianMacConfig, PowerSplit, SchemeCoefficients

__all__ = [
    "normalize_split",
    "derive_coefficients",
    "sum_rate",
    "sum_rate_grid",
]

_SPLIT_TOLERANCE = 1e-12


def normalize_split(cfg: GaussianMacConfig, split: PowerSplit) -> PowerSplit:
    """Checks ``split`` against ``cfg`` and pins the parameters of silent encoders.

    An encoder with no power keeps eta = 1 and alpha = 0; its parameters have no effect.

    Raises:
        InfeasibleSplitError : Some eta lies below ``1 - min{1, Q/P}``.
    """
    if not isinstance(cfg, GaussianMacConfig):
        raise TypeError("cfg must be a GaussianMacConfig.")
    if not isinstance(split, PowerSplit):
        raise TypeError("split must be a PowerSplit.")
    etas = [split.eta1, split.eta2]
    alphas = [split.alpha1, split.alpha2]
    for encoder in (1, 2):
        k = encoder - 1
        if cfg.power(encoder) <= 0.0:
            etas[k], alphas[k] = 1.0, 0.0
            continue
        lower = cfg.eta_lower_bound(encoder)
        if etas[k] < lower - _SPLIT_TOLERANCE:
            if cfg.state_variance(encoder) <= 0.0:
                raise InfeasibleSplitError(encoder, f"eta={etas[k]!r} spends power on cleaning a state of zero variance.")
            raise InfeasibleSplitError(encoder, f"eta={etas[k]!r} is below the lower bound {lower!r}.")
    return PowerSplit(eta1=etas[0], eta2=etas[1], alpha1=alphas[0], alpha2=alphas[1])


def _residual_variance(q: float, cleaning_power: float) -> float:
    if q <= 0.0:
        return 0.0
    return (math.sqrt(q) - math.sqrt(cleaning_power)) ** 2


def derive_coefficients(cfg: GaussianMacConfig, split: PowerSplit) -> SchemeCoefficients:
    """Inflation coefficients and residual state variances of the generalized DPC scheme.

    With a = sqrt(alpha1 eta1 P1) + sqrt(alpha2 eta2 P2), b_i = sqrt(alpha_bar_i eta_i P_i) and
    D = a^2 + b_1^2 + b_2^2 + Q'_1 + Q'_2 + N:

        gamma0  = a / D
        gamma_i = b_i / (b_1^2 + b_2^2 + Q'_(3-i) + N)
        gamma0i = (b_i + gamma_i Q'_i) / D

    These are the MMSE coefficients that make U - gamma0 Y and V_i - gamma0i Y orthogonal to Y and S0.
    """
    split = normalize_split(cfg, split)
    common = math.sqrt(split.alpha1 * split.eta1 * cfg.p1) + math.sqrt(split.alpha2 * split.eta2 * cfg.p2)
    private = (
        math.sqrt((1.0 - split.alpha1) * split.eta1 * cfg.p1),
        math.sqrt((1.0 - split.alpha2) * split.eta2 * cfg.p2),
    )
    cleaning = ((1.0 - split.eta1) * cfg.p1, (1.0 - split.eta2) * cfg.p2)
    q1p = _residual_variance(cfg.q1, cleaning[0])
    q2p = _residual_variance(cfg.q2, cleaning[1])
    clean1 = math.sqrt(cleaning[0] / cfg.q1) if cfg.q1 > 0.0 else 0.0
    clean2 = math.sqrt(cleaning[1] / cfg.q2) if cfg.q2 > 0.0 else 0.0
    b1_sq, b2_sq = private[0] ** 2, private[1] ** 2
    denominator = common**2 + b1_sq + b2_sq + q1p + q2p + cfg.n
    gamma1 = private[0] / (b1_sq + b2_sq + q2p + cfg.n)
    gamma2 = private[1] / (b1_sq + b2_sq + q1p + cfg.n)
    return SchemeCoefficients(
        gamma0=common / denominator,
        gamma01=(private[0] + gamma1 * q1p) / denominator,
        gamma02=(private[1] + gamma2 * q2p) / denominator,
        gamma1=gamma1,
        gamma2=gamma2,
        q1p=q1p,
        q2p=q2p,
        clean1=clean1,
        clean2=clean2,
    )


def sum_rate(cfg: GaussianMacConfig, split: PowerSplit) -> float:
    """Achievable sum-rate of the DPC-plus-cleaning scheme, in bits per channel use."""
    split = normalize_split(cfg, split)
    value = sum_rate_grid(cfg, split.eta1, split.eta2, split.alpha1, split.alpha2)
    return float(value)


def sum_rate_grid(cfg: GaussianMacConfig, eta1, eta2, alpha1, alpha2) -> np.ndarray:
    """Vectorized sum-rate over broadcastable arrays of split parameters.

    No feasibility check is made here; callers pass points of the feasible box.
    """
    eta1, eta2, alpha1, alpha2 = np.broadcast_arrays(
        *(np.asarray(x, dtype=np.float64) for x in (eta1, eta2, alpha1, alpha2))
    )
    common_sq = (np.sqrt(alpha1 * eta1 * cfg.p1) + np.sqrt(alpha2 * eta2 * cfg.p2)) ** 2
    b1_sq = (1.0 - alpha1) * eta1 * cfg.p1
    b2_sq = (1.0 - alpha2) * eta2 * cfg.p2
    q1p = (math.sqrt(cfg.q1) - np.sqrt(np.clip(1.0 - eta1, 0.0, None) * cfg.p1)) ** 2
    q2p = (math.sqrt(cfg.q2) - np.sqrt(np.clip(1.0 - eta2, 0.0, None) * cfg.p2)) ** 2
    private_noise = b1_sq + b2_sq + q1p + q2p + cfg.n
    value = (
        np.log2(1.0 + common_sq / private_noise)
        + np.log2(1.0 + b1_sq / (b2_sq + q2p + cfg.n))
        + np.log2(1.0 + b2_sq / (b1_sq + q1p + cfg.n))
    )
    return np.maximum(0.5 * value, 0.0)
