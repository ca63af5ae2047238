import logging
import math
from dataclasses import dataclass
from typing import Final, Optional

import numpy as np

from cribbing_mac_regions.errors import InternalConsistencyError
from cribbing_mac_regions.gaussian_scheme import (
    GaussianMacConfig,
    PowerSplit,
    SchemeCoefficients,
    derive_coefficients,
    normalize_split,
)
from cribbing_mac_regions.info_core import GaussianVector

__all__ = [
    "PRIMITIVES",
    "DERIVED",
    "SchemeCovariance",
    "build_scheme_covariance",
]

_log = logging.getLogger(__name__)

PRIMITIVES: Final = ("Ut", "V1t", "V2t", "S0", "S1", "S2", "Z")
"""Independent zero-mean Gaussians: the unit-variance codeword seeds, the three states and the noise."""

DERIVED: Final = ("U", "V1", "V2", "X1", "X2", "Y", "S1p", "S2p", "phi0", "phi1", "phi2")

_INVARIANT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SchemeCovariance:
    """Joint Gaussian law of the scheme variables, as a linear image of independent primitives.

    Attributes:
        cfg (GaussianMacConfig) : The channel.
        split (PowerSplit) : The normalized split the lift was built from.
        coefficients (SchemeCoefficients) : The coefficients used in the lift, possibly perturbed.
        base (GaussianVector) : The 7 primitives, diagonal covariance (1, 1, 1, Q0, Q1, Q2, N).
        lift (np.ndarray) : 11x7 matrix whose rows express the derived variables in the primitives.
        derived (GaussianVector) : The 11 derived variables, ``lift @ base.cov @ lift.T``.
        joint (GaussianVector) : Primitives followed by derived variables, for mixed queries.
    """
    cfg: GaussianMacConfig
    split: PowerSplit
    coefficients: SchemeCoefficients
    base: GaussianVector
    lift: np.ndarray
    derived: GaussianVector
    joint: GaussianVector

    def covariance(self, first: str, second: str) -> float:
        return self.joint.covariance(first, second)

    def variance(self, name: str) -> float:
        return self.joint.variance(name)


def _lift_matrix(cfg: GaussianMacConfig, split: PowerSplit, co: SchemeCoefficients) -> np.ndarray:
    col = {name: k for k, name in enumerate(PRIMITIVES)}
    rows = {name: np.zeros(len(PRIMITIVES)) for name in DERIVED}

    def unit(name: str) -> np.ndarray:
        e = np.zeros(len(PRIMITIVES))
        e[col[name]] = 1.0
        return e

    residual = {
        1: (1.0 - co.clean1) * unit("S1"),
        2: (1.0 - co.clean2) * unit("S2"),
    }
    rows["S1p"], rows["S2p"] = residual[1], residual[2]
    rows["U"] = unit("Ut") + co.gamma0 * unit("S0")
    for i in (1, 2):
        eta, alpha, p = split.eta(i), split.alpha(i), cfg.power(i)
        v_tilde = unit(f"V{i}t") + co.gammai(i) * residual[i]
        rows[f"V{i}"] = v_tilde + co.gamma0i(i) * unit("S0")
        rows[f"X{i}"] = (
            math.sqrt(alpha * eta * p) * unit("Ut")
            + math.sqrt((1.0 - alpha) * eta * p) * unit(f"V{i}t")
            - co.clean(i) * unit(f"S{i}")
        )
    rows["Y"] = rows["X1"] + rows["X2"] + unit("S0") + unit("S1") + unit("S2") + unit("Z")
    rows["phi0"] = rows["U"] - co.gamma0 * rows["Y"]
    rows["phi1"] = rows["V1"] - co.gamma01 * rows["Y"]
    rows["phi2"] = rows["V2"] - co.gamma02 * rows["Y"]
    lift = np.vstack([rows[name] for name in DERIVED])
    lift.setflags(write=False)
    return lift


def _check_invariants(sc: SchemeCovariance):
    cfg = sc.cfg
    for i in (1, 2):
        p = cfg.power(i)
        variance = sc.derived.variance(f"X{i}")
        if abs(variance - p) > _INVARIANT_TOLERANCE * max(1.0, p):
            raise InternalConsistencyError(f"Var(X{i}) = {variance!r} differs from the power constraint {p!r}.")
    idx = {name: k for k, name in enumerate(DERIVED)}
    channel_row = sc.lift[idx["X1"]] + sc.lift[idx["X2"]]
    for name in ("S0", "S1", "S2", "Z"):
        channel_row = channel_row + np.eye(len(PRIMITIVES))[PRIMITIVES.index(name)]
    if np.max(np.abs(sc.lift[idx["Y"]] - channel_row)) > _INVARIANT_TOLERANCE:
        raise InternalConsistencyError("The Y row is not X1 + X2 + S0 + S1 + S2 + Z.")


def build_scheme_covariance(
    cfg: GaussianMacConfig,
    split: PowerSplit,
    *,
    coefficients: Optional[SchemeCoefficients] = None,
) -> SchemeCovariance:
    """Assembles the exact joint covariance of the scheme for one configuration and split.

    Args:
        cfg (GaussianMacConfig) : The channel.
        split (PowerSplit) : Scheme parameters; silent encoders are normalized as in ``sum_rate``.
        coefficients (SchemeCoefficients, optional) : Replacement coefficients, e.g. a perturbed copy.
            Defaults to ``derive_coefficients(cfg, split)``.

    Raises:
        InfeasibleSplitError : ``split`` is infeasible for ``cfg``.
        InternalConsistencyError : The assembled law breaks the power identity or the channel equation.
    """
    split = normalize_split(cfg, split)
    if coefficients is None:
        coefficients = derive_coefficients(cfg, split)
    base_cov = np.diag([1.0, 1.0, 1.0, cfg.q0, cfg.q1, cfg.q2, cfg.n])
    lift = _lift_matrix(cfg, split, coefficients)
    full_lift = np.vstack([np.eye(len(PRIMITIVES)), lift])
    joint_cov = full_lift @ base_cov @ full_lift.T
    joint_cov = 0.5 * (joint_cov + joint_cov.T)
    n = len(PRIMITIVES)
    sc = SchemeCovariance(
        cfg=cfg,
        split=split,
        coefficients=coefficients,
        base=GaussianVector(PRIMITIVES, base_cov),
        lift=lift,
        derived=GaussianVector(DERIVED, joint_cov[n:, n:]),
        joint=GaussianVector(PRIMITIVES + DERIVED, joint_cov),
    )
    _check_invariants(sc)
    _log.debug("Scheme covariance built for %s, %s.", cfg, split)
    return sc
