import itertools
import math

import numpy as np
from scipy.special import entr

from cribbing_mac_regions.discrete_region.data_model import DiscreteChannelSpec, RateTriple
from cribbing_mac_regions.info_core import JointPmf, mutual_information

__all__ = [
    "willems_bounds",
    "willems_support",
]

_MAX_COMBINATIONS = 4_000_000
_LN2 = math.log(2.0)


def _stateless_channel(spec: DiscreteChannelSpec) -> np.ndarray:
    if (spec.s0, spec.s1, spec.s2) != (1, 1, 1):
        raise ValueError("The cribbing region without states needs a channel with trivial state alphabets.")
    return spec.channel_array.reshape(spec.x1, spec.x2, spec.y)


def willems_bounds(
    spec: DiscreteChannelSpec,
    p_u: np.ndarray,
    p_x1_given_u: np.ndarray,
    p_x2_given_u: np.ndarray,
) -> RateTriple:
    """The no-state cribbing pentagon {R1 <= H(X1|U), R2 <= H(X2|U), R1 + R2 <= I(Y;X1,X2)}.

    Args:
        spec (DiscreteChannelSpec) : A channel whose state alphabets all have size 1.
        p_u (np.ndarray) : P(u), shape (u,).
        p_x1_given_u, p_x2_given_u (np.ndarray) : P(x1|u) and P(x2|u), shapes (u, x1) and (u, x2).
    """
    channel = _stateless_channel(spec)
    probs = np.einsum("u,ua,ub,aby->uaby", p_u, p_x1_given_u, p_x2_given_u, channel)
    p = JointPmf(probs.shape, probs, ("U", "X1", "X2", "Y"))
    return RateTriple.clamped(
        _conditional_entropy(p, "X1"),
        _conditional_entropy(p, "X2"),
        mutual_information(p, "Y", ("X1", "X2")),
    )


def _conditional_entropy(p: JointPmf, name: str) -> float:
    joint = p.marginal(p.index("U", name))
    u_only = joint.sum(axis=1)
    return float(entr(joint).sum() - entr(u_only).sum()) / _LN2


def _simplex_grid(size: int, resolution: int) -> np.ndarray:
    """All pmfs on ``size`` outcomes whose entries are multiples of 1/resolution."""
    points = [
        np.array(c, dtype=np.float64) / resolution
        for c in itertools.product(range(resolution + 1), repeat=size)
        if sum(c) == resolution
    ]
    return np.vstack(points)


def willems_support(spec: DiscreteChannelSpec, weight: float, *, resolution: int = 10) -> float:
    """Support value max{weight*R1 + (1-weight)*R2} of the no-state cribbing region over binary U.

    P(u) and every row P(xi|u) range over the grid of pmfs with entries in multiples of 1/resolution,
    and every combination is evaluated at once.

    Raises:
        ValueError : The state alphabets are not trivial, or the grid is too large for the input alphabets.
    """
    if not 0.0 <= weight <= 1.0:
        raise ValueError(f"The weight must lie in [0, 1], got {weight!r}.")
    channel = _stateless_channel(spec)
    g_u = _simplex_grid(2, resolution)[:, 0]
    g1 = _simplex_grid(spec.x1, resolution)
    g2 = _simplex_grid(spec.x2, resolution)
    combinations = len(g_u) * len(g1) ** 2 * len(g2) ** 2
    if combinations > _MAX_COMBINATIONS:
        raise ValueError(f"{combinations} grid combinations exceed the limit of {_MAX_COMBINATIONS}.")

    # axes: a=P(u=0), i/j = P(x1|u=0)/P(x1|u=1), k/l = P(x2|u=0)/P(x2|u=1), then x1, x2, y
    a = g_u[:, None, None, None, None]
    x1_u0 = g1[None, :, None, None, None, :]
    x1_u1 = g1[None, None, :, None, None, :]
    x2_u0 = g2[None, None, None, :, None, :]
    x2_u1 = g2[None, None, None, None, :, :]

    def h(rows: np.ndarray) -> np.ndarray:
        return entr(rows).sum(axis=-1) / _LN2

    r1 = a * h(x1_u0) + (1.0 - a) * h(x1_u1)
    r2 = a * h(x2_u0) + (1.0 - a) * h(x2_u1)
    a6 = a[..., None, None]
    p_x = a6 * x1_u0[..., :, None] * x2_u0[..., None, :] + (1.0 - a6) * x1_u1[..., :, None] * x2_u1[..., None, :]
    p_y = np.einsum("...ab,aby->...y", p_x, channel)
    noise_entropy = h(channel)
    total = h(p_y) - np.einsum("...ab,ab->...", p_x, noise_entropy)

    r1, r2, total = np.broadcast_arrays(r1, r2, np.maximum(total, 0.0))
    if weight >= 0.5:
        first = np.minimum(r1, total)
        second = np.maximum(np.minimum(r2, total - first), 0.0)
    else:
        second = np.minimum(r2, total)
        first = np.maximum(np.minimum(r1, total - second), 0.0)
    return float(np.max(weight * first + (1.0 - weight) * second))
