import math
from typing import Optional

import numpy as np

from cribbing_mac_regions.discrete_region.data_model import AuxFactorization, ChannelForm, DiscreteChannelSpec
from cribbing_mac_regions.info_core import JointPmf

__all__ = [
    "default_aux_sizes",
    "random_factor_arrays",
    "random_factorization",
    "random_channel",
]


def default_aux_sizes(spec: DiscreteChannelSpec) -> tuple[int, int, int]:
    """|U| = |X1||X2| and |Vi| = |Xi||S0||Si|."""
    return (spec.x1 * spec.x2, spec.x1 * spec.s0 * spec.s1, spec.x2 * spec.s0 * spec.s2)


def _dirichlet_rows(rng: np.random.Generator, shape: tuple[int, ...], outcome: int) -> np.ndarray:
    count = math.prod(shape) // outcome
    return rng.dirichlet(np.ones(outcome), size=count).reshape(shape)


def random_factor_arrays(
    spec: DiscreteChannelSpec,
    sizes: tuple[int, int, int],
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Canonical factor arrays whose rows are independent symmetric Dirichlet(1) draws."""
    u, v1, v2 = sizes
    return (
        _dirichlet_rows(rng, (spec.s0, u), u),
        _dirichlet_rows(rng, (u, spec.s0, spec.s1, spec.x1, v1), spec.x1 * v1),
        _dirichlet_rows(rng, (u, spec.s0, spec.s2, spec.x2, v2), spec.x2 * v2),
    )


def random_factorization(
    spec: DiscreteChannelSpec,
    rng: np.random.Generator,
    aux_sizes: Optional[tuple[int, int, int]] = None,
) -> AuxFactorization:
    sizes = default_aux_sizes(spec) if aux_sizes is None else aux_sizes
    p_u, p_x1v1, p_x2v2 = random_factor_arrays(spec, sizes, rng)
    return AuxFactorization(p_u=p_u, p_x1v1=p_x1v1, p_x2v2=p_x2v2)


def random_channel(
    rng: np.random.Generator,
    form: ChannelForm = ChannelForm.T1,
    *,
    x1: int = 2,
    x2: int = 2,
    s0: int = 2,
    s1: int = 2,
    s2: int = 2,
    y: int = 2,
) -> DiscreteChannelSpec:
    """A channel with Dirichlet(1) transition rows.

    t1 channels get a correlated state pmf; t2 channels get a product of three state marginals.
    ``s0`` is ignored for t1 channels.
    """
    form = ChannelForm(form)
    if form is ChannelForm.T1:
        s0 = 1
        state = JointPmf((s1, s2), rng.dirichlet(np.ones(s1 * s2)))
    else:
        marginals = [rng.dirichlet(np.ones(n)) for n in (s0, s1, s2)]
        probs = np.einsum("i,j,k->ijk", *marginals)
        state = JointPmf((s0, s1, s2), probs / probs.sum())
    state_dims = state.dims
    transition = _dirichlet_rows(rng, (x1, x2) + state_dims + (y,), y)
    return DiscreteChannelSpec(
        form=form, x1=x1, x2=x2, s0=s0, s1=s1, s2=s2, y=y, state_pmf=state, transition=transition
    )
