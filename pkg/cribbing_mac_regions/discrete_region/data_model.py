import enum
import math
from dataclasses import dataclass
from typing import Final

import numpy as np

from cribbing_mac_regions.info_core import JointPmf
from cribbing_mac_regions.region_geometry import RateTriple

__all__ = [
    "ChannelForm",
    "JOINT_LABELS",
    "MAX_CELLS",
    "DiscreteChannelSpec",
    "AuxFactorization",
    "RateTriple",
]

JOINT_LABELS: Final = ("S0", "S1", "S2", "U", "V1", "V2", "X1", "X2", "Y")
"""Axis order of every composed joint pmf. t1 channels carry a size-1 S0 axis."""

MAX_CELLS: Final = 1_000_000

_ROW_TOLERANCE = 1e-12


class ChannelForm(enum.Enum):
    T1 = "t1"
    """Correlated private states (S1, S2), no common state."""
    T2 = "t2"
    """Independent common and private states (S0, S1, S2)."""


def _stochastic(name: str, array: np.ndarray, row_axes: int) -> np.ndarray:
    """Validates that ``array`` is a conditional pmf whose trailing ``row_axes`` axes are the outcome."""
    array = np.array(array, dtype=np.float64)
    if np.any(array < 0.0) or not np.all(np.isfinite(array)):
        raise ValueError(f"{name} entries must be finite and nonnegative.")
    sums = array.sum(axis=tuple(range(array.ndim - row_axes, array.ndim)))
    worst = float(np.max(np.abs(sums - 1.0))) if sums.size else 0.0
    if worst > _ROW_TOLERANCE:
        raise ValueError(f"Every row of {name} must sum to 1; the worst row is off by {worst:.3e}.")
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class DiscreteChannelSpec:
    """A finite-alphabet state-dependent MAC.

    Attributes:
        form (ChannelForm) : Which achievable region applies.
        x1, x2, s0, s1, s2, y (int) : Alphabet sizes; ``s0`` must be 1 for t1 channels.
        state_pmf (JointPmf) : P(s1, s2) for t1, P(s0, s1, s2) for t2 (which must factor).
        transition (np.ndarray) : P(y | x1, x2, s1, s2) with shape (x1, x2, s1, s2, y) for t1,
            or P(y | x1, x2, s0, s1, s2) with shape (x1, x2, s0, s1, s2, y) for t2.
    """
    form: ChannelForm
    x1: int
    x2: int
    s0: int
    s1: int
    s2: int
    y: int
    state_pmf: JointPmf
    transition: np.ndarray

    def __post_init__(self):
        form = ChannelForm(self.form)
        object.__setattr__(self, "form", form)
        for name in ("x1", "x2", "s0", "s1", "s2", "y"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
                raise ValueError(f"Alphabet size '{name}' must be a positive integer, got {value!r}.")
            object.__setattr__(self, name, int(value))
        if form is ChannelForm.T1 and self.s0 != 1:
            raise ValueError("t1 channels have no common state; s0 must be 1.")
        if not isinstance(self.state_pmf, JointPmf):
            raise TypeError("state_pmf must be a JointPmf.")
        state_dims = (self.s1, self.s2) if form is ChannelForm.T1 else (self.s0, self.s1, self.s2)
        if self.state_pmf.dims != state_dims:
            raise ValueError(f"state_pmf has alphabets {self.state_pmf.dims}, expected {state_dims}.")
        if form is ChannelForm.T2:
            p = self.state_pmf.probs
            product = np.einsum("i,j,k->ijk", p.sum(axis=(1, 2)), p.sum(axis=(0, 2)), p.sum(axis=(0, 1)))
            if float(np.max(np.abs(product - p))) > _ROW_TOLERANCE:
                raise ValueError("t2 channels need independent states: P(s0, s1, s2) = P(s0) P(s1) P(s2).")
        shape = (self.x1, self.x2) + state_dims + (self.y,)
        transition = np.asarray(self.transition, dtype=np.float64)
        if transition.size != math.prod(shape):
            raise ValueError(f"transition has {transition.size} entries, expected shape {shape}.")
        object.__setattr__(self, "transition", _stochastic("transition", transition.reshape(shape), 1))

    @property
    def state_array(self) -> np.ndarray:
        """P(s0, s1, s2), with a size-1 S0 axis for t1 channels."""
        return self.state_pmf.probs.reshape(self.s0, self.s1, self.s2)

    @property
    def channel_array(self) -> np.ndarray:
        """P(y | x1, x2, s0, s1, s2) with shape (x1, x2, s0, s1, s2, y)."""
        return self.transition.reshape(self.x1, self.x2, self.s0, self.s1, self.s2, self.y)

    @classmethod
    def without_states(cls, transition: np.ndarray, x1: int, x2: int, y: int) -> "DiscreteChannelSpec":
        """A t1 channel with trivial states, from P(y | x1, x2) of shape (x1, x2, y)."""
        return cls(
            form=ChannelForm.T1,
            x1=x1,
            x2=x2,
            s0=1,
            s1=1,
            s2=1,
            y=y,
            state_pmf=JointPmf((1, 1), np.ones(1)),
            transition=np.asarray(transition, dtype=np.float64).reshape(x1, x2, 1, 1, y),
        )


@dataclass(frozen=True)
class AuxFactorization:
    """Distribution of the auxiliaries and inputs given the states, in canonical layout.

    Attributes:
        p_u (np.ndarray) : P(u | s0) with shape (s0, u); a single row for t1.
        p_x1v1 (np.ndarray) : P(x1, v1 | u, s0, s1) with shape (u, s0, s1, x1, v1).
        p_x2v2 (np.ndarray) : P(x2, v2 | u, s0, s2) with shape (u, s0, s2, x2, v2).

    Use ``for_spec`` to build one from the per-form shapes, which omit S0 for t1.
    """
    p_u: np.ndarray
    p_x1v1: np.ndarray
    p_x2v2: np.ndarray

    def __post_init__(self):
        p_u = _stochastic("p_u", self.p_u, 1)
        p_x1v1 = _stochastic("p_x1v1", self.p_x1v1, 2)
        p_x2v2 = _stochastic("p_x2v2", self.p_x2v2, 2)
        if p_u.ndim != 2 or p_x1v1.ndim != 5 or p_x2v2.ndim != 5:
            raise ValueError("Factor arrays must have shapes (s0, u), (u, s0, s1, x1, v1) and (u, s0, s2, x2, v2).")
        s0, u = p_u.shape
        if p_x1v1.shape[:2] != (u, s0) or p_x2v2.shape[:2] != (u, s0):
            raise ValueError(
                f"Factor shapes {p_u.shape}, {p_x1v1.shape}, {p_x2v2.shape} disagree on the U or S0 alphabet."
            )
        object.__setattr__(self, "p_u", p_u)
        object.__setattr__(self, "p_x1v1", p_x1v1)
        object.__setattr__(self, "p_x2v2", p_x2v2)

    @property
    def u(self) -> int:
        return self.p_u.shape[1]

    @property
    def v1(self) -> int:
        return self.p_x1v1.shape[4]

    @property
    def v2(self) -> int:
        return self.p_x2v2.shape[4]

    @classmethod
    def for_spec(
        cls,
        spec: DiscreteChannelSpec,
        p_u: np.ndarray,
        p_x1v1: np.ndarray,
        p_x2v2: np.ndarray,
    ) -> "AuxFactorization":
        """Builds the factorization from the shapes natural to the channel form.

        t1: P(u) of shape (u,), P(x1, v1 | u, s1) of shape (u, s1, x1, v1), and likewise for encoder 2.
        t2: P(u | s0) of shape (s0, u), P(x1, v1 | u, s0, s1) of shape (u, s0, s1, x1, v1), and likewise.
        """
        p_u = np.asarray(p_u, dtype=np.float64)
        p_x1v1 = np.asarray(p_x1v1, dtype=np.float64)
        p_x2v2 = np.asarray(p_x2v2, dtype=np.float64)
        if spec.form is ChannelForm.T1:
            if p_u.ndim != 1 or p_x1v1.ndim != 4 or p_x2v2.ndim != 4:
                raise ValueError("t1 factors have shapes (u,), (u, s1, x1, v1) and (u, s2, x2, v2).")
            p_u = p_u[np.newaxis, :]
            p_x1v1 = p_x1v1[:, np.newaxis]
            p_x2v2 = p_x2v2[:, np.newaxis]
        return cls(p_u=p_u, p_x1v1=p_x1v1, p_x2v2=p_x2v2)

    def check_compatible(self, spec: DiscreteChannelSpec):
        """Raises ValueError when the factor alphabets do not match ``spec``."""
        expected = {
            "p_u": (spec.s0, self.u),
            "p_x1v1": (self.u, spec.s0, spec.s1, spec.x1, self.v1),
            "p_x2v2": (self.u, spec.s0, spec.s2, spec.x2, self.v2),
        }
        for name, shape in expected.items():
            actual = getattr(self, name).shape
            if actual != shape:
                raise ValueError(f"{name} has shape {actual}; the channel needs {shape}.")
