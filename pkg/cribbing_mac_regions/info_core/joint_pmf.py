import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from scipy.special import entr

from cribbing_mac_regions.errors import IndexSubsetError

__all__ = [
    "JointPmf",
    "entropy",
    "conditional_mutual_information",
    "mutual_information",
]

_log = logging.getLogger(__name__)

_SUM_TOLERANCE = 1e-12
_CLAMP_TOLERANCE = 1e-12
_LN2 = math.log(2.0)

IndexSubset = Union[int, Iterable[int]]


@dataclass(frozen=True)
class JointPmf:
    """A dense joint probability mass function over a finite product alphabet.

    Attributes:
        dims (tuple[int, ...]) : Alphabet size of every variable, in axis order.
        probs (np.ndarray, read-only) : Probabilities with shape ``dims``; a flat array of matching size is reshaped.
        labels (tuple[str, ...]) : Optional variable names, one per axis. Defaults to "0", "1", ...
    """
    dims: tuple[int, ...]
    probs: np.ndarray
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims:
            raise ValueError("A joint pmf needs at least one variable.")
        if any(d < 1 for d in dims):
            raise ValueError(f"Alphabet sizes must be positive, got {dims}.")
        probs = np.asarray(self.probs, dtype=np.float64)
        if probs.size != math.prod(dims):
            raise ValueError(f"The pmf has {probs.size} entries but the alphabets {dims} need {math.prod(dims)}.")
        probs = probs.reshape(dims).copy()
        if np.any(probs < 0.0) or not np.all(np.isfinite(probs)):
            raise ValueError("Probabilities must be finite and nonnegative.")
        total = float(probs.sum())
        if abs(total - 1.0) > _SUM_TOLERANCE:
            raise ValueError(f"Probabilities sum to {total!r}, not 1.")
        probs.setflags(write=False)
        labels = tuple(self.labels) if self.labels else tuple(str(i) for i in range(len(dims)))
        if len(labels) != len(dims):
            raise ValueError("There must be exactly one label per variable.")
        if len(set(labels)) != len(labels):
            raise ValueError(f"Labels must be unique, got {labels}.")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "labels", labels)

    @property
    def ndim(self) -> int:
        return len(self.dims)

    def index(self, *names: str) -> tuple[int, ...]:
        """Returns the axis indices of the named variables, in the order given."""
        try:
            return tuple(self.labels.index(name) for name in names)
        except ValueError:
            raise IndexSubsetError(f"Unknown variable among {names}; known labels are {self.labels}.") from None

    def marginal(self, axes: Sequence[int]) -> np.ndarray:
        """Returns the marginal over ``axes``, with the kept axes in ascending order."""
        kept = set(axes)
        drop = tuple(i for i in range(self.ndim) if i not in kept)
        return self.probs.sum(axis=drop) if drop else self.probs

    def transposed(self, order: Sequence[int]) -> "JointPmf":
        """Returns the same distribution with its variables permuted into ``order``."""
        order = tuple(order)
        return JointPmf(
            dims=tuple(self.dims[i] for i in order),
            probs=np.transpose(self.probs, order),
            labels=tuple(self.labels[i] for i in order),
        )


def _as_subset(p: JointPmf, subset: Optional[IndexSubset], *, allow_empty: bool, what: str) -> frozenset[int]:
    if subset is None:
        subset = ()
    elif isinstance(subset, (int, np.integer)):
        subset = (int(subset),)
    elif isinstance(subset, str):
        subset = p.index(subset)
    items = [p.index(i)[0] if isinstance(i, str) else i for i in subset]
    for i in items:
        if not isinstance(i, (int, np.integer)) or isinstance(i, bool):
            raise IndexSubsetError(f"The {what} subset must contain integer indices, got {i!r}.")
        if not 0 <= i < p.ndim:
            raise IndexSubsetError(f"Index {i} in the {what} subset is out of range for {p.ndim} variables.")
    if len(set(items)) != len(items):
        raise IndexSubsetError(f"The {what} subset repeats an index: {items}.")
    if not items and not allow_empty:
        raise IndexSubsetError(f"The {what} subset must not be empty.")
    return frozenset(int(i) for i in items)


def _entropy_bits(p: JointPmf, axes: frozenset[int]) -> float:
    if not axes:
        return 0.0
    marginal = p.marginal(sorted(axes))
    return float(entr(marginal).sum()) / _LN2


def entropy(p: JointPmf, vars: IndexSubset) -> float:
    """Entropy in bits of the marginal of ``p`` on ``vars``; 0·log0 counts as 0.

    Args:
        p (JointPmf) : The joint distribution.
        vars (int | Iterable[int]) : Nonempty set of axis indices.
    """
    axes = _as_subset(p, vars, allow_empty=False, what="entropy")
    return _entropy_bits(p, axes)


def conditional_mutual_information(
    p: JointPmf,
    a: IndexSubset,
    b: IndexSubset,
    c: Optional[IndexSubset] = None,
) -> float:
    """I(A;B|C) in bits, evaluated as H(A,C) + H(B,C) - H(A,B,C) - H(C).

    ``c`` may be empty, giving the unconditional I(A;B). Results within 1e-12 below zero are clamped to 0.
    """
    set_a = _as_subset(p, a, allow_empty=False, what="first")
    set_b = _as_subset(p, b, allow_empty=False, what="second")
    set_c = _as_subset(p, c, allow_empty=True, what="conditioning")
    if set_a & set_b or set_a & set_c or set_b & set_c:
        raise IndexSubsetError(f"Subsets must be pairwise disjoint, got {sorted(set_a)}, {sorted(set_b)}, {sorted(set_c)}.")
    value = (
        _entropy_bits(p, set_a | set_c)
        + _entropy_bits(p, set_b | set_c)
        - _entropy_bits(p, set_a | set_b | set_c)
        - _entropy_bits(p, set_c)
    )
    if value < 0.0:
        if value < -_CLAMP_TOLERANCE:
            _log.warning("Conditional mutual information %.3e is below the clamp tolerance.", value)
        value = 0.0
    return value


def mutual_information(p: JointPmf, a: IndexSubset, b: IndexSubset) -> float:
    return conditional_mutual_information(p, a, b, ())
