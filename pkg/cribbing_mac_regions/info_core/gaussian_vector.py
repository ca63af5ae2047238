import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.linalg import LinAlgError, cho_factor

from cribbing_mac_regions.errors import IndexSubsetError, SingularCovarianceError

__all__ = [
    "GaussianVector",
    "gaussian_mutual_information",
]

_log = logging.getLogger(__name__)

_SYMMETRY_TOLERANCE = 1e-12
_PSD_TOLERANCE = 1e-10
_JITTER_SCALE = 1e-12
_CLAMP_TOLERANCE = 1e-9
_LN2 = math.log(2.0)

Component = Union[int, str]
ComponentSubset = Union[Component, Iterable[Component]]


@dataclass(frozen=True)
class GaussianVector:
    """A zero-mean jointly Gaussian vector described by its covariance.

    Attributes:
        labels (tuple[str, ...]) : Names of the scalar components, in row order.
        cov (np.ndarray, read-only) : Symmetric positive-semidefinite covariance matrix.
    """
    labels: tuple[str, ...]
    cov: np.ndarray

    def __post_init__(self):
        labels = tuple(self.labels)
        cov = np.array(self.cov, dtype=np.float64)
        if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
            raise ValueError(f"Covariance must be a square matrix, got shape {cov.shape}.")
        if cov.shape[0] != len(labels):
            raise ValueError(f"{len(labels)} labels for a {cov.shape[0]}x{cov.shape[0]} covariance.")
        if len(set(labels)) != len(labels):
            raise ValueError(f"Labels must be unique, got {labels}.")
        if not np.all(np.isfinite(cov)):
            raise ValueError("Covariance entries must be finite.")
        scale = max(1.0, float(np.max(np.abs(cov)))) if cov.size else 1.0
        if cov.size and np.max(np.abs(cov - cov.T)) > _SYMMETRY_TOLERANCE * scale:
            raise ValueError("Covariance must be symmetric.")
        cov = 0.5 * (cov + cov.T)
        if cov.size and float(np.min(np.linalg.eigvalsh(cov))) < -_PSD_TOLERANCE * scale:
            raise ValueError("Covariance must be positive semidefinite.")
        cov.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "cov", cov)

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, *names: str) -> tuple[int, ...]:
        try:
            return tuple(self.labels.index(name) for name in names)
        except ValueError:
            raise IndexSubsetError(f"Unknown component among {names}; known labels are {self.labels}.") from None

    def variance(self, name: Component) -> float:
        i = self._resolve(name)
        return float(self.cov[i, i])

    def covariance(self, first: Component, second: Component) -> float:
        return float(self.cov[self._resolve(first), self._resolve(second)])

    def _resolve(self, item: Component) -> int:
        if isinstance(item, str):
            return self.index(item)[0]
        if isinstance(item, bool) or not isinstance(item, (int, np.integer)):
            raise IndexSubsetError(f"Components are addressed by label or integer index, got {item!r}.")
        if not 0 <= item < len(self.labels):
            raise IndexSubsetError(f"Index {item} is out of range for {len(self.labels)} components.")
        return int(item)

    def subset(self, items: Optional[ComponentSubset], *, allow_empty: bool, what: str) -> tuple[int, ...]:
        if items is None:
            items = ()
        elif isinstance(items, (str, int, np.integer)):
            items = (items,)
        resolved = tuple(self._resolve(i) for i in items)
        if len(set(resolved)) != len(resolved):
            raise IndexSubsetError(f"The {what} subset repeats a component.")
        if not resolved and not allow_empty:
            raise IndexSubsetError(f"The {what} subset must not be empty.")
        return resolved


def _logdet(cov: np.ndarray, block: Sequence[int]) -> float:
    if not block:
        return 0.0
    sub = cov[np.ix_(block, block)]
    sub = sub + _JITTER_SCALE * np.diag(np.diag(sub))
    factor, _ = cho_factor(sub, lower=True, check_finite=False)
    diagonal = np.diag(factor)
    if np.any(diagonal <= 0.0):
        raise LinAlgError("non-positive pivot")
    return 2.0 * float(np.sum(np.log(diagonal)))


def gaussian_mutual_information(
    g: GaussianVector,
    a: ComponentSubset,
    b: ComponentSubset,
    c: Optional[ComponentSubset] = None,
) -> float:
    """I(A;B|C) in bits for jointly Gaussian components, from log-determinants of covariance sub-blocks.

    Components whose variance does not exceed 1e-12 times the largest variance are constants and drop out.
    Every sub-block is factorized with 1e-12 times its own diagonal added, as if each component carried an
    independent noise 1e-12 of its variance. The law stays consistent across the four blocks and the result
    does not depend on the scale of any component; a duplicated component gives about 19.43 bits instead
    of diverging.

    Args:
        g (GaussianVector) : The joint Gaussian law.
        a, b (labels or indices) : Nonempty, disjoint component sets.
        c (labels or indices, optional) : Conditioning set, may be empty.

    Raises:
        IndexSubsetError : Subsets overlap, are empty, or name unknown components.
        SingularCovarianceError : A regularized sub-block still fails to factorize.
    """
    idx_a = g.subset(a, allow_empty=False, what="first")
    idx_b = g.subset(b, allow_empty=False, what="second")
    idx_c = g.subset(c, allow_empty=True, what="conditioning")
    if set(idx_a) & set(idx_b) or set(idx_a) & set(idx_c) or set(idx_b) & set(idx_c):
        raise IndexSubsetError("Subsets must be pairwise disjoint.")
    cov = g.cov
    max_diagonal = float(np.max(np.diag(cov)))
    if max_diagonal <= 0.0:
        return 0.0
    floor = _JITTER_SCALE * max_diagonal

    def random_part(indices: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(i for i in indices if cov[i, i] > floor)

    idx_a, idx_b, idx_c = random_part(idx_a), random_part(idx_b), random_part(idx_c)
    if not idx_a or not idx_b:
        return 0.0
    blocks = {
        "ac": idx_a + idx_c,
        "bc": idx_b + idx_c,
        "c": idx_c,
        "abc": idx_a + idx_b + idx_c,
    }
    logdets = dict[str, float]()
    for key in sorted(blocks, key=lambda k: len(blocks[k])):
        try:
            logdets[key] = _logdet(cov, blocks[key])
        except LinAlgError:
            raise SingularCovarianceError(tuple(g.labels[i] for i in blocks[key])) from None
    value = 0.5 * (logdets["ac"] + logdets["bc"] - logdets["c"] - logdets["abc"]) / _LN2
    if value < 0.0:
        if value < -_CLAMP_TOLERANCE:
            _log.warning("Gaussian mutual information %.3e is below the clamp tolerance.", value)
        value = 0.0
    return value
