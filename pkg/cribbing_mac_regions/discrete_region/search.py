import itertools
import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass
from typing import Callable, Final, Optional

import numpy as np

from cribbing_mac_regions.discrete_region.bounds import compose_arrays, joint_bounds
from cribbing_mac_regions.discrete_region.sampling import default_aux_sizes, random_factor_arrays
from cribbing_mac_regions.discrete_region.data_model import (
    JOINT_LABELS,
    MAX_CELLS,
    DiscreteChannelSpec,
    RateTriple,
)
from cribbing_mac_regions.errors import CapacityError
from cribbing_mac_regions.info_core import JointPmf
from cribbing_mac_regions.misc.progress import SweepProgress
from cribbing_mac_regions.region_geometry import RateRegion, from_points, from_triple

__all__ = [
    "REFINE_DIRECTIONS",
    "REFINE_ROUNDS",
    "REFINE_EVALUATIONS",
    "default_aux_sizes",
    "search_region",
]

_log = logging.getLogger(__name__)

REFINE_DIRECTIONS: Final = (0.5, 1.0, 0.0, 0.75, 0.25)
"""Weight on R1 in the objective of successive restarts; the structured start is refined once in each."""

REFINE_ROUNDS: Final = 20
REFINE_EVALUATIONS: Final = 500
"""Evaluations one refinement may spend before the next restart begins."""
_INITIAL_STEP = 0.25
_IMPROVEMENT = 1e-12


@dataclass
class _Factors:
    p_u: np.ndarray
    p_x1v1: np.ndarray
    p_x2v2: np.ndarray

    def copy(self) -> "_Factors":
        return _Factors(self.p_u.copy(), self.p_x1v1.copy(), self.p_x2v2.copy())

    def rows(self) -> Iterator[np.ndarray]:
        """Writable views of every conditional row, in a fixed order."""
        yield from self.p_u.reshape(-1, self.p_u.shape[-1])
        for factor in (self.p_x1v1, self.p_x2v2):
            yield from factor.reshape(-1, factor.shape[-2] * factor.shape[-1])


def _structured_start(spec: DiscreteChannelSpec, sizes: tuple[int, int, int]) -> _Factors:
    """U uniform, inputs uniform and independent of everything, Vi indexing (Xi, S0, Si)."""
    u, v1, v2 = sizes
    p_u = np.full((spec.s0, u), 1.0 / u)

    def encoder(x: int, s: int, v: int) -> np.ndarray:
        factor = np.zeros((u, spec.s0, s, x, v))
        for s0 in range(spec.s0):
            for si in range(s):
                for xi in range(x):
                    factor[:, s0, si, xi, ((xi * spec.s0 + s0) * s + si) % v] += 1.0 / x
        return factor

    return _Factors(p_u, encoder(spec.x1, spec.s1, v1), encoder(spec.x2, spec.s2, v2))


def _dirichlet_start(spec: DiscreteChannelSpec, sizes: tuple[int, int, int], rng: np.random.Generator) -> _Factors:
    return _Factors(*random_factor_arrays(spec, sizes, rng))


class _BudgetExhausted(Exception):
    pass


class _Evaluator:
    """Evaluates factorizations against the budget and keeps the corner points of every pentagon."""
    _spec: DiscreteChannelSpec
    _budget: int
    _used: int
    _points: list[tuple[float, float]]
    _progress: SweepProgress

    def __init__(self, spec: DiscreteChannelSpec, budget: int, progress: SweepProgress):
        self._spec = spec
        self._budget = budget
        self._used = 0
        self._points = list[tuple[float, float]]()
        self._progress = progress

    @property
    def used(self) -> int:
        return self._used

    @property
    def points(self) -> list[tuple[float, float]]:
        return self._points

    def __call__(self, factors: _Factors) -> RateTriple:
        if self._used >= self._budget:
            raise _BudgetExhausted()
        probs = compose_arrays(self._spec, factors.p_u, factors.p_x1v1, factors.p_x2v2)
        triple = joint_bounds(JointPmf(probs.shape, probs, JOINT_LABELS), self._spec.form)
        self._used += 1
        self._points.extend(from_triple(triple).frontier)
        self._progress(self._used)
        return triple


def _refine(evaluate: _Evaluator, start: _Factors, start_triple: RateTriple, weight: float):
    """Coordinate ascent by pairwise mass moves inside each row, halving the step every round.

    Stops after ``REFINE_ROUNDS`` rounds or ``REFINE_EVALUATIONS`` evaluations, whichever comes first.
    """
    current = start.copy()
    best = start_triple.weighted_value(weight)
    step = _INITIAL_STEP
    spent = 0
    for _ in range(REFINE_ROUNDS):
        for row in current.rows():
            for i, j in itertools.permutations(range(row.size), 2):
                if row[i] <= 0.0:
                    continue
                if spent >= REFINE_EVALUATIONS:
                    return
                spent += 1
                old_i, old_j = float(row[i]), float(row[j])
                moved = min(step, old_i)
                row[i] = old_i - moved if moved < old_i else 0.0
                row[j] = old_j + moved
                value = evaluate(current).weighted_value(weight)
                if value > best + _IMPROVEMENT:
                    best = value
                else:
                    row[i], row[j] = old_i, old_j
        step *= 0.5


def search_region(
    spec: DiscreteChannelSpec,
    budget: int,
    seed: int,
    *,
    aux_sizes: Optional[tuple[int, int, int]] = None,
    print_func: Optional[Callable[[str], None]] = None,
) -> RateRegion:
    """Inner bound of the achievable region: the convex hull of the pentagons of searched factorizations.

    The evaluation stream is fixed by ``seed``: first the structured factorization, refined once toward each
    of the weights in ``REFINE_DIRECTIONS``, then symmetric Dirichlet(1) draws, each refined toward the next
    weight of the cycle. Each refinement spends at most ``REFINE_EVALUATIONS`` evaluations, so random
    restarts begin after a fixed share of the stream. The stream is cut after ``budget`` evaluations, so a
    larger budget never yields a smaller region.

    Args:
        spec (DiscreteChannelSpec) : The channel; its form selects the t1 or t2 bounds.
        budget (int) : Number of joint pmf evaluations, at least 1.
        seed (int) : Seed of the generator of the random restarts.
        aux_sizes (tuple[int, int, int], optional) : (|U|, |V1|, |V2|); see ``default_aux_sizes``.
        print_func (Callable[[str], None], optional) : Receives progress lines.

    Raises:
        CapacityError : The product alphabet of the joint pmf exceeds one million cells.
    """
    if not isinstance(spec, DiscreteChannelSpec):
        raise TypeError("spec must be a DiscreteChannelSpec.")
    if isinstance(budget, bool) or not isinstance(budget, int) or budget < 1:
        raise ValueError(f"The budget must be a positive integer, got {budget!r}.")
    sizes = default_aux_sizes(spec) if aux_sizes is None else tuple(aux_sizes)
    if len(sizes) != 3 or any(isinstance(n, bool) or not isinstance(n, int) or n < 1 for n in sizes):
        raise ValueError(f"aux_sizes must be three positive integers, got {aux_sizes!r}.")
    cells = math.prod((spec.s0, spec.s1, spec.s2) + sizes + (spec.x1, spec.x2, spec.y))
    if cells > MAX_CELLS:
        raise CapacityError(
            f"The joint pmf would have {cells} cells, over the limit of {MAX_CELLS}; "
            "use smaller auxiliary alphabets (aux_sizes)."
        )
    rng = np.random.default_rng(seed)
    evaluate = _Evaluator(spec, budget, SweepProgress(budget, print_func))
    try:
        start = _structured_start(spec, sizes)
        start_triple = evaluate(start)
        for restart in itertools.count():
            weight = REFINE_DIRECTIONS[restart % len(REFINE_DIRECTIONS)]
            if restart < len(REFINE_DIRECTIONS):
                origin, origin_triple = start, start_triple
            else:
                origin = _dirichlet_start(spec, sizes, rng)
                origin_triple = evaluate(origin)
            _refine(evaluate, origin, origin_triple, weight)
    except _BudgetExhausted:
        pass
    _log.debug("Searched %d factorizations with aux sizes %s over %d cells.", evaluate.used, sizes, cells)
    return from_points(evaluate.points)
