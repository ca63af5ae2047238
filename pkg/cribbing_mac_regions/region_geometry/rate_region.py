import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Union, overload

import numpy as np

from cribbing_mac_regions.region_geometry.rate_triple import RateTriple

__all__ = [
    "Halfspace",
    "RateRegion",
    "from_points",
    "from_triple",
    "hull_union",
    "contains",
]

_FEASIBILITY_TOLERANCE = 1e-9
_FRONTIER_SAMPLES = 201

Point = tuple[float, float]


@dataclass(frozen=True)
class Halfspace:
    """The constraint ``a*R1 + b*R2 <= c`` with nonnegative normal, scaled so that max(a, b) = 1."""
    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            if not isinstance(getattr(self, name), (int, float)):
                raise TypeError(f"The '{name}' attribute must be a real number.")
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.a < 0.0 or self.b < 0.0 or (self.a == 0.0 and self.b == 0.0):
            raise ValueError(f"Halfspace normal ({self.a}, {self.b}) must be nonnegative and nonzero.")

    def excess(self, r1: float, r2: float) -> float:
        """How far the point lies outside the halfspace; nonpositive when inside."""
        return self.a * r1 + self.b * r2 - self.c


@dataclass(frozen=True)
class RateRegion(Sequence[Point]):
    """A down-closed convex region of the (R1, R2) plane, also usable as the sequence of its frontier points.

    Attributes:
        halfspaces (tuple[Halfspace, ...]) : Facets of the region, besides R1 >= 0 and R2 >= 0.
        frontier (tuple[Point, ...]) : Polygon vertices other than the origin, from (0, R2max) to (R1max, 0).
            The region {(0, 0)} has the single frontier point (0, 0).
    """
    halfspaces: tuple[Halfspace, ...]
    frontier: tuple[Point, ...]

    def __post_init__(self):
        halfspaces = tuple(self.halfspaces)
        frontier = tuple((float(x), float(y)) for x, y in self.frontier)
        if not frontier:
            raise ValueError("A rate region needs at least one frontier point.")
        if any(x < 0.0 or y < 0.0 for x, y in frontier):
            raise ValueError("Frontier points must lie in the nonnegative quadrant.")
        if any(x1 > x2 for (x1, _), (x2, _) in zip(frontier, frontier[1:])):
            raise ValueError("Frontier points must be sorted by R1 ascending.")
        for x, y in frontier:
            for h in halfspaces:
                if h.excess(x, y) > _FEASIBILITY_TOLERANCE:
                    raise ValueError(f"Frontier point ({x}, {y}) violates {h}.")
        for i, (x1, y1) in enumerate(frontier):
            for x2, y2 in frontier[i + 1:]:
                if (x1 > x2 and y1 > y2) or (x2 > x1 and y2 > y1):
                    raise ValueError(f"Frontier points ({x1}, {y1}) and ({x2}, {y2}) dominate one another.")
        object.__setattr__(self, "halfspaces", halfspaces)
        object.__setattr__(self, "frontier", frontier)

    def __len__(self) -> int:
        return len(self.frontier)

    @overload
    def __getitem__(self, index: int) -> Point: ...

    @overload
    def __getitem__(self, index: slice) -> tuple[Point, ...]: ...

    def __getitem__(self, index: Union[int, slice]) -> Union[Point, tuple[Point, ...]]:
        return self.frontier[index]

    @property
    def r1_max(self) -> float:
        return max(x for x, _ in self.frontier)

    @property
    def r2_max(self) -> float:
        return max(y for _, y in self.frontier)

    @property
    def sum_max(self) -> float:
        return max(x + y for x, y in self.frontier)

    def support(self, weight: Union[float, tuple[float, float]]) -> float:
        """Largest value of ``w1*R1 + w2*R2`` over the region.

        Args:
            weight (float | tuple[float, float]) : Either the pair (w1, w2) with nonnegative entries,
                or a scalar mu in [0, 1] standing for (mu, 1 - mu).
        """
        if isinstance(weight, tuple):
            w1, w2 = weight
        else:
            w1, w2 = float(weight), 1.0 - float(weight)
        if w1 < 0.0 or w2 < 0.0:
            raise ValueError(f"Support weights must be nonnegative, got ({w1}, {w2}).")
        return max(0.0, max(w1 * x + w2 * y for x, y in self.frontier))

    def boundary_distance(self, direction: Point) -> float:
        """Length of the ray from the origin along ``direction`` (a unit vector) inside the region."""
        d1, d2 = direction
        limit = math.inf
        for h in self.halfspaces:
            rate = h.a * d1 + h.b * d2
            if rate > 0.0:
                limit = min(limit, h.c / rate)
        return 0.0 if math.isinf(limit) else max(limit, 0.0)

    def sample_frontier(self, count: int = _FRONTIER_SAMPLES) -> tuple[Point, ...]:
        """Boundary points along ``count`` rays at uniform angles, merged with the exact corners.

        Points are ordered by R1 ascending, then R2 descending.
        """
        if count < 2:
            raise ValueError("At least two rays are needed to sample a frontier.")
        if self.frontier == ((0.0, 0.0),):
            return self.frontier
        points = list[Point](self.frontier)
        for k in range(count):
            theta = 0.5 * math.pi * k / (count - 1)
            direction = (math.cos(theta), math.sin(theta))
            if k == 0:
                direction = (1.0, 0.0)
            elif k == count - 1:
                direction = (0.0, 1.0)
            t = self.boundary_distance(direction)
            points.append((t * direction[0], t * direction[1]))
        points.sort(key=lambda p: (p[0], -p[1]))
        merged = list[Point]()
        for p in points:
            if merged and abs(p[0] - merged[-1][0]) <= 1e-12 and abs(p[1] - merged[-1][1]) <= 1e-12:
                continue
            merged.append(p)
        return tuple(merged)


def _cross(o: Point, p: Point, q: Point) -> float:
    return (p[0] - o[0]) * (q[1] - o[1]) - (q[0] - o[0]) * (p[1] - o[1])


def _upper_hull(points: Iterable[Point]) -> list[Point]:
    upper = list[Point]()
    for p in sorted(set(points)):
        while len(upper) > 1 and _cross(upper[-2], upper[-1], p) >= 0.0:
            upper.pop()
        upper.append(p)
    return upper


def _facets(frontier: Sequence[Point]) -> tuple[Halfspace, ...]:
    x_max = max(x for x, _ in frontier)
    y_max = max(y for _, y in frontier)
    facets = list[Halfspace]()
    seen = set[tuple[float, float]]()
    for (x0, y0), (x1, y1) in zip(frontier, frontier[1:]):
        a, b = y0 - y1, x1 - x0
        scale = max(a, b)
        if scale <= 0.0:
            continue
        a, b = a / scale, b / scale
        if (a, b) in seen:
            continue
        seen.add((a, b))
        facets.append(Halfspace(a, b, max(a * x0 + b * y0, 0.0)))
    if (1.0, 0.0) not in seen:
        facets.append(Halfspace(1.0, 0.0, x_max))
    if (0.0, 1.0) not in seen:
        facets.append(Halfspace(0.0, 1.0, y_max))
    return tuple(facets)


def from_points(points: Iterable[Point]) -> RateRegion:
    """Down-closed convex hull of a set of achievable rate pairs (the origin always included)."""
    cloud = list[Point]()
    for x, y in points:
        x, y = float(x), float(y)
        if not (np.isfinite(x) and np.isfinite(y)):
            raise ValueError(f"Rate pair ({x}, {y}) is not finite.")
        cloud.append((max(x, 0.0), max(y, 0.0)))
    if not cloud:
        raise ValueError("At least one point is needed.")
    x_max = max(x for x, _ in cloud)
    y_max = max(y for _, y in cloud)
    if x_max <= 0.0 and y_max <= 0.0:
        return RateRegion(halfspaces=(Halfspace(1.0, 0.0, 0.0), Halfspace(0.0, 1.0, 0.0)), frontier=((0.0, 0.0),))
    cloud.extend([(0.0, 0.0), (0.0, y_max), (x_max, 0.0)])
    frontier = [p for p in _upper_hull(cloud) if p != (0.0, 0.0)]
    if x_max > 0.0 and frontier[-1][1] > 0.0:
        frontier.append((x_max, 0.0))
    return RateRegion(halfspaces=_facets(frontier), frontier=tuple(frontier))


def from_triple(t: RateTriple) -> RateRegion:
    """The pentagon {R1 <= r1, R2 <= r2, R1 + R2 <= s, R >= 0} of one rate triple."""
    if not isinstance(t, RateTriple):
        raise TypeError("from_triple expects a RateTriple.")
    s = t.sum_bound
    r1 = min(t.r1_bound, s)
    r2 = min(t.r2_bound, s)
    corners = [
        (0.0, r2),
        (min(r1, s - r2), r2),
        (r1, min(r2, s - r1)),
        (r1, 0.0),
    ]
    return from_points(corners)


def hull_union(regions: Sequence[RateRegion]) -> RateRegion:
    """Convex hull of the union of ``regions``; it contains each of them."""
    regions = list(regions)
    if not regions:
        raise ValueError("hull_union needs at least one region.")
    return from_points(p for region in regions for p in region.frontier)


def contains(outer: RateRegion, inner: RateRegion, slack: float = 0.0) -> bool:
    """True iff every frontier point of ``inner`` satisfies every halfspace of ``outer`` within ``slack``."""
    if slack < 0.0:
        raise ValueError("Slack must be nonnegative.")
    return all(h.excess(x, y) <= slack for h in outer.halfspaces for x, y in inner.frontier)
