import math

import numpy as np
import pytest

from cribbing_mac_regions.region_geometry import (
    Halfspace,
    RateRegion,
    RateTriple,
    contains,
    emit_region_json,
    format_rate,
    from_points,
    from_triple,
    frontier_csv,
    hull_union,
    parse_region_json,
)


def test_pentagon_frontier():
    region = from_triple(RateTriple(1.0, 1.0, 1.5))
    assert region.frontier == ((0.0, 1.0), (0.5, 1.0), (1.0, 0.5), (1.0, 0.0))
    assert region.r1_max == 1.0
    assert region.r2_max == 1.0
    assert region.sum_max == pytest.approx(1.5)


def test_loose_sum_bound_gives_rectangle():
    region = from_triple(RateTriple(1.0, 1.0, 2.0))
    assert region.frontier == ((0.0, 1.0), (1.0, 1.0), (1.0, 0.0))
    assert {(h.a, h.b, h.c) for h in region.halfspaces} == {(1.0, 0.0, 1.0), (0.0, 1.0, 1.0)}


def test_tight_sum_bound_gives_triangle():
    region = from_triple(RateTriple(1.0, 1.0, 1.0))
    assert region.frontier == ((0.0, 1.0), (1.0, 0.0))
    assert Halfspace(1.0, 1.0, 1.0) in region.halfspaces


def test_zero_triple_is_the_origin():
    region = from_triple(RateTriple(0.0, 0.0, 0.0))
    assert region.frontier == ((0.0, 0.0),)
    assert region.support(0.5) == 0.0
    assert region.sample_frontier() == ((0.0, 0.0),)


def test_triple_clamps_small_negatives_only():
    assert RateTriple(-1e-13, 0.5, 0.5).r1_bound == 0.0
    assert RateTriple.clamped(-0.3, 0.2, 0.1).r1_bound == 0.0
    with pytest.raises(ValueError):
        RateTriple(-0.1, 0.0, 0.0)
    with pytest.raises(ValueError):
        RateTriple(math.nan, 0.0, 0.0)


@pytest.mark.parametrize(
    "weight, expected",
    [
        (1.0, 1.0),
        (0.0, 1.0),
        (0.5, 0.75),
        (0.75, 0.75 * 1.0 + 0.25 * 0.5),
    ],
)
def test_weighted_value_matches_support(weight, expected):
    triple = RateTriple(1.0, 1.0, 1.5)
    assert triple.weighted_value(weight) == pytest.approx(expected)
    assert from_triple(triple).support(weight) == pytest.approx(expected)


def test_support_accepts_weight_pairs():
    region = from_triple(RateTriple(1.0, 1.0, 1.5))
    assert region.support((1.0, 1.0)) == pytest.approx(1.5)
    with pytest.raises(ValueError):
        region.support((-1.0, 1.0))


def test_hull_of_points_drops_dominated_and_interior_points():
    region = from_points([(0.0, 2.0), (1.0, 1.0), (2.0, 0.0), (0.5, 0.5), (1.0, 0.2)])
    assert region.frontier == ((0.0, 2.0), (2.0, 0.0))
    assert region.sum_max == pytest.approx(2.0)


def test_hull_union_contains_members():
    a = from_triple(RateTriple(2.0, 0.5, 2.5))
    b = from_triple(RateTriple(0.5, 2.0, 2.5))
    union = hull_union([a, b])
    assert contains(union, a)
    assert contains(union, b)
    assert not contains(a, union)
    assert union.sum_max == pytest.approx(2.5)


def test_contains_respects_slack():
    outer = from_triple(RateTriple(1.0, 1.0, 1.0))
    inner = from_triple(RateTriple(1.0 + 1e-10, 0.0, 1.0 + 1e-10))
    assert not contains(outer, inner)
    assert contains(outer, inner, slack=1e-9)
    with pytest.raises(ValueError):
        contains(outer, inner, slack=-1.0)


def test_boundary_distance_along_axes_and_diagonal():
    region = from_triple(RateTriple(1.0, 1.0, 1.5))
    assert region.boundary_distance((1.0, 0.0)) == pytest.approx(1.0)
    assert region.boundary_distance((0.0, 1.0)) == pytest.approx(1.0)
    diagonal = (math.sqrt(0.5), math.sqrt(0.5))
    assert region.boundary_distance(diagonal) == pytest.approx(0.75 * math.sqrt(2.0))


def test_sample_frontier_keeps_corners_in_order():
    region = from_triple(RateTriple(1.0, 1.0, 1.5))
    samples = region.sample_frontier()
    assert samples[0] == (0.0, 1.0)
    assert (1.0, 0.0) in samples
    assert max(x for x, _ in samples) == pytest.approx(1.0)
    for corner in region.frontier:
        assert corner in samples
    assert all(a[0] <= b[0] for a, b in zip(samples, samples[1:]))
    for x, y in samples:
        assert all(h.excess(x, y) <= 1e-9 for h in region.halfspaces)


def test_region_rejects_dominated_frontier():
    with pytest.raises(ValueError):
        RateRegion(halfspaces=(), frontier=((0.0, 1.0), (1.0, 2.0)))
    with pytest.raises(ValueError):
        RateRegion(halfspaces=(), frontier=())
    with pytest.raises(ValueError):
        Halfspace(0.0, 0.0, 1.0)


def test_region_is_a_sequence_of_frontier_points():
    region = from_triple(RateTriple(1.0, 1.0, 1.5))
    assert len(region) == 4
    assert region[1] == (0.5, 1.0)
    assert list(region) == list(region.frontier)


def test_region_json_restores_the_region():
    region = from_triple(RateTriple(1.0, 0.75, 1.5))
    assert parse_region_json(emit_region_json(region)) == region


def test_frontier_csv_layout():
    text = frontier_csv([("a", [(0.0, 1.0), (1.0 / 3.0, 0.5)]), ("b", [(2.0, 0.0)])])
    assert text.splitlines() == [
        "scenario,r1,r2",
        "a,0,1",
        "a,0.333333333333,0.5",
        "b,2,0",
    ]
    assert format_rate(1.0 / 3.0) == "0.333333333333"


def _same_region(first, second):
    return contains(first, second, slack=1e-12) and contains(second, first, slack=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_hull_union_is_an_idempotent_commutative_monoid(seed):
    rng = np.random.default_rng(seed)
    regions = []
    for _ in range(3):
        r1, r2 = rng.uniform(0.1, 2.0, size=2)
        regions.append(from_triple(RateTriple(r1, r2, rng.uniform(max(r1, r2), r1 + r2))))
    a, b, c = regions
    assert _same_region(hull_union([a, b]), hull_union([b, a]))
    assert _same_region(hull_union([hull_union([a, b]), c]), hull_union([a, hull_union([b, c])]))
    assert _same_region(hull_union([a, a]), a)
    assert _same_region(hull_union([a]), a)
