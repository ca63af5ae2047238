import math

import numpy as np
import pytest

from cribbing_mac_regions.errors import IndexSubsetError
from cribbing_mac_regions.info_core import (
    GaussianVector,
    JointPmf,
    conditional_mutual_information,
    entropy,
    gaussian_mutual_information,
    mutual_information,
)


def _xor_triple() -> JointPmf:
    """X, Z fair and independent, Y = X xor Z."""
    probs = np.zeros((2, 2, 2))
    for x in range(2):
        for z in range(2):
            probs[x, x ^ z, z] = 0.25
    return JointPmf((2, 2, 2), probs, ("X", "Y", "Z"))


def test_entropy_of_uniform_pmf():
    p = JointPmf((4,), np.full(4, 0.25))
    assert entropy(p, 0) == pytest.approx(2.0, abs=1e-12)


def test_entropy_ignores_zero_cells():
    p = JointPmf((3,), [0.5, 0.5, 0.0])
    assert entropy(p, [0]) == pytest.approx(1.0, abs=1e-12)


def test_mutual_information_of_copy():
    p = JointPmf((2, 2), [[0.5, 0.0], [0.0, 0.5]], ("X", "Y"))
    assert mutual_information(p, "X", "Y") == pytest.approx(1.0, abs=1e-12)
    assert mutual_information(p, 0, 1) == pytest.approx(1.0, abs=1e-12)


def test_conditioning_can_create_dependence():
    p = _xor_triple()
    assert mutual_information(p, "X", "Y") == pytest.approx(0.0, abs=1e-12)
    assert conditional_mutual_information(p, "X", "Y", "Z") == pytest.approx(1.0, abs=1e-12)


def test_chain_rule_on_random_pmf():
    rng = np.random.default_rng(7)
    p = JointPmf((2, 3, 2, 2), rng.dirichlet(np.ones(24)))
    mi = conditional_mutual_information
    assert mi(p, 0, (1, 2)) == pytest.approx(mi(p, 0, 2) + mi(p, 0, 1, 2), abs=1e-12)
    assert mi(p, 0, 1, (2, 3)) >= 0.0


def test_transposed_keeps_information():
    rng = np.random.default_rng(3)
    p = JointPmf((2, 3, 4), rng.dirichlet(np.ones(24)), ("A", "B", "C"))
    q = p.transposed((2, 0, 1))
    assert q.labels == ("C", "A", "B")
    assert conditional_mutual_information(q, "A", "B", "C") == pytest.approx(
        conditional_mutual_information(p, "A", "B", "C"), abs=1e-12
    )


@pytest.mark.parametrize(
    "a, b, c",
    [
        ((), 1, None),
        (0, 0, None),
        (0, 1, 0),
        (0, 5, None),
        ("X", "W", None),
    ],
)
def test_bad_subsets_are_rejected(a, b, c):
    p = _xor_triple()
    with pytest.raises(IndexSubsetError):
        conditional_mutual_information(p, a, b, c)


@pytest.mark.parametrize(
    "dims, probs",
    [
        ((2,), [0.5, 0.6]),
        ((2,), [1.5, -0.5]),
        ((3,), [0.5, 0.5]),
        ((0,), []),
    ],
)
def test_invalid_pmfs_are_rejected(dims, probs):
    with pytest.raises(ValueError):
        JointPmf(dims, probs)


def test_pmf_is_read_only():
    p = JointPmf((2,), [0.5, 0.5])
    with pytest.raises(ValueError):
        p.probs[0] = 1.0


def test_gaussian_channel_mutual_information():
    power, noise = 3.0, 1.0
    g = GaussianVector(("X", "Y"), [[power, power], [power, power + noise]])
    expected = 0.5 * math.log2(1.0 + power / noise)
    assert gaussian_mutual_information(g, "X", "Y") == pytest.approx(expected, abs=1e-10)


def test_gaussian_conditioning_removes_known_interference():
    # Y = X + S + Z; knowing S turns the channel into a clean AWGN channel
    cov = np.array(
        [
            [3.0, 0.0, 3.0],
            [0.0, 2.0, 2.0],
            [3.0, 2.0, 6.0],
        ]
    )
    g = GaussianVector(("X", "S", "Y"), cov)
    assert gaussian_mutual_information(g, "X", "Y") == pytest.approx(0.5 * math.log2(1.0 + 3.0 / 3.0), abs=1e-10)
    assert gaussian_mutual_information(g, "X", "Y", "S") == pytest.approx(0.5 * math.log2(4.0), abs=1e-10)


def test_gaussian_chain_rule_on_random_covariance():
    rng = np.random.default_rng(11)
    a = rng.normal(size=(5, 5))
    g = GaussianVector(tuple("ABCDE"), a @ a.T + 0.1 * np.eye(5))
    mi = gaussian_mutual_information
    assert mi(g, "A", ("B", "C")) == pytest.approx(mi(g, "A", "C") + mi(g, "A", "B", "C"), abs=1e-10)
    assert mi(g, (0, 1), (2, 3), 4) == pytest.approx(mi(g, ("A", "B"), ("C", "D"), "E"), abs=1e-12)


def test_constant_components_carry_no_information():
    g = GaussianVector(("X", "K", "Y"), np.diag([1.0, 0.0, 2.0]) + np.array([[0, 0, 1], [0, 0, 0], [1, 0, 0]]))
    assert gaussian_mutual_information(g, "K", "Y") == 0.0
    assert gaussian_mutual_information(g, "X", "Y", "K") == pytest.approx(gaussian_mutual_information(g, "X", "Y"))


def test_gaussian_overlap_is_rejected():
    g = GaussianVector(("X", "Y"), np.eye(2))
    with pytest.raises(IndexSubsetError):
        gaussian_mutual_information(g, "X", "X")
    with pytest.raises(IndexSubsetError):
        gaussian_mutual_information(g, "X", "Q")


@pytest.mark.parametrize(
    "cov",
    [
        [[1.0, 0.5], [0.0, 1.0]],
        [[1.0, 2.0], [2.0, 1.0]],
        [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    ],
)
def test_invalid_covariances_are_rejected(cov):
    with pytest.raises(ValueError):
        GaussianVector(("X", "Y"), cov)


def test_duplicated_component_is_capped():
    eps = 1e-12
    cap = 0.5 * math.log2((1.0 + eps) ** 2 / (2.0 * eps + eps**2))
    twin = GaussianVector(("X", "Y"), [[1.0, 1.0], [1.0, 1.0]])
    assert gaussian_mutual_information(twin, "X", "Y") == pytest.approx(cap, abs=1e-3)
    near = GaussianVector(("X", "Y"), [[1.0, 1.0 - 1e-15], [1.0 - 1e-15, 1.0]])
    value = gaussian_mutual_information(near, "X", "Y")
    assert value <= cap + 1e-3
    assert value <= -0.5 * math.log2(eps)
    loud = GaussianVector(("X", "Y"), [[50.0, 50.0], [50.0, 50.0]])
    assert gaussian_mutual_information(loud, "X", "Y") == pytest.approx(cap, abs=1e-3)


def test_gaussian_channel_over_random_snr():
    rng = np.random.default_rng(5)
    for power, noise in rng.uniform(0.1, 10.0, size=(100, 2)):
        g = GaussianVector(("X", "Y"), [[power, power], [power, power + noise]])
        expected = 0.5 * math.log2(1.0 + power / noise)
        assert gaussian_mutual_information(g, "X", "Y") == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("seed", range(3))
def test_gaussian_information_ignores_component_order(seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(5, 5))
    cov = a @ a.T + 0.1 * np.eye(5)
    labels = tuple("ABCDE")
    order = rng.permutation(5)
    g = GaussianVector(labels, cov)
    shuffled = GaussianVector(tuple(labels[i] for i in order), cov[np.ix_(order, order)])
    mi = gaussian_mutual_information
    assert mi(shuffled, ("A", "B"), "C", ("D", "E")) == pytest.approx(mi(g, ("A", "B"), "C", ("D", "E")), abs=1e-9)
    assert mi(shuffled, "E", ("A", "D")) == pytest.approx(mi(g, "E", ("A", "D")), abs=1e-9)
