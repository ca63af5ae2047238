import numpy as np
import pytest

from cribbing_mac_regions.discrete_region import DiscreteChannelSpec
from cribbing_mac_regions.gaussian_scheme import GaussianMacConfig


def deterministic_channel(function, x1: int, x2: int, y: int, crossover: float = 0.0) -> DiscreteChannelSpec:
    """Stateless channel Y = function(x1, x2), flipped to the next symbol with probability ``crossover``."""
    transition = np.zeros((x1, x2, y))
    for a in range(x1):
        for b in range(x2):
            out = function(a, b)
            transition[a, b, out] += 1.0 - crossover
            transition[a, b, (out + 1) % y] += crossover
    return DiscreteChannelSpec.without_states(transition, x1, x2, y)


@pytest.fixture
def reference_config() -> GaussianMacConfig:
    return GaussianMacConfig.reference_default()


@pytest.fixture
def noiseless_pair() -> DiscreteChannelSpec:
    return deterministic_channel(lambda a, b: 2 * a + b, 2, 2, 4)


@pytest.fixture
def xor_channel() -> DiscreteChannelSpec:
    return deterministic_channel(lambda a, b: a ^ b, 2, 2, 2)


@pytest.fixture
def or_channel() -> DiscreteChannelSpec:
    return deterministic_channel(lambda a, b: a | b, 2, 2, 2)


@pytest.fixture
def noisy_xor_channel() -> DiscreteChannelSpec:
    return deterministic_channel(lambda a, b: a ^ b, 2, 2, 2, crossover=0.1)


@pytest.fixture
def make_channel():
    return deterministic_channel
