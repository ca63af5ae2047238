import numpy as np

from cribbing_mac_regions.gaussian_scheme import GaussianMacConfig, PowerSplit

__all__ = [
    "random_draw",
    "random_draws",
]


def random_draw(rng: np.random.Generator) -> tuple[GaussianMacConfig, PowerSplit]:
    """One valid (configuration, split) pair for property sweeps.

    Powers are drawn from [0, 10], state variances from [0, 5] and the noise variance from [0.1, 5];
    each eta is uniform over its feasible interval and each alpha over [0, 1].
    """
    p1, p2 = rng.uniform(0.0, 10.0, size=2)
    q0, q1, q2 = rng.uniform(0.0, 5.0, size=3)
    n = rng.uniform(0.1, 5.0)
    cfg = GaussianMacConfig(p1=float(p1), p2=float(p2), q0=float(q0), q1=float(q1), q2=float(q2), n=float(n))
    eta1 = rng.uniform(cfg.eta_lower_bound(1), 1.0)
    eta2 = rng.uniform(cfg.eta_lower_bound(2), 1.0)
    alpha1, alpha2 = rng.uniform(0.0, 1.0, size=2)
    split = PowerSplit(eta1=float(eta1), eta2=float(eta2), alpha1=float(alpha1), alpha2=float(alpha2))
    return cfg, split


def random_draws(count: int, seed: int) -> list[tuple[GaussianMacConfig, PowerSplit]]:
    """``count`` draws from a generator seeded with ``seed``; the same seed gives the same list."""
    if count < 0:
        raise ValueError("The draw count must be nonnegative.")
    rng = np.random.default_rng(seed)
    return [random_draw(rng) for _ in range(count)]
