import dataclasses
import enum
import math
from dataclasses import dataclass
from typing import ClassVar, Final

__all__ = [
    "GaussianMacConfig",
    "PowerSplit",
    "SchemeCoefficients",
    "ScenarioId",
    "SCENARIO_ORDER",
]


def _check_real(owner: object, name: str) -> float:
    value = getattr(owner, name)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise TypeError(f"The '{name}' attribute must be a real number.")
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"The '{name}' attribute must be finite.")
    object.__setattr__(owner, name, value)
    return value


@dataclass(frozen=True)
class GaussianMacConfig:
    """Gaussian MAC with three independent states, Y = X1 + X2 + S0 + S1 + S2 + Z.

    Attributes:
        p1, p2 (float) : Transmit power constraints.
        q0, q1, q2 (float) : Variances of the common state S0 and the private states S1, S2.
        n (float) : Noise variance, strictly positive.
    """
    p1: float
    p2: float
    q0: float
    q1: float
    q2: float
    n: float

    def __post_init__(self):
        for name in ("p1", "p2", "q0", "q1", "q2", "n"):
            if _check_real(self, name) < 0.0:
                raise ValueError(f"The '{name}' attribute must be nonnegative.")
        if self.n <= 0.0:
            raise ValueError("The noise variance 'n' must be strictly positive.")

    @classmethod
    def reference_default(cls) -> "GaussianMacConfig":
        """P1 = P2 = 3 with unit state and noise variances."""
        return cls(p1=3.0, p2=3.0, q0=1.0, q1=1.0, q2=1.0, n=1.0)

    def power(self, encoder: int) -> float:
        return (self.p1, self.p2)[_encoder_slot(encoder)]

    def state_variance(self, encoder: int) -> float:
        return (self.q1, self.q2)[_encoder_slot(encoder)]

    def eta_lower_bound(self, encoder: int) -> float:
        """Smallest feasible eta: 1 - min{1, Q/P}, and exactly 1 when P = 0 or Q = 0."""
        p, q = self.power(encoder), self.state_variance(encoder)
        if p <= 0.0 or q <= 0.0:
            return 1.0
        return 1.0 - min(1.0, q / p)

    @property
    def total_state_noise(self) -> float:
        """N + Q0 + Q1 + Q2, the effective noise of encoders that ignore the states."""
        return self.n + self.q0 + self.q1 + self.q2

    def swapped(self) -> "GaussianMacConfig":
        return dataclasses.replace(self, p1=self.p2, p2=self.p1, q1=self.q2, q2=self.q1)


@dataclass(frozen=True)
class PowerSplit:
    """The four scheme parameters of the generalized DPC construction.

    Attributes:
        eta1, eta2 (float) : Fraction of power kept for coding; 1 - eta goes to cleaning the private state.
        alpha1, alpha2 (float) : Fraction of the kept power put on the common codeword.
    """
    eta1: float
    eta2: float
    alpha1: float
    alpha2: float

    def __post_init__(self):
        for name in ("eta1", "eta2", "alpha1", "alpha2"):
            value = _check_real(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"The '{name}' attribute must lie in [0, 1], got {value!r}.")

    def eta(self, encoder: int) -> float:
        return (self.eta1, self.eta2)[_encoder_slot(encoder)]

    def alpha(self, encoder: int) -> float:
        return (self.alpha1, self.alpha2)[_encoder_slot(encoder)]

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.eta1, self.eta2, self.alpha1, self.alpha2)

    def swapped(self) -> "PowerSplit":
        return PowerSplit(eta1=self.eta2, eta2=self.eta1, alpha1=self.alpha2, alpha2=self.alpha1)


@dataclass(frozen=True)
class SchemeCoefficients:
    """Quantities derived from a configuration and a split.

    Attributes:
        gamma0 (float) : Inflation of S0 in the common auxiliary U.
        gamma01, gamma02 (float) : Inflation of S0 in the private auxiliaries V1, V2.
        gamma1, gamma2 (float) : Inflation of the residual private states in V1, V2.
        q1p, q2p (float) : Residual state variances after cleaning.
        clean1, clean2 (float) : Cleaning gains sqrt(eta_bar * P / Q); 0 when nothing is cleaned.
    """
    gamma0: float
    gamma01: float
    gamma02: float
    gamma1: float
    gamma2: float
    q1p: float
    q2p: float
    clean1: float = 0.0
    clean2: float = 0.0

    _GAMMAS: ClassVar[tuple[str, ...]] = ("gamma0", "gamma01", "gamma02", "gamma1", "gamma2")

    def __post_init__(self):
        for f in dataclasses.fields(self):
            _check_real(self, f.name)
        if self.q1p < 0.0 or self.q2p < 0.0:
            raise ValueError("Residual state variances must be nonnegative.")

    def gamma0i(self, encoder: int) -> float:
        return (self.gamma01, self.gamma02)[_encoder_slot(encoder)]

    def gammai(self, encoder: int) -> float:
        return (self.gamma1, self.gamma2)[_encoder_slot(encoder)]

    def residual(self, encoder: int) -> float:
        return (self.q1p, self.q2p)[_encoder_slot(encoder)]

    def clean(self, encoder: int) -> float:
        return (self.clean1, self.clean2)[_encoder_slot(encoder)]

    def perturbed(self, delta: float, which: str = "gamma0", *, relative: bool = False) -> "SchemeCoefficients":
        """Copy with one inflation coefficient moved by ``delta`` (absolute, or relative to its value)."""
        if which not in self._GAMMAS:
            raise ValueError(f"Only {self._GAMMAS} can be perturbed, got {which!r}.")
        value = getattr(self, which)
        moved = value * (1.0 + delta) if relative else value + delta
        return dataclasses.replace(self, **{which: moved})


class ScenarioId(enum.Enum):
    UNINFORMED_SELFISH = "uninformed-selfish"
    UNINFORMED_COOPERATING = "uninformed-cooperating"
    INFORMED_DPC_ONLY = "informed-dpc-only"
    INFORMED_DPC_CLEANING = "informed-dpc-cleaning"
    NO_STATE_CAPACITY = "no-state-capacity"

    @property
    def tag(self) -> str:
        return self.value


SCENARIO_ORDER: Final[tuple[ScenarioId, ...]] = tuple(ScenarioId)


def _encoder_slot(encoder: int) -> int:
    if encoder not in (1, 2):
        raise ValueError(f"Encoder must be 1 or 2, got {encoder!r}.")
    return encoder - 1
