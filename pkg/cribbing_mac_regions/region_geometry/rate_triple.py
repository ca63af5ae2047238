from dataclasses import dataclass

__all__ = [
    "RateTriple",
]

_CLAMP_TOLERANCE = 1e-12


@dataclass(frozen=True)
class RateTriple:
    """The three bounds of one achievable pentagon, in bits per channel use.

    Attributes:
        r1_bound (float) : Bound on R1.
        r2_bound (float) : Bound on R2.
        sum_bound (float) : Bound on R1 + R2.
    """
    r1_bound: float
    r2_bound: float
    sum_bound: float

    def __post_init__(self):
        for name in ("r1_bound", "r2_bound", "sum_bound"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)):
                raise TypeError(f"The '{name}' attribute must be a real number.")
            value = float(value)
            if value != value:
                raise ValueError(f"The '{name}' attribute is NaN.")
            if value < -_CLAMP_TOLERANCE:
                raise ValueError(f"The '{name}' attribute must be nonnegative, got {value!r}.")
            object.__setattr__(self, name, max(value, 0.0))

    @classmethod
    def clamped(cls, r1_bound: float, r2_bound: float, sum_bound: float) -> "RateTriple":
        """Builds a triple from raw mutual-information differences, clamping negatives to 0."""
        return cls(max(float(r1_bound), 0.0), max(float(r2_bound), 0.0), max(float(sum_bound), 0.0))

    def weighted_value(self, weight: float) -> float:
        """Best value of ``weight*R1 + (1-weight)*R2`` over the pentagon, with ``weight`` in [0, 1]."""
        if weight >= 0.5:
            first = min(self.r1_bound, self.sum_bound)
            second = min(self.r2_bound, self.sum_bound - first)
            return weight * first + (1.0 - weight) * max(second, 0.0)
        second = min(self.r2_bound, self.sum_bound)
        first = min(self.r1_bound, self.sum_bound - second)
        return weight * max(first, 0.0) + (1.0 - weight) * second
