from typing import Optional

__all__ = [
    "RateRegionError",
    "IndexSubsetError",
    "SingularCovarianceError",
    "InfeasibleSplitError",
    "InternalConsistencyError",
    "FormError",
    "CapacityError",
    "SpecDocumentError",
]


class RateRegionError(Exception):
    """Base class of every error raised on purpose by this package."""


class IndexSubsetError(RateRegionError, ValueError):
    """An index subset is empty where it must not be, out of range, or overlaps another subset."""


class SingularCovarianceError(RateRegionError, ArithmeticError):
    """A covariance sub-block is not positive definite even after diagonal jitter.

    Attributes:
        block (tuple[str, ...]) : Labels of the offending sub-block.
    """
    block: tuple[str, ...]

    def __init__(self, block: tuple[str, ...]):
        self.block = tuple(block)
        super().__init__(f"Covariance sub-block ({', '.join(self.block)}) is singular after regularization.")


class InfeasibleSplitError(RateRegionError, ValueError):
    """A power split lies outside the feasible box of its channel configuration.

    Attributes:
        encoder (int) : The offending encoder, 1 or 2.
    """
    encoder: int

    def __init__(self, encoder: int, message: str):
        self.encoder = encoder
        super().__init__(f"Encoder {encoder}: {message}")


class InternalConsistencyError(RateRegionError, AssertionError):
    """An assembled object violates an invariant that holds by construction; indicates a coefficient bug."""


class FormError(RateRegionError, ValueError):
    """An operation for one channel form (t1 or t2) was given a channel of the other form."""


class CapacityError(RateRegionError, ValueError):
    """The product alphabet of a discrete evaluation exceeds the dense-storage limit."""


class SpecDocumentError(RateRegionError, ValueError):
    """A channel-spec JSON document is malformed.

    Attributes:
        pointer (str) : JSON pointer (RFC 6901) to the offending member, "" for the whole document.
    """
    pointer: str

    def __init__(self, pointer: Optional[str], message: str):
        self.pointer = pointer or ""
        super().__init__(f"{self.pointer or '/'}: {message}")
