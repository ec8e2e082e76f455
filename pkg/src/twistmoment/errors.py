"""Exception types raised across the package."""


class TwistMomentError(Exception):
    """Base class for all package errors."""


class DomainError(TwistMomentError, ValueError):
    """Argument outside the domain where a quantity is defined."""


class PoleError(DomainError):
    """Evaluation requested at a pole."""


class WeightNotAvailable(DomainError):
    """No construction is implemented for the requested weight."""


class ResourceError(TwistMomentError):
    """A table or buffer would exceed the configured budget."""


class TableTooSmall(ResourceError):
    """The eigenvalue table does not reach the index a computation needs."""

    def __init__(self, required: int, available: int):
        super().__init__(f"coefficient table holds {available} terms, {required} required")
        self.required = required
        self.available = available


class AccuracyError(TwistMomentError):
    """A numerical routine could not certify its requested tolerance."""

    def __init__(self, message: str, achieved: float | None = None):
        super().__init__(message)
        self.achieved = achieved


class OrderError(TwistMomentError):
    """Truncated series too short to close a computation."""


class IntegrityError(TwistMomentError):
    """Two independent routes disagreed beyond tolerance."""
