"""Exception hierarchy shared by every module."""


class BernoulliMeasureError(Exception):
    """Base class for domain errors raised by this package."""


class MomentOrderError(BernoulliMeasureError, ValueError):
    """A moment table is too short for the requested polynomial."""

    def __init__(self, required: int, available: int):
        self.required = required
        self.available = available
        super().__init__(
            f"polynomial needs moments up to order {required}, "
            f"table only holds orders 0..{available - 1}"
        )


class SingularParameterError(BernoulliMeasureError, ValueError):
    """The requested formula has a pole at this parameter value."""


class DomainError(BernoulliMeasureError, ValueError):
    """An argument lies outside the region where a series or formula is valid."""


class ConditioningError(BernoulliMeasureError, ArithmeticError):
    """A denominator is too close to zero for a trustworthy result."""


class ResourceError(BernoulliMeasureError, ValueError):
    """A requested computation would exceed the supported cost budget."""
