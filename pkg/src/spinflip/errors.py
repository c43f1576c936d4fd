"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input is outside the mathematical domain of an operation."""


class OutOfRegimeError(DomainError):
    """Parameters violate a physical validity condition of a model
    (e.g. photon energy at or above the pair-breaking threshold)."""


class SingularityError(ArithmeticError):
    """A denominator came numerically too close to zero."""


class InternalConsistencyError(RuntimeError):
    """A computed quantity violated an internal sanity check."""


class BracketingError(ValueError):
    """A root finder was given an interval without a sign change."""


class ConvergenceError(RuntimeError):
    """Adaptive integration exhausted its subdivision budget.

    Carries the best available estimate and its error bound so callers can
    still inspect partial results.
    """

    def __init__(self, message, estimate=None, error_bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class DivergenceError(RuntimeError):
    """A semi-infinite integral showed no sign of converging."""


class ConfigError(ValueError):
    """A configuration file or override is malformed or inconsistent."""
