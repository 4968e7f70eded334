"""Exception types raised across the package.

The CLI maps :class:`ValidationError` to exit code 1 and
:class:`NumericalError` to exit code 2.
"""


class LnSumError(Exception):
    """Base class. ``stage`` names the pipeline step that failed, if known."""

    def __init__(self, message, stage=None):
        super().__init__(message)
        self.stage = stage

    def __str__(self):
        msg = super().__str__()
        if self.stage:
            return f"[{self.stage}] {msg}"
        return msg


class ValidationError(LnSumError, ValueError):
    """Bad input: malformed problem, out-of-domain parameter, invalid covariance."""


class DomainError(ValidationError):
    """A parameter transform was evaluated outside its domain."""


class NotPositiveDefiniteError(ValidationError):
    """The underlying normal covariance matrix has a non-positive eigenvalue."""

    def __init__(self, message, min_eigenvalue, stage=None):
        super().__init__(message, stage)
        self.min_eigenvalue = min_eigenvalue


class CapacityError(ValidationError):
    """The quadrature enumeration would exceed the configured term budget."""


class NumericalError(LnSumError, ArithmeticError):
    """A numerical procedure broke down on otherwise valid input."""


class FactorizationError(NumericalError):
    def __init__(self, message, pivot, stage=None):
        super().__init__(message, stage)
        self.pivot = pivot


class SingularJacobianError(NumericalError):
    def __init__(self, message, iterate, stage=None):
        super().__init__(message, stage)
        self.iterate = iterate


class NonConvergenceError(NumericalError):
    def __init__(self, message, iterate, residual, stage=None):
        super().__init__(message, stage)
        self.iterate = iterate
        self.residual = residual


class OptimizationError(NumericalError):
    """Every candidate in a t-set search failed to solve."""
