"""Exception types shared across the package."""


class CasimirMetalError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CasimirMetalError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class TableValidationError(CasimirMetalError, ValueError):
    """Tabulated permittivity data failed validation."""


class ConvergenceError(CasimirMetalError, RuntimeError):
    """Adaptive quadrature exhausted its subdivision budget.

    Carries the best estimate obtained so far in ``estimate``.
    """

    def __init__(self, message, estimate):
        super().__init__(message)
        self.estimate = estimate
