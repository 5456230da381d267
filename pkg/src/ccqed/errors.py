"""Exception types shared across the package."""


class CCQEDError(Exception):
    """Base class for all package errors."""


class DomainError(CCQEDError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class ValidationError(CCQEDError, ValueError):
    """Input data violates a physical or schema invariant."""


class UsageError(CCQEDError, TypeError):
    """Operation called with an incompatible configuration."""


class NumericError(CCQEDError, ArithmeticError):
    """Numerical procedure failed to converge."""
