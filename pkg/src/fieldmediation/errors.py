"""Exception types raised across the package."""


class FieldMediationError(Exception):
    """Base class for all package errors."""


class ConfigError(FieldMediationError, ValueError):
    """Invalid configuration value, file, or resolution setting."""


class DomainError(FieldMediationError, ValueError):
    """Argument outside the domain of an operation."""


class InvariantViolation(FieldMediationError):
    """A physical or numerical invariant failed to hold."""

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        msg = f"invariant violated: {invariant}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class SingularityError(FieldMediationError, ArithmeticError):
    """Branch separation fell below the collision guard."""


class NumericError(FieldMediationError, ArithmeticError):
    """Numerical precondition failed (e.g. a matrix that should be unitary is not)."""
