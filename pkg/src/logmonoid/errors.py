"""Exception hierarchy.

Two families matter to callers (and to the CLI exit codes): malformed or
inconsistent input, and work that would exceed a configured budget.
"""


class MonoidError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(MonoidError, ValueError):
    """Input is malformed or violates a precondition."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DimensionError(ValidationError):
    """Exponents or matrices over mismatched generator sets."""


class InvalidMapError(ValidationError):
    """A monoid map does not respect the source relations."""


class InvalidPrimeError(ValidationError):
    """A generator subset is not the trace of a prime ideal."""


class NotIntegralError(ValidationError):
    """Saturation was requested on a non-integral presentation."""


class ContainmentError(ValidationError):
    """A linear map does not send one cone into another."""


class BudgetError(MonoidError):
    """A configured size cap was exceeded."""


class OracleTooLargeError(BudgetError):
    pass


class CombinatorialBlowupError(BudgetError):
    pass


class VolumeCapError(BudgetError):
    pass
