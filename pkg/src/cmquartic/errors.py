"""Exception hierarchy shared by every module.

Exit-code contract of the CLI: DomainError family -> 2,
ConsistencyError -> 3, verification mismatch -> 1.
"""

from __future__ import annotations


class CMQuarticError(Exception):
    """Base class for all package errors."""


class DomainError(CMQuarticError, ValueError):
    """An input violates a documented precondition."""

    def __init__(self, message: str, code: str = "E_DOMAIN", precondition: str | None = None):
        super().__init__(message)
        self.code = code
        self.precondition = precondition


class PrecisionError(CMQuarticError, ArithmeticError):
    """A floating-point result could not be rounded safely."""

    code = "E_PRECISION"


class AmbiguityError(CMQuarticError):
    """A search did not narrow down to a unique answer (raise the budget)."""

    code = "E_AMBIGUOUS"


class ConsistencyError(CMQuarticError, AssertionError):
    """An internal identity failed; indicates a bug, never bad input."""

    code = "E_INTERNAL"
