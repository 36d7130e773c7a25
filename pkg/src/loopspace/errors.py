"""Shared exception types.

Exit-code contract for the command line tool:
  InputError        -> exit 2  (malformed or rejected input document)
  BudgetExceeded    -> exit 3  (search/enumeration budget exhausted, never a silent answer)
  VerificationError -> exit 1  (a checked property failed)
"""


class InputError(ValueError):
    """Raised when an input document or argument violates a validated precondition."""


class BudgetExceeded(RuntimeError):
    """Raised when a bounded search runs out of budget before reaching a verdict."""


class BoundError(InputError):
    """Raised when an operation needs levels beyond a complex's complete range."""


class VerificationError(AssertionError):
    """Raised when a certified comparison fails."""
