"""Shared exception types."""


class BudgetExceededError(RuntimeError):
    """An enumeration, scan, or iteration cap was hit before an answer was found."""


class InvariantViolationError(RuntimeError):
    """An internal consistency check failed; indicates a bug, never bad user input."""
