"""Shared exception types."""


class BudgetExceededError(RuntimeError):
    """A simulation or search ran out of its step or state budget.

    Raised instead of silently running forever: bounded games and
    configuration-space searches can be exponentially long in the input
    bit length, so every potentially long loop carries an explicit budget.
    """


class InstanceFormatError(ValueError):
    """Malformed or inconsistent instance file."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
