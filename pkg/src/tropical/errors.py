"""
Exception hierarchy for the tropical core.

Library code raises these; the command handlers translate them into
exit codes and messages.
"""

from typing import Any, List, Optional


class TropicalError(Exception):
    """Base class for all errors raised by the tropical core."""


class ParseError(TropicalError, ValueError):
    """Malformed rational, polynomial or file content."""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class DimensionMismatchError(TropicalError, ValueError):
    """A point or shift vector does not match the ambient dimension."""

    def __init__(self, expected: int, got: int, what: str = "vector"):
        self.expected = expected
        self.got = got
        super().__init__(f"{what} has length {got}, expected {expected}")


class UnsupportedDimensionError(TropicalError, ValueError):
    """The operation is only implemented for small n."""


class UnknownRowError(TropicalError, KeyError):
    """A row id is not present in the matrix."""


class MissingColumnError(TropicalError, KeyError):
    """A witness does not cover a column it is evaluated on."""

    def __init__(self, column: Any):
        self.column = column
        super().__init__(f"witness has no value for column {column}")


class WitnessViolationError(TropicalError):
    """A candidate witness leaves some rows with a unique minimum."""

    def __init__(self, violated_rows: List[Any]):
        self.violated_rows = list(violated_rows)
        shown = ", ".join(str(r) for r in self.violated_rows[:10])
        more = "" if len(self.violated_rows) <= 10 else f" (+{len(self.violated_rows) - 10} more)"
        super().__init__(f"witness violates {len(self.violated_rows)} row(s): {shown}{more}")


class NotACommonZeroError(TropicalError):
    """A point claimed to be a common tropical zero is not one."""


class InvariantViolation(TropicalError):
    """A proven statement failed on a concrete instance."""
