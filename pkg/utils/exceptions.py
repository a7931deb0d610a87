"""
Exception hierarchy shared by the engines and the command line
"""

from typing import Optional


class ToolkitError(Exception):
    """Base class of every error raised by the toolkit"""


class InputError(ToolkitError):
    """Malformed input: files, expressions, flags or out-of-range arguments"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        super().__init__(message)

    def location(self) -> str:
        """Human readable position of the error, empty when unknown"""
        if self.line is not None and self.column is not None:
            return f"line {self.line}, column {self.column}"
        if self.column is not None:
            return f"column {self.column}"
        return ""

    def __str__(self) -> str:
        message = super().__str__()
        where = self.location()
        return f"{message} ({where})" if where else message


class RingMismatchError(InputError):
    """Operands live in different truncated rings, or an index is out of range"""


class PreconditionError(InputError):
    """An operation was called outside its documented precondition"""


class InvariantViolation(ToolkitError):
    """An internal cross-check failed; the implementation, not the input, is at fault"""


class OffCriticalWarning(UserWarning):
    """The foliated second differential was requested away from the leafwise critical locus"""
