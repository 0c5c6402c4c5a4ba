"""Exception hierarchy shared by every module.

Two families matter to callers: ``Refusal`` marks a mathematical
precondition that does not hold for the given input (the CLI maps it to
exit code 2); everything else derived from ``HypersingError`` is a usage
or internal error (exit code 1).
"""

from __future__ import annotations


class HypersingError(Exception):
    """Base class for all library errors."""


class FieldMismatchError(HypersingError, TypeError):
    """Operands live in different coefficient fields."""


class UnsupportedFieldError(HypersingError):
    """The operation is not available over this coefficient field."""


class ParseError(HypersingError, ValueError):
    def __init__(self, message: str, line: int | None = 1, column: int | None = 1):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column
        self.reason = message


class ConsistencyError(HypersingError, AssertionError):
    """An internal cross-check failed; indicates a bug, not bad input."""


class Refusal(HypersingError):
    """A mathematical precondition is not met by the input."""


class NotAUnitError(Refusal):
    pass


class PreconditionError(Refusal):
    pass


class InvalidCutError(Refusal):
    pass


class NeedsFieldExtensionError(Refusal):
    pass
