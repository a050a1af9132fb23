"""Error and warning types raised across `psmod`.

Each error also subclasses the nearest builtin so existing ``except ValueError`` style
handling keeps working; `exit_code` is what the CLI returns for it.
"""

from typing import Optional


class PsmodError(Exception):
    exit_code: int = 1


class UsageError(PsmodError, ValueError):
    """Bad arguments: mismatched ambients, mixed fields, empty or all-zero inputs."""

    exit_code = 1


class ParseError(PsmodError, ValueError):
    """Malformed polynomial expression or problem file, with a 1-based position."""

    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None) -> None:
        self.message = message
        self.line = line
        self.column = column
        if line is not None and column is not None:
            message = f'{message} (line {line}, column {column})'
        super().__init__(message)


class PreconditionError(PsmodError, ValueError):
    exit_code = 3


class WholeRingError(PreconditionError):
    """The ideal contains a unit, so the quotient is the zero ring."""


class CriterionInapplicableError(PreconditionError):
    """The flatness criterion needs a Cohen-Macaulay total space."""


class FieldDivisionError(PsmodError, ZeroDivisionError):
    exit_code = 3


class IntegrityError(PsmodError, RuntimeError):
    """An exactness identity failed. Always a bug, never bad input."""

    exit_code = 4


class LargeProblemWarning(UserWarning):
    pass


class TailReductionWarning(UserWarning):
    pass


class ApproximationWarning(UserWarning):
    pass
