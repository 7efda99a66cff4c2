"""Exception hierarchy shared by all epswap modules.

Each class carries a short ``category`` string which the CLI prints and maps
to a distinct exit code.
"""

from __future__ import annotations


class EpsError(Exception):
    """Base class for every error raised by the library."""

    category = "error"


class ValidationError(EpsError, ValueError):
    """A term sheet, parameter block or data record failed validation."""

    category = "validation"

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)


class DomainError(EpsError, ValueError):
    """An input lies outside the mathematical domain of a function."""

    category = "domain"


class CoverageError(EpsError):
    """A quote board does not contain a strike close enough to a hedge strike."""

    category = "coverage"

    def __init__(self, message: str, missing: list[tuple[str, float]] | None = None):
        self.missing = list(missing or [])
        super().__init__(message)


class NoSolutionError(EpsError):
    """The fair-fee equation has no solution (the fee coefficient is not positive)."""

    category = "no-solution"


class DataError(EpsError, ValueError):
    """A data file is malformed, unsorted or empty."""

    category = "data"

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
