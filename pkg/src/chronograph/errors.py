"""Exception hierarchy shared across the package.

Everything a caller can trigger with bad input derives from
:class:`ValidationError` (itself a ``ValueError``) so that front ends can
map the whole family onto a single exit status.
"""

from __future__ import annotations


class ValidationError(ValueError):
    """Invalid input. ``field`` names the offending component when known."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class OutOfRangeError(ValidationError):
    pass


class OracleRangeError(OutOfRangeError):
    pass


class GraphTooSmallError(ValidationError):
    pass


class UndefinedDensityError(ValidationError):
    pass


class RecordParseError(ValidationError):
    pass


class TruncationError(ValidationError):
    pass


class DimensionError(ValidationError):
    pass
