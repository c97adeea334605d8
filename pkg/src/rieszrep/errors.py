"""Exception hierarchy.

Validation problems derive from :class:`ValidationError` (CLI exit code 2),
numerical failures from :class:`NonConvergence` (exit code 3).
"""

from __future__ import annotations


class RieszError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(RieszError, ValueError):
    """Input rejected before any analysis ran."""


class NonUnitVector(ValidationError):
    def __init__(self, index: int, norm_sq: float):
        self.index = index
        self.norm_sq = norm_sq
        super().__init__(f"replacement vector {index} has squared norm {norm_sq!r}, expected 1")


class DimensionMismatch(ValidationError):
    pass


class TooManyReplacements(ValidationError):
    pass


class NonFiniteEntry(ValidationError):
    pass


class IndexOutOfRange(ValidationError, IndexError):
    pass


class NotHermitian(ValidationError):
    pass


class NotSquare(ValidationError):
    pass


class OverlappingIntervals(ValidationError):
    pass


class MeasureNotOne(ValidationError):
    pass


class ParseError(ValidationError):
    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        self.field = field
        self.line = line
        where = []
        if field is not None:
            where.append(f"field {field!r}")
        if line is not None:
            where.append(f"line {line}")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)


class SchemaVersionUnsupported(ParseError):
    pass


class NonConvergence(RieszError, ArithmeticError):
    pass


class ConditionViolated(RieszError):
    """The diagonal/off-diagonal condition of the exponential certificate failed.

    ``certificate`` holds the full diagnostics (with ``condition_holds`` false).
    """

    def __init__(self, worst_row: int, worst_sum: float, reason: str, certificate=None):
        self.worst_row = worst_row
        self.worst_sum = worst_sum
        self.reason = reason
        self.certificate = certificate
        super().__init__(f"row {worst_row}: {reason} (off-diagonal sum {worst_sum!r})")


class UnwritableOutput(RieszError, OSError):
    pass
