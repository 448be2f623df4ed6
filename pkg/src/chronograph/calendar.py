"""Proleptic Gregorian calendar arithmetic at day granularity.

Dates map to a dense integer *day ordinal*: the number of days elapsed since
0001-01-01.  No Julian switch is applied, so the Gregorian leap rule is
extended backwards to year 1.

Supported dates run from 0001-01-01 to 2999-12-31.  The single date
3000-01-01 is also representable because it is the exclusive end of any
span reaching the last supported year.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import OutOfRangeError, ValidationError

MIN_YEAR = 1
MAX_YEAR = 2999

_DAYS_IN_MONTH = (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)
_DAYS_BEFORE_MONTH = tuple(sum(_DAYS_IN_MONTH[:m]) for m in range(12))

_DAYS_IN_400Y = 146097
_DAYS_IN_100Y = 36524
_DAYS_IN_4Y = 1461


def is_leap_year(year: int) -> bool:
    return year % 4 == 0 and (year % 100 != 0 or year % 400 == 0)


def days_in_month(year: int, month: int) -> int:
    if not 1 <= month <= 12:
        raise ValidationError(f"month must be in 1..12, got {month}", field="month")
    if month == 2 and is_leap_year(year):
        return 29
    return _DAYS_IN_MONTH[month - 1]


def _days_before_year(year: int) -> int:
    y = year - 1
    return y * 365 + y // 4 - y // 100 + y // 400


@dataclass(frozen=True, order=True)
class CivilDate:
    """A validated calendar date; ordering is lexicographic on (year, month, day)."""

    year: int
    month: int
    day: int

    def __post_init__(self):
        if (self.year, self.month, self.day) == (MAX_YEAR + 1, 1, 1):
            return
        if not MIN_YEAR <= self.year <= MAX_YEAR:
            raise OutOfRangeError(
                f"year must be in {MIN_YEAR}..{MAX_YEAR}, got {self.year}", field="year"
            )
        if not 1 <= self.month <= 12:
            raise ValidationError(f"month must be in 1..12, got {self.month}", field="month")
        last = days_in_month(self.year, self.month)
        if not 1 <= self.day <= last:
            raise ValidationError(
                f"day must be in 1..{last} for {self.year:04d}-{self.month:02d}, got {self.day}",
                field="day",
            )

    def isoformat(self) -> str:
        return f"{self.year:04d}-{self.month:02d}-{self.day:02d}"

    def __str__(self) -> str:
        return self.isoformat()

    @classmethod
    def fromisoformat(cls, text: str) -> "CivilDate":
        parts = text.split("-")
        if len(parts) != 3 or not all(p.isdigit() for p in parts) or len(parts[0]) != 4:
            raise ValidationError(f"not a YYYY-MM-DD date: {text!r}")
        return cls(int(parts[0]), int(parts[1]), int(parts[2]))


MIN_ORDINAL = 0
# Ordinal of 3000-01-01, the exclusive end sentinel.
MAX_ORDINAL = _days_before_year(MAX_YEAR + 1)


def to_day_ordinal(date: CivilDate) -> int:
    """Days since 0001-01-01 (which maps to 0)."""
    before_month = _DAYS_BEFORE_MONTH[date.month - 1]
    if date.month > 2 and is_leap_year(date.year):
        before_month += 1
    return _days_before_year(date.year) + before_month + date.day - 1


def from_day_ordinal(ordinal: int) -> CivilDate:
    if not MIN_ORDINAL <= ordinal <= MAX_ORDINAL:
        raise OutOfRangeError(
            f"day ordinal must be in {MIN_ORDINAL}..{MAX_ORDINAL}, got {ordinal}",
            field="ordinal",
        )
    n400, n = divmod(ordinal, _DAYS_IN_400Y)
    n100, n = divmod(n, _DAYS_IN_100Y)
    n4, n = divmod(n, _DAYS_IN_4Y)
    n1, n = divmod(n, 365)
    year = n400 * 400 + n100 * 100 + n4 * 4 + n1 + 1
    if n1 == 4 or n100 == 4:
        # last day of a leap cycle
        return CivilDate(year - 1, 12, 31)
    leap = is_leap_year(year)
    month = 1
    while True:
        length = _DAYS_IN_MONTH[month - 1] + (1 if month == 2 and leap else 0)
        if n < length:
            return CivilDate(year, month, n + 1)
        n -= length
        month += 1


def next_calendar_day(date: CivilDate) -> CivilDate:
    """The following day, computed field-wise without going through ordinals."""
    if date.day < days_in_month(date.year, date.month):
        return CivilDate(date.year, date.month, date.day + 1)
    if date.month < 12:
        return CivilDate(date.year, date.month + 1, 1)
    return CivilDate(date.year + 1, 1, 1)


def ordinal_of(year: int, month: int = 1, day: int = 1) -> int:
    """Shorthand for ``to_day_ordinal(CivilDate(year, month, day))``."""
    return to_day_ordinal(CivilDate(year, month, day))


def iso_of_ordinal(ordinal: int) -> str:
    return from_day_ordinal(ordinal).isoformat()


def ordinal_of_iso(text: str) -> int:
    return to_day_ordinal(CivilDate.fromisoformat(text))
