"""Half-open day intervals and the relations between them.

A :class:`TimeSpan` is ``[start, end)`` over day ordinals.  Two spans that
merely touch (``a.end == b.start``) share no day, so ``a`` is *earlier* than
``b``.  The same convention gives the day counts used by
:func:`overlap_score`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .calendar import CivilDate, from_day_ordinal, ordinal_of, ordinal_of_iso, to_day_ordinal
from .errors import OracleRangeError, ValidationError
from .timex import Kind, TimemlValue

ORACLE_WINDOW = 100_000


@dataclass(frozen=True, order=True)
class TimeSpan:
    start: int
    end: int

    def __post_init__(self):
        if not self.start < self.end:
            raise ValidationError(f"span needs start < end, got [{self.start}, {self.end})")

    @property
    def days(self) -> int:
        return self.end - self.start

    def __contains__(self, other: "TimeSpan") -> bool:
        return self.start <= other.start and other.end <= self.end

    @classmethod
    def from_dates(cls, start: CivilDate, end: CivilDate) -> "TimeSpan":
        return cls(to_day_ordinal(start), to_day_ordinal(end))

    @classmethod
    def from_iso(cls, start: str, end: str) -> "TimeSpan":
        return cls(ordinal_of_iso(start), ordinal_of_iso(end))

    def to_json(self) -> dict:
        return {"start": from_day_ordinal(self.start).isoformat(), "end": from_day_ordinal(self.end).isoformat()}

    @classmethod
    def from_json(cls, obj: dict) -> "TimeSpan":
        return cls.from_iso(obj["start"], obj["end"])

    def __str__(self) -> str:
        j = self.to_json()
        return f"[{j['start']}, {j['end']})"


class TemporalRelation(str, enum.Enum):
    EARLIER = "earlier"
    LATER = "later"
    CONTEMPORARY = "contemporary"
    NULL = "null"

    def inverse(self) -> "TemporalRelation":
        return _INVERSE[self]


_INVERSE = {
    TemporalRelation.EARLIER: TemporalRelation.LATER,
    TemporalRelation.LATER: TemporalRelation.EARLIER,
    TemporalRelation.CONTEMPORARY: TemporalRelation.CONTEMPORARY,
    TemporalRelation.NULL: TemporalRelation.NULL,
}


@dataclass(frozen=True)
class OverlapMetrics:
    precision: float
    recall: float
    f1: float


def span_of(value: TimemlValue) -> TimeSpan:
    """Interval of days covered by a normalized value."""
    c = value.canonical
    if value.kind is Kind.DAY:
        start = ordinal_of(int(c[:4]), int(c[5:7]), int(c[8:10]))
        return TimeSpan(start, start + 1)
    if value.kind is Kind.MONTH:
        year, month = int(c[:4]), int(c[5:7])
        nxt = (year + 1, 1) if month == 12 else (year, month + 1)
        return TimeSpan(ordinal_of(year, month), ordinal_of(*nxt))
    if value.kind is Kind.YEAR:
        year = int(c)
        return TimeSpan(ordinal_of(year), ordinal_of(year + 1))
    width = 10 if value.kind is Kind.DECADE else 100
    first = int(c.rstrip("X")) * width
    # There is no year 0; the first decade and century start at 0001-01-01.
    return TimeSpan(ordinal_of(max(first, 1)), ordinal_of(first + width))


def merge_hull(spans: Iterable[TimeSpan]) -> TimeSpan:
    """Smallest span covering all inputs, interior gaps included."""
    spans = list(spans)
    if not spans:
        raise ValidationError("merge_hull needs at least one span")
    return TimeSpan(min(s.start for s in spans), max(s.end for s in spans))


def relation(a: Optional[TimeSpan], b: Optional[TimeSpan]) -> TemporalRelation:
    """Directed relation of ``a`` with respect to ``b``."""
    if a is None or b is None:
        return TemporalRelation.NULL
    if a.end <= b.start:
        return TemporalRelation.EARLIER
    if b.end <= a.start:
        return TemporalRelation.LATER
    return TemporalRelation.CONTEMPORARY


def relation_oracle(a: TimeSpan, b: TimeSpan) -> TemporalRelation:
    """Brute-force :func:`relation` by materializing both day sets.

    Test oracle only: each span must be at most ``ORACLE_WINDOW`` days long.
    """
    for name, s in (("a", a), ("b", b)):
        if s.days > ORACLE_WINDOW:
            raise OracleRangeError(f"span {name} has {s.days} days, oracle limit is {ORACLE_WINDOW}")
    origin = min(a.start, b.start)
    width = max(a.end, b.end) - origin
    in_a = np.zeros(width, dtype=bool)
    in_b = np.zeros(width, dtype=bool)
    in_a[a.start - origin:a.end - origin] = True
    in_b[b.start - origin:b.end - origin] = True
    if (in_a & in_b).any():
        return TemporalRelation.CONTEMPORARY
    days_a, days_b = np.flatnonzero(in_a), np.flatnonzero(in_b)
    if days_a[-1] < days_b[0]:
        return TemporalRelation.EARLIER
    return TemporalRelation.LATER


def overlap_score(gold: TimeSpan, pred: TimeSpan) -> OverlapMetrics:
    """Day-level precision/recall/F1 of a predicted span against a gold span."""
    shared = max(0, min(gold.end, pred.end) - max(gold.start, pred.start))
    precision = shared / pred.days
    recall = shared / gold.days
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return OverlapMetrics(precision, recall, f1)
