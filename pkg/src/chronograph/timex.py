"""Time-expression identification and TimeML-style normalization.

Identification is a deterministic, case-insensitive pattern recognizer over a
fixed inventory of DATE formats.  Normalization maps a surface string onto one
of five canonical value shapes::

    Day      1924-07-21
    Month    2012-06
    Year     2015
    Decade   199X
    Century  17XX

Anything else is rejected with a reason code rather than an exception.
Formats that are recognised on purpose only to be rejected (year quarters,
ambiguous slash dates) are part of the identifier so that a sentence carrying
only such an expression ends up without a time-span.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .calendar import MAX_YEAR, MIN_YEAR, days_in_month
from .errors import ValidationError

__all__ = [
    "Kind",
    "RawTimex",
    "TimemlValue",
    "Rejected",
    "RejectReason",
    "Tag",
    "filter_tag_sequence",
    "identify",
    "normalize",
    "render",
]


class Kind(str, enum.Enum):
    DAY = "Day"
    MONTH = "Month"
    YEAR = "Year"
    DECADE = "Decade"
    CENTURY = "Century"


class RejectReason(str, enum.Enum):
    AMBIGUOUS_ORDER = "ambiguous-order"
    QUARTER_FORMAT = "quarter-format"
    NOT_A_DATE = "not-a-date"
    OUT_OF_RANGE = "out-of-range"


class Tag(str, enum.Enum):
    B = "B-TIME"
    I = "I-TIME"  # noqa: E741
    O = "O"  # noqa: E741


@dataclass(frozen=True)
class RawTimex:
    surface: str
    char_start: int
    char_end: int

    def __post_init__(self):
        if not 0 <= self.char_start < self.char_end:
            raise ValidationError(
                f"timex offsets must satisfy 0 <= start < end, got ({self.char_start}, {self.char_end})"
            )

    @classmethod
    def of(cls, surface: str) -> "RawTimex":
        """A free-standing expression, offsets relative to itself."""
        return cls(surface, 0, len(surface))


_CANONICAL_SHAPES = {
    Kind.DAY: re.compile(r"\d{4}-\d{2}-\d{2}"),
    Kind.MONTH: re.compile(r"\d{4}-\d{2}"),
    Kind.YEAR: re.compile(r"\d{4}"),
    Kind.DECADE: re.compile(r"\d{3}X"),
    Kind.CENTURY: re.compile(r"\d{2}XX"),
}


@dataclass(frozen=True)
class TimemlValue:
    kind: Kind
    canonical: str

    def __post_init__(self):
        shape = _CANONICAL_SHAPES[self.kind]
        if not shape.fullmatch(self.canonical):
            raise ValidationError(f"{self.canonical!r} is not a canonical {self.kind.value} value")
        digits = self.canonical.rstrip("X")
        if self.kind is Kind.DAY or self.kind is Kind.MONTH:
            year, month = int(digits[:4]), int(digits[5:7])
            day = int(digits[8:10]) if self.kind is Kind.DAY else 1
            if not MIN_YEAR <= year <= MAX_YEAR or not 1 <= month <= 12 or not 1 <= day <= days_in_month(year, month):
                raise ValidationError(f"{self.canonical!r} is outside the calendar")
        elif self.kind is Kind.YEAR and not MIN_YEAR <= int(digits) <= MAX_YEAR:
            raise ValidationError(f"{self.canonical!r} is outside the calendar")

    def __str__(self) -> str:
        return self.canonical


@dataclass(frozen=True)
class Rejected:
    reason: RejectReason

    def __str__(self) -> str:
        return self.reason.value


def render(value: TimemlValue) -> str:
    """Surface form that :func:`normalize` maps back onto ``value``."""
    return value.canonical


def filter_tag_sequence(tags: Sequence[Tag | str]) -> list[tuple[int, int]]:
    """Token spans ``(start, end)`` of well-formed B-TIME I-TIME* runs.

    A run that opens with I-TIME is dropped as a whole, including the I-TIME
    tokens that follow it.
    """
    spans = []
    start = None
    for i, raw in enumerate(tags):
        tag = Tag(raw)
        if tag is Tag.I:
            continue
        if start is not None:
            spans.append((start, i))
            start = None
        if tag is Tag.B:
            start = i
    if start is not None:
        spans.append((start, len(tags)))
    # I-TIME following O (or at position 0) never set `start`, so those runs vanish.
    return spans


# ---------------------------------------------------------------------------
# Lexicon

_MONTHS = {
    "january": 1, "jan": 1, "february": 2, "feb": 2, "march": 3, "mar": 3,
    "april": 4, "apr": 4, "may": 5, "june": 6, "jun": 6, "july": 7, "jul": 7,
    "august": 8, "aug": 8, "september": 9, "sept": 9, "sep": 9, "october": 10,
    "oct": 10, "november": 11, "nov": 11, "december": 12, "dec": 12,
}

_UNITS = {
    "one": 1, "two": 2, "three": 3, "four": 4, "five": 5, "six": 6,
    "seven": 7, "eight": 8, "nine": 9,
}
_TEENS = {
    "ten": 10, "eleven": 11, "twelve": 12, "thirteen": 13, "fourteen": 14,
    "fifteen": 15, "sixteen": 16, "seventeen": 17, "eighteen": 18, "nineteen": 19,
}
_TENS = {
    "twenty": 20, "thirty": 30, "forty": 40, "fifty": 50, "sixty": 60,
    "seventy": 70, "eighty": 80, "ninety": 90,
}
_ORDINAL_WORDS = {
    "first": 1, "second": 2, "third": 3, "fourth": 4, "fifth": 5, "sixth": 6,
    "seventh": 7, "eighth": 8, "ninth": 9, "tenth": 10, "eleventh": 11,
    "twelfth": 12, "thirteenth": 13, "fourteenth": 14, "fifteenth": 15,
    "sixteenth": 16, "seventeenth": 17, "eighteenth": 18, "nineteenth": 19,
    "twentieth": 20, "thirtieth": 30,
}
_DECADE_WORDS = {
    "twenties": 2, "thirties": 3, "forties": 4, "fifties": 5, "sixties": 6,
    "seventies": 7, "eighties": 8, "nineties": 9,
}
_QUARTER_WORDS = r"(?:first|second|third|fourth|last|1st|2nd|3rd|4th)"


def _alt(words: Iterable[str]) -> str:
    return "(?:" + "|".join(sorted(words, key=len, reverse=True)) + ")"


_MONTH_RE = _alt(_MONTHS) + r"\.?"
_UNIT_RE = _alt(_UNITS)
_TEEN_RE = _alt(_TEENS)
_TENS_RE = _alt(_TENS)
_SEP = r"[\s-]+"
# 1..99 spelled out
_NUM99 = rf"(?:{_TENS_RE}(?:{_SEP}{_UNIT_RE})?|{_TEEN_RE}|{_UNIT_RE})"
# 10..29, the leading pair of a year in 1000..2999
_YEAR_HEAD = rf"(?:{_TEEN_RE}|twenty(?:{_SEP}{_UNIT_RE})?)"
_SPELLED_YEAR = (
    rf"(?:{_YEAR_HEAD}{_SEP}hundred(?:{_SEP}(?:and{_SEP})?{_NUM99})?"
    rf"|(?:one|two){_SEP}thousand(?:{_SEP}(?:and{_SEP})?(?:{_UNIT_RE}{_SEP}hundred(?:{_SEP}(?:and{_SEP})?{_NUM99})?|{_NUM99}))?"
    rf"|{_YEAR_HEAD}{_SEP}(?:(?:oh|o){_SEP}{_UNIT_RE}|{_NUM99}))"
)
_ORD_NUM = r"(?:\d{1,2}(?:st|nd|rd|th))"
_ORD_WORD = rf"(?:{_alt(_ORDINAL_WORDS)}|(?:twenty|thirty)[\s-]+{_alt(k for k in _ORDINAL_WORDS if _ORDINAL_WORDS[k] < 10)})"
_MOD = r"(?:(?:the\s+)?(?:(?:early|mid|late)(?:\s*-\s*|\s+))?)"
_BC = r"(?:\s*(?:bc|bce|b\.c\.(?:e\.)?))"
_APOS = "['’‘`]"

# Each family: (name, pattern used for identification, pattern used for normalization).
# Normalization patterns are applied with fullmatch on a cleaned surface.
_DAY_MDY = rf"(?P<month>{_MONTH_RE})\s+(?P<day>\d{{1,2}})(?:st|nd|rd|th)?\s*,?\s*(?P<year>\d{{4}})"
_DAY_DMY = rf"(?P<day>\d{{1,2}})(?:st|nd|rd|th)?\s+(?:of\s+)?(?P<month>{_MONTH_RE})\s*,?\s*(?P<year>\d{{4}})"
_ISO_DAY = r"(?P<year>\d{4})-(?P<month>\d{2})-(?P<day>\d{2})"
_ISO_MONTH = r"(?P<year>\d{4})-(?P<month>\d{2})"
_SLASH = r"(?P<a>\d{1,4})/(?P<b>\d{1,2})/(?P<c>\d{1,4})"
_MONTH_YEAR = rf"(?P<month>{_MONTH_RE})\s*,?\s+(?:of\s+)?(?P<year>\d{{4}})"
_QUARTER = (
    rf"(?:(?:the\s+)?{_QUARTER_WORDS}[\s-]+quarter\s+(?:of\s+)?\d{{4}}"
    rf"|\d{{4}}\s*,?\s+{_QUARTER_WORDS}[\s-]+quarter"
    rf"|q[1-4]\s*,?\s*\d{{4}}|\d{{4}}\s*-?\s*q[1-4])"
)
_CENTURY = rf"{_MOD}(?P<ord>{_ORD_NUM}|{_ORD_WORD})[\s-]+century(?P<bc>{_BC})?"
_DECADE4 = rf"{_MOD}(?P<digits>\d{{3}}0){_APOS}?s"
_DECADE2_ID = rf"(?:the\s+(?:(?:early|mid|late)(?:\s*-\s*|\s+))?{_APOS}?\s*|{_MOD}{_APOS}\s*)(?P<digits>\d0){_APOS}?s"
_DECADE2_NORM = rf"{_MOD}(?:{_APOS}\s*)?(?P<digits>\d0){_APOS}?s"
_DECADE_WORD_ID = rf"the\s+(?:(?:early|mid|late)(?:\s*-\s*|\s+))?(?P<word>{_alt(_DECADE_WORDS)})"
_DECADE_WORD_NORM = rf"{_MOD}(?P<word>{_alt(_DECADE_WORDS)})"
_YEAR = r"(?P<year>\d{4})"
_SPELLED = rf"(?P<words>{_SPELLED_YEAR})"


def _compile(p: str) -> re.Pattern:
    return re.compile(p, re.IGNORECASE)


# Left/right guards keep identification from firing inside longer tokens.
_L = r"(?<![\w/.])"
_R = r"(?![\w/]|\.\d)"
_LW = r"(?<![\w'’-])"
_RW = r"(?![\w-])"

_ID_PATTERNS = [
    ("quarter", _compile(_L + _QUARTER + _R)),
    ("day_mdy", _compile(_LW + _DAY_MDY + _R)),
    ("day_dmy", _compile(_L + _DAY_DMY + _R)),
    ("iso_day", _compile(_L + _ISO_DAY + _R)),
    ("slash", _compile(_L + _SLASH + _R)),
    ("month_year", _compile(_LW + _MONTH_YEAR + _R)),
    ("century", _compile(_LW + _CENTURY + _RW)),
    ("decade4", _compile(_LW + _DECADE4 + _RW)),
    ("decade2", _compile(_LW + _DECADE2_ID + _RW)),
    ("decade_word", _compile(_LW + _DECADE_WORD_ID + _RW)),
    ("spelled", _compile(_LW + _SPELLED + _RW)),
    ("year", _compile(_L + _YEAR + _R)),
]

_NORM_PATTERNS = [
    ("quarter", _compile(_QUARTER)),
    ("day_mdy", _compile(_DAY_MDY)),
    ("day_dmy", _compile(_DAY_DMY)),
    ("iso_day", _compile(_ISO_DAY)),
    ("iso_month", _compile(_ISO_MONTH)),
    ("slash", _compile(_SLASH)),
    ("month_year", _compile(_MONTH_YEAR)),
    ("century", _compile(_CENTURY)),
    ("century_canon", _compile(r"(?P<prefix>\d{2})xx")),
    ("decade_canon", _compile(r"(?P<prefix>\d{3})x")),
    ("decade4", _compile(_DECADE4)),
    ("decade2", _compile(_DECADE2_NORM)),
    ("decade_word", _compile(_DECADE_WORD_NORM)),
    ("spelled", _compile(_SPELLED)),
    ("year", _compile(_YEAR)),
]


# ---------------------------------------------------------------------------
# Number words


def _words(text: str) -> list[str]:
    return [w for w in re.split(r"[\s-]+", text.lower()) if w and w != "and"]


def _parse_below_100(words: list[str]) -> int | None:
    if len(words) == 1:
        w = words[0]
        for table in (_UNITS, _TEENS, _TENS):
            if w in table:
                return table[w]
        return None
    if len(words) == 2 and words[0] in _TENS and words[1] in _UNITS:
        return _TENS[words[0]] + _UNITS[words[1]]
    return None


def _parse_below_1000(words: list[str]) -> int | None:
    if "hundred" in words:
        k = words.index("hundred")
        head = _parse_below_100(words[:k])
        if head is None:
            return None
        tail = _parse_below_100(words[k + 1:]) if words[k + 1:] else 0
        return None if tail is None else head * 100 + tail
    return _parse_below_100(words)


def spelled_year_value(text: str) -> int | None:
    """Compose a spelled-out year literally, e.g. 'fourteen fifty' -> 1450."""
    words = _words(text)
    if not words:
        return None
    if "thousand" in words:
        k = words.index("thousand")
        head = _parse_below_100(words[:k])
        rest = words[k + 1:]
        tail = _parse_below_1000(rest) if rest else 0
        if head is None or tail is None:
            return None
        return head * 1000 + tail
    if "hundred" in words:
        return _parse_below_1000(words)
    # paired form: head pair followed by a 2-digit group or "oh <unit>"
    for split in (1, 2):
        head = _parse_below_100(words[:split])
        rest = words[split:]
        if head is None or not 10 <= head <= 99 or not rest:
            continue
        if rest[0] in ("oh", "o") and len(rest) == 2 and rest[1] in _UNITS:
            return head * 100 + _UNITS[rest[1]]
        tail = _parse_below_100(rest)
        if tail is not None and tail >= 10:
            return head * 100 + tail
    return None


def _ordinal_value(text: str) -> int | None:
    text = text.lower()
    m = re.fullmatch(r"(\d{1,2})(st|nd|rd|th)", text)
    if m:
        return int(m.group(1))
    words = re.split(r"[\s-]+", text)
    if len(words) == 1:
        return _ORDINAL_WORDS.get(words[0])
    if len(words) == 2 and words[0] in ("twenty", "thirty") and words[1] in _ORDINAL_WORDS:
        return _TENS[words[0]] + _ORDINAL_WORDS[words[1]]
    return None


# ---------------------------------------------------------------------------
# Normalization


def _year_ok(year: int) -> bool:
    return MIN_YEAR <= year <= MAX_YEAR


def _valid_day(year: int, month: int, day: int) -> bool:
    return 1 <= month <= 12 and 1 <= day <= days_in_month(year, month)


def _day_value(year: int, month: int, day: int) -> TimemlValue | Rejected:
    if not _year_ok(year):
        return Rejected(RejectReason.OUT_OF_RANGE)
    if not _valid_day(year, month, day):
        return Rejected(RejectReason.NOT_A_DATE)
    return TimemlValue(Kind.DAY, f"{year:04d}-{month:02d}-{day:02d}")


def _month_value(year: int, month: int) -> TimemlValue | Rejected:
    if not _year_ok(year):
        return Rejected(RejectReason.OUT_OF_RANGE)
    if not 1 <= month <= 12:
        return Rejected(RejectReason.NOT_A_DATE)
    return TimemlValue(Kind.MONTH, f"{year:04d}-{month:02d}")


def _year_value(year: int) -> TimemlValue | Rejected:
    if not _year_ok(year):
        return Rejected(RejectReason.OUT_OF_RANGE)
    return TimemlValue(Kind.YEAR, f"{year:04d}")


def _month_number(text: str) -> int:
    return _MONTHS[text.lower().rstrip(".")]


def _slash_value(a: str, b: str, c: str) -> TimemlValue | Rejected:
    if len(a) == 4 and len(c) <= 2:
        # YYYY/MM/DD.  Rejected when the trailing field can be read as a
        # two-digit year and the leading year's last two digits as a day,
        # e.g. 2019/11/25 vs 2025/11/19.
        year, month, day = int(a), int(b), int(c)
        if not _year_ok(year):
            return Rejected(RejectReason.OUT_OF_RANGE)
        if not _valid_day(year, month, day):
            return Rejected(RejectReason.NOT_A_DATE)
        alt_year = (year // 100) * 100 + day
        alt_day = year % 100
        if (alt_year, alt_day) != (year, day) and _valid_day(alt_year, month, alt_day):
            return Rejected(RejectReason.AMBIGUOUS_ORDER)
        return _day_value(year, month, day)
    if len(c) == 4 and len(a) <= 2:
        # DD/MM/YYYY, or MM/DD/YYYY when the day field exceeds 12.
        year, x, y = int(c), int(a), int(b)
        if not _year_ok(year):
            return Rejected(RejectReason.OUT_OF_RANGE)
        readings = set()
        if _valid_day(year, y, x):
            readings.add((y, x))
        if _valid_day(year, x, y):
            readings.add((x, y))
        if not readings:
            return Rejected(RejectReason.NOT_A_DATE)
        if len(readings) > 1:
            return Rejected(RejectReason.AMBIGUOUS_ORDER)
        month, day = readings.pop()
        return _day_value(year, month, day)
    return Rejected(RejectReason.NOT_A_DATE)


def _century_value(ordinal: int | None, bc: str | None) -> TimemlValue | Rejected:
    if ordinal is None or ordinal < 1:
        return Rejected(RejectReason.NOT_A_DATE)
    if bc:
        return Rejected(RejectReason.OUT_OF_RANGE)
    prefix = ordinal - 1
    if prefix * 100 > MAX_YEAR:
        return Rejected(RejectReason.OUT_OF_RANGE)
    return TimemlValue(Kind.CENTURY, f"{prefix:02d}XX")


def _two_digit_decade(tens: int) -> TimemlValue:
    # '00s and '10s read as this century, everything else as the 1900s.
    century = 20 if tens <= 1 else 19
    return TimemlValue(Kind.DECADE, f"{century}{tens}X")


def _from_match(family: str, m: re.Match) -> TimemlValue | Rejected:
    g = m.groupdict()
    if family == "quarter":
        return Rejected(RejectReason.QUARTER_FORMAT)
    if family in ("day_mdy", "day_dmy"):
        return _day_value(int(g["year"]), _month_number(g["month"]), int(g["day"]))
    if family == "iso_day":
        return _day_value(int(g["year"]), int(g["month"]), int(g["day"]))
    if family == "iso_month":
        return _month_value(int(g["year"]), int(g["month"]))
    if family == "slash":
        return _slash_value(g["a"], g["b"], g["c"])
    if family == "month_year":
        return _month_value(int(g["year"]), _month_number(g["month"]))
    if family == "century":
        return _century_value(_ordinal_value(g["ord"]), g.get("bc"))
    if family == "century_canon":
        return _century_value(int(g["prefix"]) + 1, None)
    if family == "decade_canon":
        return TimemlValue(Kind.DECADE, g["prefix"] + "X")
    if family == "decade4":
        digits = g["digits"]
        if digits.endswith("00"):
            # "the 1800s" names the hundred years, not the first decade
            return _century_value(int(digits[:2]) + 1, None)
        if not _year_ok(int(digits)) and int(digits) != 0:
            return Rejected(RejectReason.OUT_OF_RANGE)
        return TimemlValue(Kind.DECADE, digits[:3] + "X")
    if family == "decade2":
        return _two_digit_decade(int(g["digits"][0]))
    if family == "decade_word":
        return _two_digit_decade(_DECADE_WORDS[g["word"].lower()])
    if family == "spelled":
        year = spelled_year_value(g["words"])
        if year is None:
            return Rejected(RejectReason.NOT_A_DATE)
        return _year_value(year)
    if family == "year":
        year = int(g["year"])
        if year == 0:
            return Rejected(RejectReason.NOT_A_DATE)
        return _year_value(year)
    raise AssertionError(family)


def _clean(surface: str) -> str:
    text = surface.strip().strip(",;:")
    text = text.rstrip(".") if not re.search(r"b\.c\.(e\.)?$", text, re.IGNORECASE) else text
    return re.sub(r"\s+", " ", text)


def normalize(timex: RawTimex | str) -> TimemlValue | Rejected:
    """Map a time expression onto its canonical DATE value, or reject it.

    Total over all inputs: strings that match no known DATE format come back
    as ``Rejected(NOT_A_DATE)``.
    """
    surface = timex.surface if isinstance(timex, RawTimex) else timex
    text = _clean(surface)
    for family, pattern in _NORM_PATTERNS:
        m = pattern.fullmatch(text)
        if m:
            return _from_match(family, m)
    return Rejected(RejectReason.NOT_A_DATE)


# ---------------------------------------------------------------------------
# Identification


def _candidates(sentence: str):
    for rank, (family, pattern) in enumerate(_ID_PATTERNS):
        for m in pattern.finditer(sentence):
            if family == "year" and not 1000 <= int(m.group("year")) <= 2999:
                continue
            if family == "spelled" and spelled_year_value(m.group("words")) is None:
                continue
            yield m.start(), m.end(), rank


def identify(sentence: str) -> list[RawTimex]:
    """Non-overlapping time expressions in ``sentence``, left to right.

    Overlapping candidates are resolved leftmost-longest; ties in extent go to
    the more specific format family.
    """
    picked: list[tuple[int, int]] = []
    last_end = 0
    for start, end, _ in sorted(_candidates(sentence), key=lambda c: (c[0], -(c[1] - c[0]), c[2])):
        if start < last_end:
            continue
        picked.append((start, end))
        last_end = end
    return [RawTimex(sentence[s:e], s, e) for s, e in picked]


def extract(sentence: str) -> list[tuple[RawTimex, TimemlValue | Rejected]]:
    return [(t, normalize(t)) for t in identify(sentence)]


Identifier = Callable[[str], list[RawTimex]]
