import pytest
from hypothesis import given, strategies as st

from chronograph.timex import (
    Kind,
    RawTimex,
    Rejected,
    RejectReason,
    Tag,
    TimemlValue,
    filter_tag_sequence,
    identify,
    normalize,
    render,
    spelled_year_value,
)

B, I, O = Tag.B, Tag.I, Tag.O

ACCEPTED = [
    # full dates, months and centuries
    ("21 July 1924", Kind.DAY, "1924-07-21"),
    ("November 7, 2006", Kind.DAY, "2006-11-07"),
    ("June 2012", Kind.MONTH, "2012-06"),
    ("18th century", Kind.CENTURY, "17XX"),
    # assorted written forms
    ("2015", Kind.YEAR, "2015"),
    ("the early ' 90s", Kind.DECADE, "199X"),
    ("may 1913", Kind.MONTH, "1913-05"),
    ("november 1 , 2015", Kind.DAY, "2015-11-01"),
    ("30 november 1945", Kind.DAY, "1945-11-30"),
    ("19th century", Kind.CENTURY, "18XX"),
    ("01/01/2022", Kind.DAY, "2022-01-01"),
    ("seventeen hundred and fifty two", Kind.YEAR, "1752"),
    ("2043/11/05", Kind.DAY, "2043-11-05"),
]

REJECTED = [
    ("2019/11/25", RejectReason.AMBIGUOUS_ORDER),
    ("2004 third quarter", RejectReason.QUARTER_FORMAT),
    ("031300010703", RejectReason.NOT_A_DATE),
]


@pytest.mark.parametrize("surface, kind, canonical", ACCEPTED)
def test_golden_accepted(surface, kind, canonical):
    assert normalize(RawTimex.of(surface)) == TimemlValue(kind, canonical)


@pytest.mark.parametrize("surface, reason", REJECTED)
def test_golden_rejected(surface, reason):
    assert normalize(RawTimex.of(surface)) == Rejected(reason)


def test_spelled_year_composes_literally():
    # number words compose literally: fourteen, fifty -> 1450
    assert normalize("fourteen fifty") == TimemlValue(Kind.YEAR, "1450")


@pytest.mark.parametrize(
    "text, year",
    [
        ("nineteen eighty-four", 1984),
        ("nineteen oh five", 1905),
        ("twenty twenty", 2020),
        ("two thousand and eight", 2008),
        ("one thousand nine hundred and ninety", 1990),
        ("seventeen hundred", 1700),
        ("fifty", None),
        ("hundred", None),
    ],
)
def test_spelled_year_value(text, year):
    assert spelled_year_value(text) == year


@pytest.mark.parametrize(
    "surface, expected",
    [
        ("the 1990s", TimemlValue(Kind.DECADE, "199X")),
        ("the nineties", TimemlValue(Kind.DECADE, "199X")),
        ("'60s", TimemlValue(Kind.DECADE, "196X")),
        ("the 1800s", TimemlValue(Kind.CENTURY, "18XX")),
        ("the twenty-first century", TimemlValue(Kind.CENTURY, "20XX")),
        ("late 18th-century", TimemlValue(Kind.CENTURY, "17XX")),
        ("1st century", TimemlValue(Kind.CENTURY, "00XX")),
        ("Sept. 11, 2001", TimemlValue(Kind.DAY, "2001-09-11")),
        ("the 4th of July 1776", Rejected(RejectReason.NOT_A_DATE)),
        ("4th of July 1776", TimemlValue(Kind.DAY, "1776-07-04")),
        ("13/05/2010", TimemlValue(Kind.DAY, "2010-05-13")),
        ("05/13/2010", TimemlValue(Kind.DAY, "2010-05-13")),
        ("05/06/2010", Rejected(RejectReason.AMBIGUOUS_ORDER)),
        ("1999/02/30", Rejected(RejectReason.NOT_A_DATE)),
        ("February 30, 2001", Rejected(RejectReason.NOT_A_DATE)),
        ("June 3012", Rejected(RejectReason.OUT_OF_RANGE)),
        ("2nd century BC", Rejected(RejectReason.OUT_OF_RANGE)),
        ("Q3 2004", Rejected(RejectReason.QUARTER_FORMAT)),
        ("the first quarter of 2010", Rejected(RejectReason.QUARTER_FORMAT)),
        ("three years", Rejected(RejectReason.NOT_A_DATE)),
        ("every Monday", Rejected(RejectReason.NOT_A_DATE)),
        ("5 pm", Rejected(RejectReason.NOT_A_DATE)),
        ("", Rejected(RejectReason.NOT_A_DATE)),
    ],
)
def test_normalize_more_formats(surface, expected):
    assert normalize(surface) == expected


def test_reject_reasons_serialize_as_codes():
    assert {r.value for r in RejectReason} == {"ambiguous-order", "quarter-format", "not-a-date", "out-of-range"}


@pytest.mark.parametrize(
    "tags, spans",
    [
        ([B, I, O], [(0, 2)]),
        ([I, I, O], []),
        ([O, O, O], []),
        ([], []),
        ([B, B, I], [(0, 1), (1, 3)]),
        (["O", "I-TIME", "O", "B-TIME"], [(3, 4)]),
        ([B, O, I, I, B, I], [(0, 1), (4, 6)]),
    ],
)
def test_filter_tag_sequence(tags, spans):
    assert filter_tag_sequence(tags) == spans


def _surfaces(sentence):
    return [t.surface for t in identify(sentence)]


def test_identify_examples():
    duncan = "In 2003, Tim Duncan won his first NBA Finals MVP award"
    (t,) = identify(duncan)
    assert (t.surface, t.char_start, t.char_end) == ("2003", 3, 7)
    assert identify("James famously announced his decision") == []
    assert _surfaces("He returned to the Cleveland Cavaliers in 2014 and again in 2016.") == ["2014", "2016"]


@pytest.mark.parametrize(
    "sentence, surfaces",
    [
        ("Born on 21 July 1924 in Ohio.", ["21 July 1924"]),
        ("It opened on November 7, 2006, to crowds.", ["November 7, 2006"]),
        ("By June 2012 it had closed.", ["June 2012"]),
        ("Built in the 18th century.", ["the 18th century"]),
        ("Popular in the early ' 90s.", ["the early ' 90s"]),
        ("Sales in 2004 third quarter fell.", ["2004 third quarter"]),
        ("Filed 2019/11/25 and 2043/11/05.", ["2019/11/25", "2043/11/05"]),
        ("Code 031300010703 was logged.", []),
        ("He earned 4500 dollars and 12345 points.", []),
        ("Pi is 3.1415 roughly.", []),
        ("He is in his 90s now.", []),
        ("In fourteen fifty the town fell.", ["fourteen fifty"]),
        ("The war ran 1939-1945.", ["1939", "1945"]),
        ("Released 1999-12-31 worldwide.", ["1999-12-31"]),
    ],
)
def test_identify_formats(sentence, surfaces):
    assert _surfaces(sentence) == surfaces


@given(st.text(max_size=200))
def test_identify_spans_disjoint_sorted(sentence):
    found = identify(sentence)
    for t in found:
        assert sentence[t.char_start:t.char_end] == t.surface
    for a, b in zip(found, found[1:]):
        assert a.char_end <= b.char_start


@given(st.text(max_size=60))
def test_normalize_is_total(surface):
    assert isinstance(normalize(surface), (TimemlValue, Rejected))


def _values():
    def day(y, m, d):
        from chronograph.calendar import days_in_month

        return TimemlValue(Kind.DAY, f"{y:04d}-{m:02d}-{min(d, days_in_month(y, m)):02d}")

    return st.one_of(
        st.builds(day, st.integers(1, 2999), st.integers(1, 12), st.integers(1, 31)),
        st.builds(lambda y, m: TimemlValue(Kind.MONTH, f"{y:04d}-{m:02d}"), st.integers(1, 2999), st.integers(1, 12)),
        st.builds(lambda y: TimemlValue(Kind.YEAR, f"{y:04d}"), st.integers(1, 2999)),
        st.builds(lambda p: TimemlValue(Kind.DECADE, f"{p:03d}X"), st.integers(0, 299)),
        st.builds(lambda p: TimemlValue(Kind.CENTURY, f"{p:02d}XX"), st.integers(0, 29)),
    )


@given(_values())
def test_render_round_trip(value):
    assert normalize(render(value)) == value


@given(st.integers(1, 29))
def test_century_prefix_is_ordinal_minus_one(n):
    suffix = {1: "st", 2: "nd", 3: "rd"}.get(n % 10 if n not in (11, 12, 13) else 0, "th")
    assert normalize(f"{n}{suffix} century") == TimemlValue(Kind.CENTURY, f"{n - 1:02d}XX")
