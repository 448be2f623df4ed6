import random

import pytest
from hypothesis import given, strategies as st

from chronograph.calendar import ordinal_of
from chronograph.errors import OracleRangeError, ValidationError
from chronograph.timespan import (
    TemporalRelation as R,
    TimeSpan,
    merge_hull,
    overlap_score,
    relation,
    relation_oracle,
    span_of,
)
from chronograph.timex import Kind, TimemlValue


def years(a, b):
    return TimeSpan(ordinal_of(a), ordinal_of(b))


@pytest.mark.parametrize(
    "value, start, end",
    [
        (TimemlValue(Kind.MONTH, "2012-06"), "2012-06-01", "2012-07-01"),
        (TimemlValue(Kind.DAY, "1924-07-21"), "1924-07-21", "1924-07-22"),
        (TimemlValue(Kind.CENTURY, "17XX"), "1700-01-01", "1800-01-01"),
        (TimemlValue(Kind.DECADE, "199X"), "1990-01-01", "2000-01-01"),
        (TimemlValue(Kind.YEAR, "2003"), "2003-01-01", "2004-01-01"),
        (TimemlValue(Kind.MONTH, "1999-12"), "1999-12-01", "2000-01-01"),
        (TimemlValue(Kind.CENTURY, "00XX"), "0001-01-01", "0100-01-01"),
        (TimemlValue(Kind.CENTURY, "29XX"), "2900-01-01", "3000-01-01"),
    ],
)
def test_span_of(value, start, end):
    assert span_of(value) == TimeSpan.from_iso(start, end)


def test_hull_duncan():
    spans = [years(2003, 2004), years(2005, 2006), years(2007, 2008)]
    assert merge_hull(spans) == TimeSpan.from_iso("2003-01-01", "2008-01-01")


def test_hull_trivia():
    s = years(2000, 2001)
    assert merge_hull([s]) == s
    assert merge_hull([s, s]) == s
    with pytest.raises(ValidationError):
        merge_hull([])


def test_span_requires_positive_length():
    with pytest.raises(ValidationError):
        TimeSpan(5, 5)


RELATION_CASES = [
    (years(2003, 2004), years(2005, 2006), R.EARLIER),
    (years(2010, 2012), years(2011, 2014), R.CONTEMPORARY),
    (years(2000, 2001), years(2001, 2002), R.EARLIER),
    (years(2001, 2002), years(2000, 2001), R.LATER),
    (TimeSpan(700000, 700001), TimeSpan(700000, 700001), R.CONTEMPORARY),
]


@pytest.mark.parametrize("a, b, expected", RELATION_CASES)
def test_relation_and_oracle(a, b, expected):
    assert relation(a, b) is expected
    assert relation_oracle(a, b) is expected


def test_relation_null():
    assert relation(None, years(2014, 2015)) is R.NULL
    assert relation(years(2014, 2015), None) is R.NULL


def test_oracle_window():
    with pytest.raises(OracleRangeError):
        relation_oracle(years(1000, 2000), years(1500, 1501))


def test_oracle_agreement_random():
    rng = random.Random(3)
    lo, hi = ordinal_of(1900), ordinal_of(2100)
    for _ in range(2000):
        a0, b0 = rng.randrange(lo, hi), rng.randrange(lo, hi)
        a = TimeSpan(a0, a0 + rng.randint(1, 3000))
        b = TimeSpan(b0, b0 + rng.randint(1, 3000))
        assert relation(a, b) is relation_oracle(a, b)


def test_overlap_partial_month():
    gold = TimeSpan.from_iso("2023-01-01", "2023-01-24")
    pred = TimeSpan.from_iso("2023-01-01", "2023-02-01")
    m = overlap_score(gold, pred)
    assert m.precision == pytest.approx(23 / 31)
    assert round(m.precision, 3) == 0.742
    assert m.recall == 1.0
    assert round(m.f1, 3) == 0.852


def test_overlap_trivia():
    s = years(2000, 2002)
    assert overlap_score(s, s).f1 == 1.0
    m = overlap_score(years(2000, 2001), years(2001, 2002))
    assert (m.precision, m.recall, m.f1) == (0, 0, 0)


spans = st.builds(
    lambda s, n: TimeSpan(s, s + n), st.integers(ordinal_of(1900), ordinal_of(2100)), st.integers(1, 5000)
)


@given(spans, spans)
def test_trichotomy_and_antisymmetry(a, b):
    r = relation(a, b)
    assert r in (R.EARLIER, R.LATER, R.CONTEMPORARY)
    assert relation(b, a) is r.inverse()


@given(spans, spans, spans)
def test_earlier_transitive(a, b, c):
    if relation(a, b) is R.EARLIER and relation(b, c) is R.EARLIER:
        assert relation(a, c) is R.EARLIER


@given(st.lists(spans, min_size=1, max_size=8), st.randoms())
def test_hull_properties(items, rnd):
    hull = merge_hull(items)
    assert all(s in hull for s in items)
    shuffled = list(items)
    rnd.shuffle(shuffled)
    assert merge_hull(shuffled) == hull
    assert merge_hull([hull, *items]) == hull


@given(spans, spans)
def test_overlap_symmetry(a, b):
    m, n = overlap_score(a, b), overlap_score(b, a)
    assert m.precision == n.recall and m.recall == n.precision
    assert m.f1 == pytest.approx(n.f1)
    for v in (m.precision, m.recall, m.f1):
        assert 0 <= v <= 1


def test_span_json_end_exclusive():
    s = span_of(TimemlValue(Kind.MONTH, "2012-06"))
    assert s.to_json() == {"start": "2012-06-01", "end": "2012-07-01"}
    assert TimeSpan.from_json(s.to_json()) == s
