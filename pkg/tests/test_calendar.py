import datetime
import random

import pytest
from hypothesis import given, strategies as st

from chronograph.calendar import (
    MAX_ORDINAL,
    CivilDate,
    days_in_month,
    from_day_ordinal,
    next_calendar_day,
    to_day_ordinal,
)
from chronograph.errors import OutOfRangeError, ValidationError

# Frozen from a day-by-day counting loop starting at 0001-01-01.
ORDINAL_2012_06_01 = 734654


def _count_days_from_epoch(target):
    date, n = CivilDate(1, 1, 1), 0
    while date != target:
        date = next_calendar_day(date)
        n += 1
    return n


@pytest.mark.parametrize(
    "date, expected",
    [
        (CivilDate(1, 1, 1), 0),
        (CivilDate(1, 2, 1), 31),
        (CivilDate(2012, 6, 1), ORDINAL_2012_06_01),
    ],
)
def test_to_day_ordinal_examples(date, expected):
    assert to_day_ordinal(date) == expected


def test_brute_force_count_matches_frozen_value():
    assert _count_days_from_epoch(CivilDate(2012, 6, 1)) == ORDINAL_2012_06_01


def test_from_day_ordinal_examples():
    assert from_day_ordinal(0) == CivilDate(1, 1, 1)
    assert from_day_ordinal(59) == CivilDate(1, 3, 1)
    leap_day = CivilDate(2000, 2, 29)
    assert from_day_ordinal(to_day_ordinal(leap_day)) == leap_day


@pytest.mark.parametrize("year, month, n", [(2000, 2, 29), (1900, 2, 28), (2012, 6, 30), (2004, 2, 29), (2001, 1, 31)])
def test_days_in_month(year, month, n):
    assert days_in_month(year, month) == n


@pytest.mark.parametrize("month", [0, 13])
def test_days_in_month_rejects_bad_month(month):
    with pytest.raises(ValidationError) as info:
        days_in_month(2000, month)
    assert info.value.field == "month"


@pytest.mark.parametrize(
    "fields, bad",
    [((2001, 2, 29), "day"), ((2000, 13, 1), "month"), ((0, 1, 1), "year"), ((3001, 1, 1), "year"), ((2000, 4, 31), "day")],
)
def test_invalid_dates_name_field(fields, bad):
    with pytest.raises(ValidationError) as info:
        CivilDate(*fields)
    assert info.value.field == bad


def test_from_day_ordinal_range():
    with pytest.raises(OutOfRangeError):
        from_day_ordinal(-1)
    with pytest.raises(OutOfRangeError):
        from_day_ordinal(MAX_ORDINAL + 1)
    assert from_day_ordinal(MAX_ORDINAL) == CivilDate(3000, 1, 1)
    assert from_day_ordinal(MAX_ORDINAL - 1) == CivilDate(2999, 12, 31)


def test_exhaustive_round_trip_and_successor():
    date = CivilDate(1, 1, 1)
    expected = 0
    while date.year <= 2999:
        assert to_day_ordinal(date) == expected
        assert from_day_ordinal(expected) == date
        date = next_calendar_day(date)
        expected += 1
    assert expected == MAX_ORDINAL


def test_matches_stdlib_on_sample():
    rng = random.Random(11)
    for _ in range(10_000):
        n = rng.randrange(MAX_ORDINAL)
        d = datetime.date.fromordinal(n + 1)
        assert to_day_ordinal(CivilDate(d.year, d.month, d.day)) == n


dates = st.builds(
    lambda y, m, frac: CivilDate(y, m, 1 + int(frac * days_in_month(y, m)) % days_in_month(y, m)),
    st.integers(1, 2999),
    st.integers(1, 12),
    st.floats(0, 1, exclude_max=True),
)


@given(dates, dates)
def test_monotone(a, b):
    assert (a < b) == (to_day_ordinal(a) < to_day_ordinal(b))


def test_isoformat_zero_padded():
    assert CivilDate(33, 7, 4).isoformat() == "0033-07-04"
    assert CivilDate.fromisoformat("0033-07-04") == CivilDate(33, 7, 4)
