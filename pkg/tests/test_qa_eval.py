import random

import pytest
from hypothesis import given, strategies as st

from chronograph.errors import TruncationError, ValidationError
from chronograph.qa_eval import (
    QaExample,
    exact_match,
    f1,
    normalize_answer,
    score_predictions,
    truncate_context,
)


def test_normalize_answer():
    assert normalize_answer("  The Miami   HEAT! ") == "miami heat"
    assert normalize_answer("an apple, a day") == "apple day"


@pytest.mark.parametrize(
    "pred, golds, em",
    [
        ("Mount Holyoke College", ["Mount Holyoke College"], 1),
        ("the Miami Heat", ["Miami Heat"], 1),
        ("Cleveland", ["Miami Heat"], 0),
        ("cleveland cavaliers.", ["Miami Heat", "Cleveland Cavaliers"], 1),
    ],
)
def test_exact_match(pred, golds, em):
    assert exact_match(pred, golds) == em


def test_f1_values():
    assert f1("Miami Heat", ["Miami Heat"]) == 1.0
    # P = 2/2, R = 2/3 -> 2 * (2/3) / (5/3) = 0.8
    assert f1("Holyoke College", ["Mount Holyoke College"]) == pytest.approx(0.8, abs=1e-12)
    assert f1("", [""]) == 1.0
    assert f1("", ["Miami"]) == 0.0
    assert f1("Miami", [""]) == 0.0
    assert f1("x", ["y", "x"]) == 1.0


def test_example_requires_gold():
    with pytest.raises(ValidationError):
        QaExample("q", "c", ())


words = st.lists(st.sampled_from(["the", "heat", "miami", "cavs", "a", "won", "2010", "title,"]), max_size=8).map(" ".join)


@given(words, words)
def test_score_properties(pred, gold):
    e, f = exact_match(pred, [gold]), f1(pred, [gold])
    assert 0 <= f <= 1
    if e:
        assert f == 1.0
    assert f == pytest.approx(f1(gold, [pred]))


def test_truncate_short_context_unchanged():
    assert truncate_context("short", ["x"], 1500) == "short"


def test_truncate_keeps_late_answer():
    rng = random.Random(0)
    filler = " ".join(rng.choice(["alpha", "beta", "gamma", "delta"]) for _ in range(600))
    context = filler[:2000] + " Mount Holyoke College " + filler
    out = truncate_context(context, ["Mount Holyoke College"], 1500)
    assert len(out) <= 1500
    assert "Mount Holyoke College" in out
    assert out in context
    assert out[0] != " " and context[context.index(out) - 1] == " "


def test_truncate_without_answer_is_prefix():
    context = "abc " * 1000
    assert truncate_context(context, ["zzz"], 1500) == context[:1500]


def test_truncate_errors():
    with pytest.raises(TruncationError):
        truncate_context("x" * 50 + "answer" * 10, ["answer" * 10], 20)
    with pytest.raises(ValidationError):
        truncate_context("abc", [], 0)


@given(st.text(alphabet="ab xy", min_size=0, max_size=400), st.integers(1, 20), st.integers(5, 120), st.data())
def test_truncate_properties(context, alen, limit, data):
    if len(context) > alen:
        pos = data.draw(st.integers(0, len(context) - alen))
        answer = context[pos:pos + alen]
    else:
        answer = "q"
    if len(answer) > limit and answer in context and len(context) > limit:
        return
    out = truncate_context(context, [answer], limit)
    assert len(out) <= limit
    assert out in context
    if answer in context:
        assert answer in out
    assert truncate_context(out, [answer], limit) == out


def test_score_predictions():
    golds = {"1": ["Miami Heat"], "2": ["Mount Holyoke College"], "3": [""]}
    preds = {"1": "the Miami Heat", "2": "Holyoke College"}
    result = score_predictions(preds, golds)
    assert result["count"] == 3
    assert result["em"] == pytest.approx(2 / 3)
    assert result["f1"] == pytest.approx((1 + 0.8 + 1) / 3)
