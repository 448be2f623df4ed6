"""SQuAD-style answer scoring and answer-preserving context truncation."""

from __future__ import annotations

import re
import string
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import TruncationError, ValidationError

_ARTICLES = re.compile(r"\b(a|an|the)\b")
_PUNCT = frozenset(string.punctuation)


@dataclass(frozen=True)
class QaExample:
    question: str
    context: str
    gold_answers: tuple[str, ...]

    def __post_init__(self):
        if not self.gold_answers:
            raise ValidationError("gold_answers must be non-empty; use [''] for unanswerable")


def normalize_answer(text: str) -> str:
    """Lowercase, drop punctuation and articles, collapse whitespace."""
    text = "".join(ch for ch in text.lower() if ch not in _PUNCT)
    text = _ARTICLES.sub(" ", text)
    return " ".join(text.split())


def exact_match(prediction: str, golds: Sequence[str]) -> int:
    norm = normalize_answer(prediction)
    return int(any(norm == normalize_answer(g) for g in golds))


def _f1_single(prediction: str, gold: str) -> float:
    pred_tokens = normalize_answer(prediction).split()
    gold_tokens = normalize_answer(gold).split()
    if not pred_tokens or not gold_tokens:
        return float(pred_tokens == gold_tokens)
    common = sum((Counter(pred_tokens) & Counter(gold_tokens)).values())
    if common == 0:
        return 0.0
    precision = common / len(pred_tokens)
    recall = common / len(gold_tokens)
    return 2 * precision * recall / (precision + recall)


def f1(prediction: str, golds: Sequence[str]) -> float:
    """Best token-level F1 against any gold answer."""
    return max((_f1_single(prediction, g) for g in golds), default=0.0)


def truncate_context(context: str, answers: Iterable[str], limit: int = 1500) -> str:
    """Cut ``context`` to at most ``limit`` characters, keeping an answer in view.

    The earliest occurrence of any answer is kept.  The window is the leftmost
    one containing it, nudged right to begin on a word when that still keeps
    the occurrence inside.  Without any occurrence the plain prefix is used.
    """
    if limit <= 0:
        raise ValidationError(f"limit must be positive, got {limit}", field="limit")
    if len(context) <= limit:
        return context
    hits = [(context.find(a), a) for a in answers if a]
    hits = [(pos, a) for pos, a in hits if pos >= 0]
    if not hits:
        return context[:limit]
    pos, answer = min(hits, key=lambda h: (h[0], -len(h[1])))
    if len(answer) > limit:
        raise TruncationError(f"answer of {len(answer)} chars cannot fit in {limit}")
    start = max(0, pos + len(answer) - limit)
    if start > 0 and not context[start - 1].isspace():
        for k in range(start + 1, pos + 1):
            if context[k - 1].isspace():
                start = k
                break
    return context[start:start + limit]


def score_predictions(predictions: Mapping[str, str], golds: Mapping[str, Sequence[str]]) -> dict:
    """Mean EM/F1 over every gold id; a missing prediction scores as empty."""
    if not golds:
        return {"em": 0.0, "f1": 0.0, "count": 0}
    em_total = f1_total = 0.0
    for qid, answers in golds.items():
        pred = predictions.get(qid, "")
        em_total += exact_match(pred, answers)
        f1_total += f1(pred, answers)
    n = len(golds)
    return {"em": em_total / n, "f1": f1_total / n, "count": n}
