"""Seeded synthetic documents for tests, demos and throughput checks."""

from __future__ import annotations

import random

_MONTHS = ["January", "February", "March", "April", "May", "June", "July",
           "August", "September", "October", "November", "December"]
_SUBJECTS = ["The council", "A local team", "The company", "Her brother", "The museum",
             "A small press", "The orchestra", "The regiment", "Our founder", "The league"]
_VERBS = ["opened a new branch", "signed the agreement", "moved to the coast",
          "won the regional cup", "published a report", "changed its name",
          "hired a director", "closed the old factory", "toured the region"]
_FILLER = ["Nobody expected this outcome.", "The decision was controversial.",
           "Critics praised the effort.", "Records from the period are sparse.",
           "It remains a popular topic."]


def _expression(rng: random.Random) -> str:
    year = rng.randint(1700, 2030)
    month = rng.choice(_MONTHS)
    day = rng.randint(1, 28)
    pick = rng.randrange(9)
    if pick == 0:
        return f"in {year}"
    if pick == 1:
        return f"in {month} {year}"
    if pick == 2:
        return f"on {day} {month} {year}"
    if pick == 3:
        return f"on {month} {day}, {year}"
    if pick == 4:
        return f"in the {year // 10 * 10}s"
    if pick == 5:
        n = year // 100 + 1
        return f"in the {n}th century"
    if pick == 6:
        return f"between {year} and {year + rng.randint(1, 12)}"
    if pick == 7:
        return f"in the {rng.choice(['first', 'third'])} quarter of {year}"
    return f"on {day:02d}/{rng.randint(1, 12):02d}/{year}"


def sentence(rng: random.Random) -> str:
    if rng.random() < 0.3:
        return rng.choice(_FILLER)
    return f"{rng.choice(_SUBJECTS)} {rng.choice(_VERBS)} {_expression(rng)}."


def document(rng: random.Random, n_sentences: int) -> str:
    return " ".join(sentence(rng) for _ in range(n_sentences))


def corpus(seed: int, n_docs: int, min_sentences: int = 2, max_sentences: int = 14) -> list[tuple[str, str]]:
    """``(doc_id, text)`` pairs, reproducible for a given seed."""
    rng = random.Random(seed)
    return [(f"doc-{k:06d}", document(rng, rng.randint(min_sentences, max_sentences))) for k in range(n_docs)]


def corpus_of_size(seed: int, n_bytes: int) -> list[tuple[str, str]]:
    """Documents totalling at least ``n_bytes`` of UTF-8 text."""
    rng = random.Random(seed)
    docs, total, k = [], 0, 0
    while total < n_bytes:
        text = document(rng, rng.randint(2, 14))
        docs.append((f"doc-{k:06d}", text))
        total += len(text.encode("utf-8")) + 1
        k += 1
    return docs
