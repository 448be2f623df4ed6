"""Marker-delimited TRC training instances.

An instance strings together consecutive span-bearing sentences of one
document::

    <s> [TIME] first sentence [/TIME] [TIME] second sentence [/TIME] </s>

``node_boundaries`` locate each sentence body inside the rendered text, and
``edges`` carry the (possibly subsampled) relation labels between node
positions ``0..M-1``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import RecordParseError, ValidationError
from .jsonl import dumps
from .sentencegraph import FULL, DensityPolicy, DocumentAnnotation, full_graph, sample_edges
from .timespan import TemporalRelation, TimeSpan, relation

BOS, EOS = "<s>", "</s>"
OPEN, CLOSE = "[TIME]", "[/TIME]"
_MARKERS = (BOS, EOS, OPEN, CLOSE)
_LABELS = (TemporalRelation.EARLIER, TemporalRelation.LATER, TemporalRelation.CONTEMPORARY)


def whitespace_tokens(text: str) -> int:
    return len(text.split())


@dataclass(frozen=True)
class PackingConfig:
    budget: int = 512
    max_nodes: int = 16
    tokenizer: Callable[[str], int] = field(default=whitespace_tokens, compare=False)

    def __post_init__(self):
        if self.budget <= 0:
            raise ValidationError(f"budget must be positive, got {self.budget}", field="budget")
        if self.max_nodes < 2:
            raise ValidationError(f"max_nodes must be at least 2, got {self.max_nodes}", field="max_nodes")


def render(bodies: Sequence[str]) -> tuple[str, tuple[tuple[int, int], ...]]:
    """Rendered instance text and the offsets of each body inside it."""
    parts = [BOS]
    pos = len(BOS)
    bounds = []
    for body in bodies:
        start = pos + 1 + len(OPEN) + 1
        bounds.append((start, start + len(body)))
        parts.extend((OPEN, body, CLOSE))
        pos = start + len(body) + 1 + len(CLOSE)
    parts.append(EOS)
    return " ".join(parts), tuple(bounds)


@dataclass(frozen=True)
class TrainingInstance:
    instance_id: str
    doc_id: str
    text: str
    node_boundaries: tuple[tuple[int, int], ...]
    spans: tuple[TimeSpan, ...]
    edges: tuple[tuple[int, int, TemporalRelation], ...]

    @property
    def size(self) -> int:
        return len(self.node_boundaries)

    @property
    def node_texts(self) -> list[str]:
        return [self.text[a:b] for a, b in self.node_boundaries]

    @classmethod
    def build(
        cls,
        instance_id: str,
        doc_id: str,
        bodies: Sequence[str],
        spans: Sequence[TimeSpan],
        policy: DensityPolicy = FULL,
        seed: int = 0,
    ) -> "TrainingInstance":
        text, bounds = render(bodies)
        graph = sample_edges(full_graph(instance_id, list(range(len(bodies))), list(spans)), policy, seed)
        return cls(instance_id, doc_id, text, bounds, tuple(spans), graph.edges)


def _has_marker(text: str) -> bool:
    return any(m in text for m in _MARKERS)


def pack(
    annotation: DocumentAnnotation,
    config: PackingConfig = PackingConfig(),
    policy: DensityPolicy = FULL,
    seed: int = 0,
    diagnostics: Optional[Counter] = None,
) -> list[TrainingInstance]:
    """Greedy contiguous grouping of span-bearing sentences into instances.

    A sentence that cannot fit the budget even on its own is skipped and
    tallied under ``"oversized"``; a trailing group of one sentence cannot
    form an edge and is tallied under ``"singleton"``.
    """
    tally = diagnostics if diagnostics is not None else Counter()
    instances: list[TrainingInstance] = []
    group: list = []

    def tokens(nodes) -> int:
        return config.tokenizer(render([n.text for n in nodes])[0])

    def flush():
        if len(group) >= 2:
            k = len(instances)
            instances.append(
                TrainingInstance.build(
                    f"{annotation.doc_id}:{k}",
                    annotation.doc_id,
                    [n.text for n in group],
                    [n.span for n in group],
                    policy,
                    seed,
                )
            )
        elif group:
            tally["singleton"] += 1
        group.clear()

    for node in annotation.scoped:
        if _has_marker(node.text):
            tally["marker_in_text"] += 1
            continue
        if tokens([node]) > config.budget:
            tally["oversized"] += 1
            continue
        if len(group) >= config.max_nodes or tokens([*group, node]) > config.budget:
            flush()
        group.append(node)
    flush()
    tally["instances"] += len(instances)
    return instances


def serialize(instance: TrainingInstance) -> str:
    """One JSON line (no trailing newline) with a fixed key order."""
    return dumps(
        {
            "instance_id": instance.instance_id,
            "doc_id": instance.doc_id,
            "text": instance.text,
            "node_boundaries": [list(b) for b in instance.node_boundaries],
            "spans": [s.to_json() for s in instance.spans],
            "edges": [[i, j, r.value] for i, j, r in instance.edges],
        }
    )


def _fail(message: str):
    raise RecordParseError(message)


def parse(line: str) -> TrainingInstance:
    """Inverse of :func:`serialize`; validates structure and labels."""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        _fail(f"malformed JSON: {exc}")
    if not isinstance(obj, dict):
        _fail("record is not a JSON object")
    for key in ("instance_id", "doc_id", "text", "node_boundaries", "spans", "edges"):
        if key not in obj:
            _fail(f"missing key {key!r}")
    text = obj["text"]
    if not isinstance(text, str):
        _fail("text is not a string")
    try:
        bounds = tuple((int(a), int(b)) for a, b in obj["node_boundaries"])
        spans = tuple(TimeSpan.from_json(s) for s in obj["spans"])
    except (TypeError, ValueError, KeyError) as exc:
        _fail(f"bad node_boundaries or spans: {exc}")
    m = len(bounds)
    if m < 2:
        _fail(f"instance needs at least 2 nodes, got {m}")
    if len(spans) != m:
        _fail(f"{len(spans)} spans for {m} nodes")
    if text.count(OPEN) != text.count(CLOSE) or text.count(BOS) != 1 or text.count(EOS) != 1:
        _fail("unbalanced markers")
    for a, b in bounds:
        if not 0 <= a <= b <= len(text):
            _fail(f"node boundary ({a}, {b}) outside text")
    bodies = [text[a:b] for a, b in bounds]
    if any(_has_marker(body) for body in bodies):
        _fail("nested markers inside a node body")
    if render(bodies) != (text, bounds):
        _fail("node boundaries do not match the rendered text")

    edges = []
    seen = set()
    for edge in obj["edges"]:
        try:
            i, j, label = edge
            label = TemporalRelation(label)
        except (TypeError, ValueError):
            _fail(f"malformed edge {edge!r}")
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < m and 0 <= j < m):
            _fail(f"edge ({i}, {j}) references a node outside 0..{m - 1}")
        if i == j or (i, j) in seen:
            _fail(f"self-loop or duplicate edge ({i}, {j})")
        if label not in _LABELS or relation(spans[i], spans[j]) is not label:
            _fail(f"edge ({i}, {j}) label {label.value!r} does not match its spans")
        seen.add((i, j))
        edges.append((i, j, label))
    return TrainingInstance(str(obj["instance_id"]), str(obj["doc_id"]), text, bounds, spans, tuple(edges))
