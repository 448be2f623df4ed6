"""Sentence-level annotation and temporal relation graphs.

A document is split into sentences, each sentence gets its time expressions
normalized and hull-merged into a single span, and every ordered pair of
span-bearing sentences becomes a labeled edge.  Reduced-density graphs are
uniform edge subsamples whose randomness depends only on the global seed,
the document id and the policy.
"""

from __future__ import annotations

import enum
import hashlib
import math
import random
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .errors import GraphTooSmallError, UndefinedDensityError, ValidationError
from .timespan import TemporalRelation, TimeSpan, merge_hull, relation, span_of
from .timex import Kind, RawTimex, Rejected, RejectReason, TimemlValue, identify, normalize

Splitter = Callable[[str], list[tuple[int, int]]]
Edge = tuple[int, int, TemporalRelation]

# ---------------------------------------------------------------------------
# Sentence splitting

_ABBREVIATIONS = frozenset(
    """mr mrs ms dr prof sr jr st mt ft gen col lt sgt capt gov sen rep rev
    vs etc inc ltd co corp no vol pp fig al approx est dept univ ave
    jan feb mar apr jun jul aug sep sept oct nov dec""".split()
)
_TERMINATOR = re.compile(r"[.!?]+[\"'”’)\]]*(?=\s)")
_PARAGRAPH = re.compile(r"\n\s*\n")


def _is_boundary(text: str, m: re.Match) -> bool:
    if m.group(0)[0] == ".":
        word = re.search(r"(\w+)\.*$", text[: m.start() + 1].rstrip("."))
        if word:
            w = word.group(1)
            if w.lower() in _ABBREVIATIONS or (len(w) == 1 and w.isalpha()):
                return False
    nxt = re.match(r"\s+(\S)", text[m.end():])
    if not nxt:
        return True
    c = nxt.group(1)
    return c.isupper() or c.isdigit() or c in "\"'“‘(["


def split_sentences(text: str) -> list[tuple[int, int]]:
    """Offsets ``(start, end)`` of sentences; surrounding whitespace excluded."""
    cuts = {0, len(text)}
    for m in _TERMINATOR.finditer(text):
        if _is_boundary(text, m):
            cuts.add(m.end())
    for m in _PARAGRAPH.finditer(text):
        cuts.add(m.start())
        cuts.add(m.end())
    bounds = sorted(cuts)
    out = []
    for a, b in zip(bounds, bounds[1:]):
        chunk = text[a:b]
        stripped = chunk.strip()
        if not stripped:
            continue
        lead = len(chunk) - len(chunk.lstrip())
        out.append((a + lead, a + lead + len(stripped)))
    return out


# ---------------------------------------------------------------------------
# Annotation


@dataclass(frozen=True)
class SentenceNode:
    index: int
    text: str
    char_start: int
    char_end: int
    timexes: tuple[tuple[RawTimex, TimemlValue | Rejected], ...] = ()
    span: Optional[TimeSpan] = None

    @property
    def accepted(self) -> list[TimemlValue]:
        return [v for _, v in self.timexes if isinstance(v, TimemlValue)]

    def to_json(self) -> dict:
        items = []
        for t, v in self.timexes:
            item = {"text": t.surface, "start": t.char_start, "end": t.char_end}
            if isinstance(v, TimemlValue):
                item["value"] = v.canonical
            else:
                item["rejected_reason"] = v.reason.value
            items.append(item)
        return {
            "idx": self.index,
            "text": self.text,
            "char_start": self.char_start,
            "char_end": self.char_end,
            "timexes": items,
            "span": self.span.to_json() if self.span else None,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SentenceNode":
        timexes = []
        for item in obj["timexes"]:
            raw = RawTimex(item["text"], item["start"], item["end"])
            if "value" in item:
                value = value_from_canonical(item["value"])
            else:
                value = Rejected(RejectReason(item["rejected_reason"]))
            timexes.append((raw, value))
        span = TimeSpan.from_json(obj["span"]) if obj.get("span") else None
        return cls(obj["idx"], obj["text"], obj["char_start"], obj["char_end"], tuple(timexes), span)


def value_from_canonical(canonical: str) -> TimemlValue:
    kind = {10: Kind.DAY, 7: Kind.MONTH}.get(len(canonical))
    if kind is None:
        kind = Kind.CENTURY if canonical.endswith("XX") else Kind.DECADE if canonical.endswith("X") else Kind.YEAR
    return TimemlValue(kind, canonical)


@dataclass(frozen=True)
class DocumentAnnotation:
    doc_id: str
    sentences: tuple[SentenceNode, ...]

    @property
    def scoped(self) -> list[SentenceNode]:
        return [s for s in self.sentences if s.span is not None]

    def to_json(self) -> dict:
        return {"doc_id": self.doc_id, "sentences": [s.to_json() for s in self.sentences]}

    @classmethod
    def from_json(cls, obj: dict) -> "DocumentAnnotation":
        return cls(obj["doc_id"], tuple(SentenceNode.from_json(s) for s in obj["sentences"]))


def annotate_sentence(index: int, text: str, char_start: int, identifier=identify) -> SentenceNode:
    timexes = tuple((t, normalize(t)) for t in identifier(text))
    spans = [span_of(v) for _, v in timexes if isinstance(v, TimemlValue)]
    return SentenceNode(
        index, text, char_start, char_start + len(text), timexes, merge_hull(spans) if spans else None
    )


def annotate_document(
    doc_id: str,
    text: str,
    sentence_splitter: Splitter = split_sentences,
    identifier=identify,
) -> DocumentAnnotation:
    if not text:
        raise ValidationError("document text is empty", field="text")
    offsets = sentence_splitter(text)
    last = 0
    nodes = []
    for idx, (start, end) in enumerate(offsets):
        if not (last <= start < end <= len(text)):
            raise ValidationError(
                f"splitter produced invalid offsets ({start}, {end}) for document {doc_id!r} "
                f"of length {len(text)}",
                field="sentence_splitter",
            )
        last = end
        nodes.append(annotate_sentence(idx, text[start:end], start, identifier))
    return DocumentAnnotation(doc_id, tuple(nodes))


# ---------------------------------------------------------------------------
# Graphs


class DensityKind(str, enum.Enum):
    FULL = "full"
    LOG_OVER_N = "logn"
    INVERSE_N = "inv"


_POLICY_ALIASES = {
    "full": DensityKind.FULL, "1.0": DensityKind.FULL, "1": DensityKind.FULL,
    "logn": DensityKind.LOG_OVER_N, "log": DensityKind.LOG_OVER_N, "log_n": DensityKind.LOG_OVER_N,
    "inv": DensityKind.INVERSE_N, "inverse": DensityKind.INVERSE_N, "1/n": DensityKind.INVERSE_N,
}


@dataclass(frozen=True)
class DensityPolicy:
    """Edge density as a function of node count.

    ``FULL`` keeps every ordered pair, ``LOG_OVER_N`` targets ``log(n)/n``
    (natural log unless ``log_base`` says otherwise) and ``INVERSE_N``
    targets ``1/n``.
    """

    kind: DensityKind = DensityKind.FULL
    log_base: float = math.e

    @classmethod
    def named(cls, name: str, log_base: float = math.e) -> "DensityPolicy":
        try:
            return cls(_POLICY_ALIASES[name.lower()], log_base)
        except KeyError:
            raise ValidationError(
                f"unknown density policy {name!r}; expected one of full, logn, inv", field="density"
            ) from None

    def density(self, n: int) -> float | Fraction:
        if self.kind is DensityKind.FULL:
            return Fraction(1)
        if self.kind is DensityKind.INVERSE_N:
            return Fraction(1, n)
        return math.log(n) / math.log(self.log_base) / n

    def target_edges(self, n: int) -> int:
        pairs = n * (n - 1)
        if pairs == 0:
            return 0
        if self.kind is DensityKind.LOG_OVER_N:
            # D * n(n-1) simplifies to (n-1) * log n
            x = (n - 1) * math.log(n) / math.log(self.log_base)
        else:
            x = self.density(n) * pairs
        return min(max(math.floor(x + 0.5), 1), pairs)


FULL = DensityPolicy(DensityKind.FULL)


@dataclass(frozen=True)
class RelationGraph:
    doc_id: str
    nodes: tuple[int, ...]
    spans: tuple[TimeSpan, ...]
    edges: tuple[Edge, ...] = field(default=())

    def span_for(self) -> dict[int, TimeSpan]:
        return dict(zip(self.nodes, self.spans))

    def to_json(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "nodes": list(self.nodes),
            "spans": [s.to_json() for s in self.spans],
            "edges": [[i, j, r.value] for i, j, r in self.edges],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RelationGraph":
        try:
            graph = cls(
                obj["doc_id"],
                tuple(obj["nodes"]),
                tuple(TimeSpan.from_json(s) for s in obj["spans"]),
                tuple((i, j, TemporalRelation(r)) for i, j, r in obj["edges"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed graph record: {exc}") from None
        validate_graph(graph)
        return graph


def validate_graph(graph: RelationGraph) -> None:
    """Raise if the graph has self-loops, duplicates or inconsistent labels."""
    if len(graph.nodes) != len(graph.spans) or len(set(graph.nodes)) != len(graph.nodes):
        raise ValidationError(f"graph {graph.doc_id!r}: nodes and spans disagree")
    spans = graph.span_for()
    seen = set()
    for i, j, label in graph.edges:
        if i == j:
            raise ValidationError(f"graph {graph.doc_id!r}: self-loop on node {i}")
        if (i, j) in seen:
            raise ValidationError(f"graph {graph.doc_id!r}: duplicate edge ({i}, {j})")
        if i not in spans or j not in spans:
            raise ValidationError(f"graph {graph.doc_id!r}: edge ({i}, {j}) references unknown node")
        if relation(spans[i], spans[j]) is not label:
            raise ValidationError(f"graph {graph.doc_id!r}: edge ({i}, {j}) label {label.value} does not match spans")
        seen.add((i, j))


def full_graph(doc_id: str, nodes: Sequence[int], spans: Sequence[TimeSpan]) -> RelationGraph:
    edges = tuple(
        (nodes[a], nodes[b], relation(spans[a], spans[b]))
        for a in range(len(nodes))
        for b in range(len(nodes))
        if a != b
    )
    return RelationGraph(doc_id, tuple(nodes), tuple(spans), edges)


def build_graph(nodes: Iterable[SentenceNode], doc_id: str = "") -> RelationGraph:
    """Fully connected digraph over the span-bearing sentences."""
    scoped = [n for n in nodes if n.span is not None]
    if len(scoped) < 2:
        raise GraphTooSmallError(f"need at least 2 span-bearing sentences, got {len(scoped)}")
    return full_graph(doc_id, [n.index for n in scoped], [n.span for n in scoped])


def stable_hash64(text: str) -> int:
    return int.from_bytes(hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest(), "little")


def derive_seed(seed: int, doc_id: str, policy: DensityPolicy) -> int:
    """Per-document RNG seed; independent of processing order."""
    return (seed & (2**64 - 1)) << 64 | stable_hash64(f"{policy.kind.value}\x1f{doc_id}")


def sample_edges(graph: RelationGraph, policy: DensityPolicy, seed: int) -> RelationGraph:
    """Uniform subsample of the edges, kept in their original order."""
    if policy.kind is DensityKind.FULL:
        return graph
    k = policy.target_edges(len(graph.nodes))
    if k >= len(graph.edges):
        return graph
    rng = random.Random(derive_seed(seed, graph.doc_id, policy))
    keep = sorted(rng.sample(range(len(graph.edges)), k))
    return RelationGraph(graph.doc_id, graph.nodes, graph.spans, tuple(graph.edges[i] for i in keep))


def density(graph: RelationGraph) -> Fraction:
    n = len(graph.nodes)
    if n < 2:
        raise UndefinedDensityError(f"density needs at least 2 nodes, got {n}")
    return Fraction(len(graph.edges), n * (n - 1))


# ---------------------------------------------------------------------------
# Corpus statistics


@dataclass
class StatsReport:
    documents: int = 0
    sentences: int = 0
    scoped_sentences: int = 0
    timex_histogram: dict[int, int] = field(default_factory=dict)
    relation_counts: dict[str, int] = field(
        default_factory=lambda: {r.value: 0 for r in TemporalRelation if r is not TemporalRelation.NULL}
    )

    @property
    def scoped_fraction(self) -> float:
        return self.scoped_sentences / self.sentences if self.sentences else 0.0

    @property
    def share_at_most_two(self) -> float:
        """Share of span-bearing sentences with at most two accepted expressions."""
        if not self.scoped_sentences:
            return 0.0
        small = sum(c for k, c in self.timex_histogram.items() if k <= 2)
        return small / self.scoped_sentences

    def to_json(self) -> dict:
        return {
            "documents": self.documents,
            "sentences": self.sentences,
            "scoped_sentences": self.scoped_sentences,
            "scoped_fraction": self.scoped_fraction,
            "share_at_most_two": self.share_at_most_two,
            "timex_histogram": {str(k): v for k, v in sorted(self.timex_histogram.items())},
            "relation_counts": dict(self.relation_counts),
        }


def corpus_stats(annotations: Iterable[DocumentAnnotation]) -> StatsReport:
    report = StatsReport()
    hist: Counter = Counter()
    labels: Counter = Counter()
    for doc in annotations:
        report.documents += 1
        report.sentences += len(doc.sentences)
        spans = []
        for s in doc.sentences:
            if s.span is not None:
                hist[len(s.accepted)] += 1
                spans.append(s.span)
        report.scoped_sentences += len(spans)
        for i, a in enumerate(spans):
            for j, b in enumerate(spans):
                if i != j:
                    labels[relation(a, b).value] += 1
    report.timex_histogram = dict(sorted(hist.items()))
    for k in report.relation_counts:
        report.relation_counts[k] = labels[k]
    return report
