"""Command-line front end for the annotation, graph and packing pipeline.

Every subcommand reads its inputs, validates its flags, and writes one JSONL
output atomically together with a ``<out>.config.json`` sidecar recording the
settings that determine the output bytes.  Worker threads parallelize the
per-document work; results are always written in input order.
"""

from __future__ import annotations

import argparse
import gzip
import json
import os
import sys
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

from . import __version__
from .errors import GraphTooSmallError, ValidationError
from .instances import PackingConfig, pack, serialize
from .jsonl import GZIP_MAGIC, dumps, read_records, write_atomic
from .qa_eval import score_predictions
from .sentencegraph import (
    DensityPolicy,
    DocumentAnnotation,
    RelationGraph,
    annotate_document,
    build_graph,
    corpus_stats,
    sample_edges,
)
from .timespan import TimeSpan, overlap_score
from .trc_math import TrcParameters, grad_check, random_batch

THREADS_ENV = "CHRONOGRAPH_THREADS"


@dataclass(frozen=True)
class PipelineConfig:
    command: str
    input: str
    output: Optional[str]
    seed: int = 0
    density: str = "full"
    max_tokens: int = 512
    max_nodes: int = 16
    threads: int = 1

    def __post_init__(self):
        if self.threads < 1:
            raise ValidationError(f"--threads must be >= 1, got {self.threads}", field="threads")
        if self.seed < 0:
            raise ValidationError(f"--seed must be non-negative, got {self.seed}", field="seed")
        DensityPolicy.named(self.density)
        PackingConfig(budget=self.max_tokens, max_nodes=self.max_nodes)

    @property
    def policy(self) -> DensityPolicy:
        return DensityPolicy.named(self.density)

    def sidecar(self) -> dict:
        # thread count never changes output bytes, so it is left out
        record = asdict(self)
        del record["threads"]
        record["version"] = __version__
        return record


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chronograph", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"chronograph {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def stage(name: str, help: str, out_required: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("--in", dest="input", required=True)
        p.add_argument("--out", dest="output", required=out_required)
        p.add_argument("--format", choices=["jsonl"], default="jsonl")
        p.add_argument("--threads", type=int, default=None)
        return p

    p = stage("annotate", "split and normalize documents (.txt one per line, or .jsonl {doc_id, text})")
    p.add_argument("--seed", type=int, default=0)
    stage("graph", "fully connected relation graph per annotated document")
    p = stage("sample", "subsample graph edges under a density policy")
    p.add_argument("--density", default="full", choices=["full", "logn", "inv"])
    p.add_argument("--seed", type=int, default=0)
    p = stage("pack", "pack annotated documents into training instances")
    p.add_argument("--density", default="full", choices=["full", "logn", "inv"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-tokens", type=int, default=512)
    p.add_argument("--max-nodes", type=int, default=16)
    stage("stats", "corpus statistics over annotated documents", out_required=False)
    stage("score-spans", "day-overlap P/R/F1 over {gold, pred} span records", out_required=False)
    p = stage("score-qa", "EM/F1 of {id, prediction} records against {id, answers}", out_required=False)
    p.add_argument("--gold", required=True)

    p = sub.add_parser("trc-check", help="finite-difference check of the relation-head gradients")
    p.add_argument("--d", type=int, default=16)
    p.add_argument("--h", type=int, default=16)
    p.add_argument("--edges", type=int, default=32)
    p.add_argument("--nodes", type=int, default=10)
    p.add_argument("--batches", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epsilon", type=float, default=1e-6)
    p.add_argument("--tolerance", type=float, default=1e-5)
    return parser


# ---------------------------------------------------------------------------
# input helpers


def _text_lines(path: str) -> Iterator[str]:
    with open(path, "rb") as fh:
        head = fh.read(2)
    opener = gzip.open if head == GZIP_MAGIC else open
    with opener(path, "rt", encoding="utf-8", newline="\n") as fh:
        for line in fh:
            yield line.rstrip("\r\n")


def read_documents(path: str) -> list[tuple[str, str]]:
    """``(doc_id, text)`` pairs from a .jsonl file or a one-document-per-line text file."""
    name = path[:-3] if path.endswith(".gz") else path
    if name.endswith(".jsonl"):
        docs = []
        for k, rec in enumerate(read_records(path), 1):
            try:
                docs.append((str(rec["doc_id"]), rec["text"]))
            except (KeyError, TypeError):
                raise ValidationError(f"{path}: record {k} needs doc_id and text") from None
        return docs
    return [(f"doc-{n}", line) for n, line in enumerate(_text_lines(path), 1) if line.strip()]


def _records(path: str) -> list[dict]:
    try:
        return list(read_records(path))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _annotations(path: str) -> list[DocumentAnnotation]:
    try:
        return [DocumentAnnotation.from_json(r) for r in _records(path)]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"{path}: malformed annotation record ({exc})") from None


def _map(fn: Callable, items: Sequence, threads: int) -> list:
    if threads == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _emit(cfg: PipelineConfig, lines: Iterable[str]) -> int:
    count = write_atomic(cfg.output, lines)
    write_atomic(f"{cfg.output}.config.json", [json.dumps(cfg.sidecar(), sort_keys=True)])
    return count


def _report(obj: dict, cfg: PipelineConfig) -> None:
    line = json.dumps(obj, sort_keys=True)
    if cfg.output:
        _emit(cfg, [line])
    else:
        print(line)


# ---------------------------------------------------------------------------
# subcommands


def cmd_annotate(cfg: PipelineConfig) -> int:
    docs = read_documents(cfg.input)
    out = _map(lambda d: dumps(annotate_document(*d).to_json()), docs, cfg.threads)
    _emit(cfg, out)
    print(f"annotate: {len(out)} documents", file=sys.stderr)
    return 0


def _graph_line(doc: DocumentAnnotation) -> Optional[str]:
    try:
        return dumps(build_graph(doc.sentences, doc.doc_id).to_json())
    except GraphTooSmallError:
        return None


def cmd_graph(cfg: PipelineConfig) -> int:
    lines = _map(_graph_line, _annotations(cfg.input), cfg.threads)
    kept = [x for x in lines if x is not None]
    _emit(cfg, kept)
    print(f"graph: {len(kept)} graphs, {len(lines) - len(kept)} documents skipped", file=sys.stderr)
    return 0


def cmd_sample(cfg: PipelineConfig) -> int:
    graphs = [RelationGraph.from_json(r) for r in _records(cfg.input)]
    policy = cfg.policy
    out = _map(lambda g: dumps(sample_edges(g, policy, cfg.seed).to_json()), graphs, cfg.threads)
    _emit(cfg, out)
    print(f"sample: {len(out)} graphs at density {policy.kind.value}", file=sys.stderr)
    return 0


def cmd_pack(cfg: PipelineConfig) -> int:
    docs = _annotations(cfg.input)
    packing = PackingConfig(budget=cfg.max_tokens, max_nodes=cfg.max_nodes)
    policy = cfg.policy

    def one(doc):
        tally = Counter()
        return [serialize(i) for i in pack(doc, packing, policy, cfg.seed, tally)], tally

    results = _map(one, docs, cfg.threads)
    total = Counter()
    for _, tally in results:
        total.update(tally)
    _emit(cfg, (line for lines, _ in results for line in lines))
    summary = ", ".join(f"{k}={total[k]}" for k in sorted(total))
    print(f"pack: {summary or 'instances=0'}", file=sys.stderr)
    return 0


def cmd_stats(cfg: PipelineConfig) -> int:
    _report(corpus_stats(_annotations(cfg.input)).to_json(), cfg)
    return 0


def cmd_score_spans(cfg: PipelineConfig) -> int:
    recs = _records(cfg.input)
    if not recs:
        raise ValidationError(f"{cfg.input}: no span records")
    sums = Counter()
    for k, rec in enumerate(recs, 1):
        try:
            gold, pred = TimeSpan.from_json(rec["gold"]), TimeSpan.from_json(rec["pred"])
        except (KeyError, TypeError):
            raise ValidationError(f"{cfg.input}: record {k} needs gold and pred spans") from None
        m = overlap_score(gold, pred)
        sums["precision"] += m.precision
        sums["recall"] += m.recall
        sums["f1"] += m.f1
        sums["exact"] += gold == pred
    n = len(recs)
    _report({"precision": sums["precision"] / n, "recall": sums["recall"] / n,
             "f1": sums["f1"] / n, "exact": sums["exact"] / n, "count": n}, cfg)
    return 0


def cmd_score_qa(cfg: PipelineConfig, gold_path: str) -> int:
    try:
        preds = {str(r["id"]): r["prediction"] for r in _records(cfg.input)}
        golds = {str(r["id"]): list(r["answers"]) for r in _records(gold_path)}
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed QA record ({exc})") from None
    _report(score_predictions(preds, golds), cfg)
    return 0


def cmd_trc_check(args) -> int:
    for name in ("d", "h", "edges", "batches"):
        if getattr(args, name) < 1:
            raise ValidationError(f"--{name} must be positive", field=name)
    if args.nodes < 2 or args.edges > args.nodes * (args.nodes - 1):
        raise ValidationError("--edges must be at most nodes*(nodes-1) with nodes >= 2", field="edges")
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for _ in range(args.batches):
        params = TrcParameters.random(args.d, args.h, rng)
        worst = max(worst, grad_check(params, random_batch(rng, args.nodes, args.d, args.edges), args.epsilon))
    print(f"max relative error: {worst:.3e}")
    if worst >= args.tolerance:
        print(f"error: exceeds tolerance {args.tolerance:g}", file=sys.stderr)
        return 1
    return 0


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "trc-check":
        return cmd_trc_check(args)
    cfg = PipelineConfig(
        command=args.command,
        input=args.input,
        output=args.output,
        seed=getattr(args, "seed", 0),
        density=getattr(args, "density", "full"),
        max_tokens=getattr(args, "max_tokens", 512),
        max_nodes=getattr(args, "max_nodes", 16),
        threads=args.threads if args.threads is not None else _default_threads(),
    )
    if not Path(cfg.input).is_file():
        raise FileNotFoundError(f"no such input file: {cfg.input}")
    handlers = {
        "annotate": cmd_annotate,
        "graph": cmd_graph,
        "sample": cmd_sample,
        "pack": cmd_pack,
        "stats": cmd_stats,
        "score-spans": cmd_score_spans,
    }
    if args.command == "score-qa":
        return cmd_score_qa(cfg, args.gold)
    return handlers[args.command](cfg)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        return run(argv)
    except ValidationError as exc:
        print(f"error: {' '.join(str(exc).split())}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
