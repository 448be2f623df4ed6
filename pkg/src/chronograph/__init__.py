"""Time-expression normalization, temporal relation graphs and training-instance packing."""

__version__ = "0.1.0"

from .calendar import CivilDate, from_day_ordinal, to_day_ordinal
from .errors import ValidationError
from .instances import PackingConfig, TrainingInstance, pack, parse, serialize
from .qa_eval import exact_match, f1, truncate_context
from .sentencegraph import (
    DensityPolicy,
    DocumentAnnotation,
    RelationGraph,
    annotate_document,
    build_graph,
    corpus_stats,
    density,
    sample_edges,
)
from .timespan import TemporalRelation, TimeSpan, merge_hull, overlap_score, relation, span_of
from .timex import Kind, Rejected, TimemlValue, identify, normalize
from .trc_math import TrcBatch, TrcParameters, grad_check, trc_loss

__all__ = [
    "CivilDate", "DensityPolicy", "DocumentAnnotation", "Kind", "PackingConfig", "Rejected",
    "RelationGraph", "TemporalRelation", "TimeSpan", "TimemlValue", "TrainingInstance", "TrcBatch",
    "TrcParameters", "ValidationError", "annotate_document", "build_graph", "corpus_stats", "density",
    "exact_match", "f1", "from_day_ordinal", "grad_check", "identify", "merge_hull", "normalize",
    "overlap_score", "pack", "parse", "relation", "sample_edges", "serialize", "span_of",
    "to_day_ordinal", "trc_loss", "truncate_context",
]
