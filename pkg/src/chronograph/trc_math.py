"""Reference numerics for the relation head and the pre-training losses.

The relation head scores a directed edge ``(i, j)`` from the concatenation
``[h_i; h_j]`` of two node representations through a two-layer MLP::

    z = [h_i; h_j] @ W1 + b1
    a = relu(z)
    s = a @ W2 + b2            # 3 class scores
    p = softmax(s)

Class order is (earlier, later, contemporary).  All arithmetic is float64
and every gradient is written out by hand; :func:`grad_check` compares them
against central differences.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionError, ValidationError
from .timespan import TemporalRelation

CLASSES = (TemporalRelation.EARLIER, TemporalRelation.LATER, TemporalRelation.CONTEMPORARY)
_CLASS_INDEX = {c: k for k, c in enumerate(CLASSES)}

ACTIVATIONS: dict[str, tuple[Callable, Callable]] = {
    "relu": (lambda z: np.maximum(z, 0.0), lambda z: (z > 0).astype(z.dtype)),
    "tanh": (np.tanh, lambda z: 1.0 - np.tanh(z) ** 2),
}


@dataclass
class TrcParameters:
    W1: np.ndarray  # (2d, h)
    b1: np.ndarray  # (h,)
    W2: np.ndarray  # (h, 3)
    b2: np.ndarray  # (3,)
    activation: str = "relu"

    def __post_init__(self):
        for name in ("W1", "b1", "W2", "b2"):
            setattr(self, name, np.asarray(getattr(self, name), dtype=np.float64))
        two_d, h = self.W1.shape if self.W1.ndim == 2 else (None, None)
        if two_d is None or two_d % 2 or self.b1.shape != (h,) or self.W2.shape != (h, 3) or self.b2.shape != (3,):
            raise DimensionError(
                f"inconsistent parameter shapes W1{self.W1.shape} b1{self.b1.shape} "
                f"W2{self.W2.shape} b2{self.b2.shape}"
            )
        if not all(np.isfinite(p).all() for p in self.arrays().values()):
            raise ValidationError("parameters must be finite")
        if self.activation not in ACTIVATIONS:
            raise ValidationError(f"unknown activation {self.activation!r}", field="activation")

    @property
    def d(self) -> int:
        return self.W1.shape[0] // 2

    @property
    def h(self) -> int:
        return self.W1.shape[1]

    def arrays(self) -> dict[str, np.ndarray]:
        return {"W1": self.W1, "b1": self.b1, "W2": self.W2, "b2": self.b2}

    @classmethod
    def zeros(cls, d: int, h: int | None = None) -> "TrcParameters":
        h = d if h is None else h
        return cls(np.zeros((2 * d, h)), np.zeros(h), np.zeros((h, 3)), np.zeros(3))

    @classmethod
    def random(cls, d: int, h: int | None = None, rng: np.random.Generator | None = None, scale: float = 1.0):
        rng = np.random.default_rng(0) if rng is None else rng
        h = d if h is None else h
        return cls(
            rng.normal(0, scale / math.sqrt(2 * d), (2 * d, h)),
            rng.normal(0, 0.1 * scale, h),
            rng.normal(0, scale / math.sqrt(h), (h, 3)),
            rng.normal(0, 0.1 * scale, 3),
        )

    def save(self, path: str | Path) -> None:
        """Little-endian: int32 d, int32 h, then W1, b1, W2, b2 as float64, row-major."""
        body = b"".join(np.ascontiguousarray(a, dtype="<f8").tobytes() for a in self.arrays().values())
        Path(path).write_bytes(struct.pack("<ii", self.d, self.h) + body)

    @classmethod
    def load(cls, path: str | Path) -> "TrcParameters":
        blob = Path(path).read_bytes()
        if len(blob) < 8:
            raise ValidationError("parameter file too short for header")
        d, h = struct.unpack("<ii", blob[:8])
        if d <= 0 or h <= 0:
            raise ValidationError(f"bad header d={d} h={h}")
        shapes = [(2 * d, h), (h,), (h, 3), (3,)]
        need = sum(int(np.prod(s)) for s in shapes) * 8
        if len(blob) - 8 != need:
            raise ValidationError(f"parameter file has {len(blob) - 8} payload bytes, expected {need}")
        flat = np.frombuffer(blob, dtype="<f8", offset=8).astype(np.float64)
        arrays, k = [], 0
        for s in shapes:
            n = int(np.prod(s))
            arrays.append(flat[k:k + n].reshape(s).copy())
            k += n
        return cls(*arrays)


@dataclass
class TrcBatch:
    representations: np.ndarray  # (M, d)
    edges: Sequence[tuple[int, int, TemporalRelation]]

    def __post_init__(self):
        self.representations = np.asarray(self.representations, dtype=np.float64)
        if self.representations.ndim != 2:
            raise DimensionError("representations must be an (M, d) matrix")
        if not np.isfinite(self.representations).all():
            raise ValidationError("representations must be finite")
        m = self.representations.shape[0]
        for i, j, label in self.edges:
            if i == j or not (0 <= i < m and 0 <= j < m):
                raise ValidationError(f"edge ({i}, {j}) invalid for {m} nodes")
            if TemporalRelation(label) not in _CLASS_INDEX:
                raise ValidationError(f"edge ({i}, {j}) has non-trainable label {label!r}")

    def index_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        src = np.array([e[0] for e in self.edges], dtype=np.intp)
        dst = np.array([e[1] for e in self.edges], dtype=np.intp)
        lab = np.array([_CLASS_INDEX[TemporalRelation(e[2])] for e in self.edges], dtype=np.intp)
        return src, dst, lab


@dataclass
class TrcResult:
    loss: float
    mean_loss: float
    probabilities: np.ndarray
    grads: dict[str, np.ndarray] = field(default_factory=dict)


def log_softmax(scores: np.ndarray) -> np.ndarray:
    shifted = scores - scores.max(axis=-1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=-1, keepdims=True))


def _check_dims(batch: TrcBatch, params: TrcParameters) -> None:
    if batch.representations.shape[1] != params.d:
        raise DimensionError(
            f"representations have d={batch.representations.shape[1]}, parameters expect d={params.d}"
        )


def _forward(batch: TrcBatch, params: TrcParameters):
    _check_dims(batch, params)
    act, _ = ACTIVATIONS[params.activation]
    src, dst, lab = batch.index_arrays()
    x = np.concatenate([batch.representations[src], batch.representations[dst]], axis=1)
    z = x @ params.W1 + params.b1
    a = act(z)
    logp = log_softmax(a @ params.W2 + params.b2)
    return x, z, a, logp, src, dst, lab


def trc_forward(batch: TrcBatch, params: TrcParameters) -> np.ndarray:
    """(E, 3) class probabilities, one row per edge."""
    if not batch.edges:
        return np.zeros((0, 3))
    return np.exp(_forward(batch, params)[3])


def trc_loss(batch: TrcBatch, params: TrcParameters) -> TrcResult:
    """Summed negative log-likelihood over edges, with analytic gradients.

    ``grads`` holds W1, b1, W2, b2 and ``H`` (gradient w.r.t. the node
    representations).
    """
    if not batch.edges:
        raise ValidationError("trc_loss needs at least one edge")
    x, z, a, logp, src, dst, lab = _forward(batch, params)
    n = len(lab)
    rows = np.arange(n)
    # fsum is correctly rounded, so the total does not depend on edge order
    loss = math.fsum((-logp[rows, lab]).tolist())
    probs = np.exp(logp)

    d_scores = probs.copy()
    d_scores[rows, lab] -= 1.0
    _, act_grad = ACTIVATIONS[params.activation]
    dW2 = a.T @ d_scores
    db2 = d_scores.sum(axis=0)
    dz = (d_scores @ params.W2.T) * act_grad(z)
    dW1 = x.T @ dz
    db1 = dz.sum(axis=0)
    dx = dz @ params.W1.T
    d = params.d
    dH = np.zeros_like(batch.representations)
    np.add.at(dH, src, dx[:, :d])
    np.add.at(dH, dst, dx[:, d:])
    return TrcResult(loss, loss / n, probs, {"W1": dW1, "b1": db1, "W2": dW2, "b2": db2, "H": dH})


@dataclass
class LmBatch:
    logits: np.ndarray  # (T, V)
    targets: np.ndarray  # (T,)

    def __post_init__(self):
        self.logits = np.asarray(self.logits, dtype=np.float64)
        self.targets = np.asarray(self.targets, dtype=np.intp)
        if self.logits.ndim != 2 or self.targets.shape != (self.logits.shape[0],):
            raise DimensionError(f"logits {self.logits.shape} and targets {self.targets.shape} disagree")
        if not np.isfinite(self.logits).all():
            raise ValidationError("logits must be finite")
        v = self.logits.shape[1]
        bad = (self.targets < 0) | (self.targets >= v)
        if bad.any():
            raise ValidationError(f"target index {int(self.targets[bad][0])} outside vocabulary of size {v}")


def lm_loss(batch: LmBatch) -> float:
    """Token-level negative log-likelihood summed over positions."""
    logp = log_softmax(batch.logits)
    return math.fsum((-logp[np.arange(len(batch.targets)), batch.targets]).tolist())


def joint_loss(lm: float, trc: float) -> float:
    """Unweighted sum of the two objectives."""
    for name, v in (("lm", lm), ("trc", trc)):
        if not math.isfinite(v):
            raise ValidationError(f"{name} loss is not finite: {v}", field=name)
        if v < 0:
            raise ValidationError(f"{name} loss is negative: {v}", field=name)
    return lm + trc


def _loss_value(H, src, dst, lab, W1, b1, W2, b2, activation) -> float:
    # Deliberately separate from _forward: the concatenation is replaced by
    # splitting W1 into its source and destination halves, and the edge sum
    # is compensated so central differences are not swamped by roundoff.
    act, _ = ACTIVATIONS[activation]
    d = H.shape[1]
    hidden = act(H[src] @ W1[:d] + H[dst] @ W1[d:] + b1)
    scores = hidden @ W2 + b2
    top = scores.max(axis=1)
    lse = top + np.log(np.exp(scores - top[:, None]).sum(axis=1))
    return math.fsum((lse - scores[np.arange(len(lab)), lab]).tolist())


def numeric_gradients(params: TrcParameters, batch: TrcBatch, epsilon: float = 1e-6) -> dict[str, np.ndarray]:
    """Central-difference gradients of the TRC loss for every entry."""
    src, dst, lab = batch.index_arrays()
    values = {**params.arrays(), "H": batch.representations}
    out = {}
    for name, base in values.items():
        grad = np.zeros_like(base)
        probe = dict(values)
        for idx in np.ndindex(base.shape):
            sides = []
            for step in (epsilon, -epsilon):
                moved = base.copy()
                moved[idx] += step
                probe[name] = moved
                sides.append(
                    _loss_value(probe["H"], src, dst, lab, probe["W1"], probe["b1"], probe["W2"], probe["b2"],
                                params.activation)
                )
            grad[idx] = (sides[0] - sides[1]) / (2 * epsilon)
        out[name] = grad
    return out


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    """``||a - n|| / max(||a||, ||n||)``; 0 when both vanish."""
    scale = max(np.linalg.norm(analytic), np.linalg.norm(numeric))
    if scale == 0:
        return 0.0
    return float(np.linalg.norm(analytic - numeric) / scale)


def grad_check_detail(
    params: TrcParameters,
    batch: TrcBatch,
    epsilon: float = 1e-6,
    analytic: dict[str, np.ndarray] | None = None,
) -> dict[str, float]:
    """Relative error between analytic and central-difference gradients, per tensor.

    Keys are W1, b1, W2, b2 and H (the node representations).  Pass
    ``analytic`` to check gradients other than the built-in ones.
    """
    if not 1e-8 <= epsilon <= 1e-4:
        raise ValidationError(f"epsilon must be in [1e-8, 1e-4], got {epsilon}", field="epsilon")
    analytic = trc_loss(batch, params).grads if analytic is None else analytic
    numeric = numeric_gradients(params, batch, epsilon)
    return {name: relative_error(analytic[name], numeric[name]) for name in numeric}


def grad_check(params: TrcParameters, batch: TrcBatch, epsilon: float = 1e-6, **kwargs) -> float:
    """Largest per-tensor relative gradient error."""
    return max(grad_check_detail(params, batch, epsilon, **kwargs).values())


def random_batch(
    rng: np.random.Generator, n_nodes: int, d: int, n_edges: int
) -> TrcBatch:
    """Random representations with up to ``n_edges`` distinct labeled edges (labels arbitrary)."""
    pairs = [(i, j) for i in range(n_nodes) for j in range(n_nodes) if i != j]
    chosen = rng.choice(len(pairs), size=min(n_edges, len(pairs)), replace=False)
    labels = rng.integers(0, 3, size=len(chosen))
    edges = [(pairs[k][0], pairs[k][1], CLASSES[c]) for k, c in zip(chosen, labels)]
    return TrcBatch(rng.normal(size=(n_nodes, d)), edges)
