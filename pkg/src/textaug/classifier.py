"""Dense-layer binary classifier over segment ids, with early stopping.

Architecture: a trainable embedding table mean-pooled over the non-pad ids
of each segment, then five dense layers -- the first four with a rectifier
nonlinearity and dropout, the last a single sigmoid unit.  Training is
plain minibatch gradient descent on binary cross-entropy, 10 epochs by
default with patience-3 early stopping on validation accuracy and
best-checkpoint restore.

Everything runs in float64 and is driven by one seeded generator, so
identical seeds and corpora give bit-identical reports.  Fake is the
positive class throughout: a prediction's probability is the probability
of Fake, and document probabilities are the mean over segment
probabilities with ties at 0.5 going to Fake.
"""

from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .corpus import Corpus, Document, Label
from .errors import TextaugError
from .segment import Segment, SegmentConfig, SubwordVocab, segment_document

MAGIC = b"TAUG"
FORMAT_VERSION = 1
PROB_EPS = 1e-12


class ClassifierError(TextaugError):
    pass


class ShapeMismatch(ClassifierError):
    pass


class EmptyCorpus(ClassifierError):
    pass


class EmptyDocument(ClassifierError):
    pass


class VocabMismatch(ClassifierError):
    pass


class ModelFormatError(ClassifierError):
    pass


@dataclass(frozen=True)
class ModelConfig:
    embed_dim: int = 64
    dense_dims: Tuple[int, ...] = (256, 128, 64, 32, 1)
    dropout_rate: float = 0.1
    learning_rate: float = 1e-3
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "dense_dims", tuple(self.dense_dims))
        if len(self.dense_dims) != 5:
            raise ValueError("dense_dims must list exactly 5 layer widths")
        if self.dense_dims[-1] != 1:
            raise ValueError("the last dense layer must have width 1 (binary output)")
        if any(d < 1 for d in self.dense_dims):
            raise ValueError("dense layer widths must be positive")
        if not 0.0 <= self.dropout_rate < 1.0:
            raise ValueError("dropout_rate must be in [0,1)")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.embed_dim < 1:
            raise ValueError("embed_dim must be positive")


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 10
    patience: int = 3
    batch_size: int = 32

    def __post_init__(self):
        if self.epochs < 1 or self.patience < 1 or self.batch_size < 1:
            raise ValueError("epochs, patience and batch_size must be positive")
        if self.patience > self.epochs:
            raise ValueError("patience must be <= epochs")


@dataclass
class ModelParams:
    embedding: np.ndarray            # (vocab, embed_dim)
    weights: List[np.ndarray]        # 5 matrices
    biases: List[np.ndarray]         # 5 vectors

    def copy(self) -> "ModelParams":
        return ModelParams(
            self.embedding.copy(),
            [w.copy() for w in self.weights],
            [b.copy() for b in self.biases],
        )

    def flat(self) -> List[Tuple[str, np.ndarray]]:
        tensors = [("embedding", self.embedding)]
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            tensors.append((f"W{i + 1}", w))
            tensors.append((f"b{i + 1}", b))
        return tensors


def init_params(vocab_size: int, cfg: ModelConfig) -> ModelParams:
    """Seeded initialization: unit-normal embeddings, He-scaled dense layers.

    Hidden biases start slightly positive so rectifier units are active at
    the first step (zero biases leave the pooled small-signal input sitting
    exactly on the rectifier kink and the network starts dead).  Embeddings
    use unit scale: mean-pooling over a window shrinks the signal by the
    window length, and a weaker init starves narrow layers under plain
    gradient descent.
    """
    rng = np.random.default_rng(cfg.seed)
    embedding = rng.normal(0.0, 1.0, size=(vocab_size, cfg.embed_dim))
    weights: List[np.ndarray] = []
    biases: List[np.ndarray] = []
    fan_in = cfg.embed_dim
    for i, width in enumerate(cfg.dense_dims):
        weights.append(rng.normal(0.0, np.sqrt(2.0 / fan_in), size=(fan_in, width)))
        bias_init = 0.01 if i < len(cfg.dense_dims) - 1 else 0.0
        biases.append(np.full(width, bias_init))
        fan_in = width
    return ModelParams(embedding, weights, biases)


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _check_batch(params: ModelParams, ids: np.ndarray, att_len: np.ndarray) -> None:
    vocab_size = params.embedding.shape[0]
    if ids.ndim != 2 or att_len.shape != (ids.shape[0],):
        raise ShapeMismatch(f"ids {ids.shape} and attention lengths {att_len.shape} do not agree")
    if ids.size and (ids.min() < 0 or ids.max() >= vocab_size):
        raise ShapeMismatch(f"segment ids outside [0, {vocab_size})")
    if att_len.size and att_len.min() < 1:
        raise ShapeMismatch("attention_len must be >= 1")
    if params.embedding.shape[1] != params.weights[0].shape[0]:
        raise ShapeMismatch("embedding width does not match the first dense layer")


def _forward_batch(
    params: ModelParams,
    ids: np.ndarray,
    att_len: np.ndarray,
    dropout_rate: float = 0.0,
    rng: Optional[np.random.Generator] = None,
):
    """Probabilities plus the cache backprop needs. Dropout only when a rate
    and generator are given (training mode)."""
    _check_batch(params, ids, att_len)
    mask = np.arange(ids.shape[1])[None, :] < att_len[:, None]
    emb = params.embedding[ids]
    pooled = (emb * mask[:, :, None]).sum(axis=1) / att_len[:, None]

    h = pooled
    layer_inputs: List[np.ndarray] = []
    relu_masks: List[np.ndarray] = []
    dropout_masks: List[Optional[np.ndarray]] = []
    n_layers = len(params.weights)
    for i, (w, b) in enumerate(zip(params.weights, params.biases)):
        layer_inputs.append(h)
        z = h @ w + b
        if i < n_layers - 1:
            active = z > 0
            h = np.where(active, z, 0.0)
            relu_masks.append(active)
            if dropout_rate > 0.0 and rng is not None:
                keep = rng.random(h.shape) >= dropout_rate
                scale = keep / (1.0 - dropout_rate)
                h = h * scale
                dropout_masks.append(scale)
            else:
                dropout_masks.append(None)
        else:
            probs = _sigmoid(z[:, 0])
    cache = (mask, pooled, layer_inputs, relu_masks, dropout_masks)
    return probs, cache


def bce_loss(probs: np.ndarray, targets: np.ndarray) -> float:
    p = np.clip(probs, PROB_EPS, 1.0 - PROB_EPS)
    return float(-np.mean(targets * np.log(p) + (1.0 - targets) * np.log(1.0 - p)))


def loss_and_gradients(
    params: ModelParams,
    ids: np.ndarray,
    att_len: np.ndarray,
    targets: np.ndarray,
    dropout_rate: float = 0.0,
    rng: Optional[np.random.Generator] = None,
) -> Tuple[float, ModelParams]:
    """Mean binary cross-entropy and its analytic gradients (as ModelParams)."""
    probs, cache = _forward_batch(params, ids, att_len, dropout_rate, rng)
    mask, pooled, layer_inputs, relu_masks, dropout_masks = cache
    batch = ids.shape[0]
    loss = bce_loss(probs, targets)

    grad_w = [np.zeros_like(w) for w in params.weights]
    grad_b = [np.zeros_like(b) for b in params.biases]

    g = ((probs - targets) / batch)[:, None]
    for i in range(len(params.weights) - 1, -1, -1):
        grad_w[i] = layer_inputs[i].T @ g
        grad_b[i] = g.sum(axis=0)
        g = g @ params.weights[i].T
        if i > 0:
            scale = dropout_masks[i - 1]
            if scale is not None:
                g = g * scale
            g = g * relu_masks[i - 1]

    grad_emb = np.zeros_like(params.embedding)
    contrib = g[:, None, :] * (mask / att_len[:, None])[:, :, None]
    np.add.at(grad_emb, ids.reshape(-1), contrib.reshape(-1, contrib.shape[-1]))
    return loss, ModelParams(grad_emb, grad_w, grad_b)


def forward(segment: Segment, params: ModelParams) -> float:
    """Evaluation-mode probability of Fake for one segment, in (0, 1)."""
    ids = np.asarray([segment.ids], dtype=np.int64)
    att = np.asarray([segment.attention_len], dtype=np.float64)
    probs, _ = _forward_batch(params, ids, att)
    return float(np.clip(probs[0], PROB_EPS, 1.0 - PROB_EPS))


class EarlyStopping:
    """Patience rule on validation accuracy, strict improvement, 1-based epochs.

    ``update`` returns True the moment the configured number of consecutive
    non-improving epochs has elapsed since the best epoch.
    """

    def __init__(self, patience: int):
        self.patience = patience
        self.best_epoch = 0
        self.best_value = float("-inf")
        self.stopped_early = False

    def update(self, epoch: int, value: float) -> bool:
        if value > self.best_value:
            self.best_value = value
            self.best_epoch = epoch
            return False
        if epoch - self.best_epoch >= self.patience:
            self.stopped_early = True
            return True
        return False


@dataclass
class EpochMetrics:
    train_loss: float
    train_acc: float
    val_loss: float
    val_acc: float


@dataclass
class FinalMetrics:
    general_accuracy: float
    loss: float
    validation_accuracy: float
    validation_loss: float


@dataclass
class TrainReport:
    per_epoch: List[EpochMetrics]
    best_epoch: int  # 1-based
    stopped_early: bool
    final: FinalMetrics


def report_json(report: TrainReport) -> str:
    payload = {
        "general_accuracy": report.final.general_accuracy,
        "loss": report.final.loss,
        "validation_accuracy": report.final.validation_accuracy,
        "validation_loss": report.final.validation_loss,
        "best_epoch": report.best_epoch,
        "stopped_early": report.stopped_early,
        "per_epoch": {
            "train_loss": [m.train_loss for m in report.per_epoch],
            "train_acc": [m.train_acc for m in report.per_epoch],
            "val_loss": [m.val_loss for m in report.per_epoch],
            "val_acc": [m.val_acc for m in report.per_epoch],
        },
    }
    return json.dumps(payload, indent=2)


def encode_corpus(
    corpus: Corpus, vocab: SubwordVocab, scfg: SegmentConfig
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Segment every document and stack ids, attention lengths and targets.

    Documents with no word tokens contribute no segments.
    """
    ids_rows: List[List[int]] = []
    att: List[int] = []
    targets: List[float] = []
    for doc in corpus:
        for seg in segment_document(doc.id, doc.text, vocab, scfg):
            ids_rows.append(seg.ids)
            att.append(seg.attention_len)
            targets.append(1.0 if doc.label is Label.FAKE else 0.0)
    if not ids_rows:
        raise EmptyCorpus("no segments could be produced from the corpus")
    return (
        np.asarray(ids_rows, dtype=np.int64),
        np.asarray(att, dtype=np.float64),
        np.asarray(targets, dtype=np.float64),
    )


def _eval_segments(
    params: ModelParams,
    ids: np.ndarray,
    att: np.ndarray,
    targets: np.ndarray,
    batch_size: int = 256,
) -> Tuple[float, float]:
    loss_sum = 0.0
    correct = 0
    for start in range(0, ids.shape[0], batch_size):
        sl = slice(start, start + batch_size)
        probs, _ = _forward_batch(params, ids[sl], att[sl])
        loss_sum += bce_loss(probs, targets[sl]) * len(targets[sl])
        correct += int(np.sum((probs >= 0.5) == (targets[sl] >= 0.5)))
    n = ids.shape[0]
    return loss_sum / n, correct / n


def train(
    train_corpus: Corpus,
    val_corpus: Corpus,
    vocab: SubwordVocab,
    mcfg: ModelConfig,
    tcfg: TrainConfig,
    scfg: SegmentConfig = SegmentConfig(),
) -> Tuple[ModelParams, TrainReport]:
    """Train with early stopping; returns the best-epoch parameters.

    Both corpora are segmented here.  One seeded generator drives
    initialization, batch shuffling and dropout, so runs are reproducible.
    """
    if len(train_corpus) == 0:
        raise EmptyCorpus("training corpus has no documents")
    if len(val_corpus) == 0:
        raise EmptyCorpus("validation corpus has no documents")
    train_ids, train_att, train_y = encode_corpus(train_corpus, vocab, scfg)
    val_ids, val_att, val_y = encode_corpus(val_corpus, vocab, scfg)

    params = init_params(len(vocab), mcfg)
    rng = np.random.default_rng(mcfg.seed)
    stopper = EarlyStopping(tcfg.patience)
    per_epoch: List[EpochMetrics] = []
    best_params = params.copy()

    n = train_ids.shape[0]
    for epoch in range(1, tcfg.epochs + 1):
        order = rng.permutation(n)
        for start in range(0, n, tcfg.batch_size):
            batch = order[start:start + tcfg.batch_size]
            _, grads = loss_and_gradients(
                params,
                train_ids[batch],
                train_att[batch],
                train_y[batch],
                dropout_rate=mcfg.dropout_rate,
                rng=rng,
            )
            params.embedding -= mcfg.learning_rate * grads.embedding
            for w, gw in zip(params.weights, grads.weights):
                w -= mcfg.learning_rate * gw
            for b, gb in zip(params.biases, grads.biases):
                b -= mcfg.learning_rate * gb

        train_loss, train_acc = _eval_segments(params, train_ids, train_att, train_y)
        val_loss, val_acc = _eval_segments(params, val_ids, val_att, val_y)
        per_epoch.append(EpochMetrics(train_loss, train_acc, val_loss, val_acc))

        improved = val_acc > stopper.best_value
        should_stop = stopper.update(epoch, val_acc)
        if improved:
            best_params = params.copy()
        if should_stop:
            break

    best = per_epoch[stopper.best_epoch - 1]
    report = TrainReport(
        per_epoch=per_epoch,
        best_epoch=stopper.best_epoch,
        stopped_early=stopper.stopped_early,
        final=FinalMetrics(best.train_acc, best.train_loss, best.val_acc, best.val_loss),
    )
    return best_params, report


@dataclass
class Prediction:
    doc_id: str
    prob_fake: float
    segment_probs: List[float]
    label: Label

    @classmethod
    def from_segment_probs(cls, doc_id: str, segment_probs: Sequence[float]) -> "Prediction":
        prob_fake = float(np.mean(segment_probs))
        label = Label.FAKE if prob_fake >= 0.5 else Label.REAL
        return cls(doc_id, prob_fake, list(segment_probs), label)


def predict(
    doc: Document,
    params: ModelParams,
    vocab: SubwordVocab,
    scfg: SegmentConfig = SegmentConfig(),
) -> Prediction:
    """Document-level prediction: mean of per-segment probabilities."""
    segments = segment_document(doc.id, doc.text, vocab, scfg)
    if not segments:
        raise EmptyDocument(f"document {doc.id!r} has no word tokens")
    ids = np.asarray([s.ids for s in segments], dtype=np.int64)
    att = np.asarray([s.attention_len for s in segments], dtype=np.float64)
    probs, _ = _forward_batch(params, ids, att)
    probs = np.clip(probs, PROB_EPS, 1.0 - PROB_EPS)
    return Prediction.from_segment_probs(doc.id, [float(p) for p in probs])


@dataclass
class EvalMetrics:
    accuracy: float
    loss: float
    confusion: Tuple[int, int, int, int]  # (tp, fp, tn, fn); Fake is positive
    misclassified_ids: List[str]


def metrics_from_predictions(pairs: Sequence[Tuple[Label, Prediction]]) -> EvalMetrics:
    """Document-level accuracy, mean cross-entropy and confusion counts."""
    if not pairs:
        raise EmptyCorpus("no predictions to evaluate")
    tp = fp = tn = fn = 0
    losses = []
    misclassified: List[str] = []
    for truth, pred in pairs:
        p = min(max(pred.prob_fake, PROB_EPS), 1.0 - PROB_EPS)
        y = 1.0 if truth is Label.FAKE else 0.0
        losses.append(-(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)))
        if pred.label is Label.FAKE and truth is Label.FAKE:
            tp += 1
        elif pred.label is Label.FAKE and truth is Label.REAL:
            fp += 1
        elif pred.label is Label.REAL and truth is Label.REAL:
            tn += 1
        else:
            fn += 1
        if pred.label is not truth:
            misclassified.append(pred.doc_id)
    total = len(pairs)
    return EvalMetrics(
        accuracy=(tp + tn) / total,
        loss=float(np.mean(losses)),
        confusion=(tp, fp, tn, fn),
        misclassified_ids=misclassified,
    )


def evaluate(
    corpus: Corpus,
    params: ModelParams,
    vocab: SubwordVocab,
    scfg: SegmentConfig = SegmentConfig(),
) -> EvalMetrics:
    if len(corpus) == 0:
        raise EmptyCorpus("evaluation corpus has no documents")
    pairs = [(doc.label, predict(doc, params, vocab, scfg)) for doc in corpus]
    return metrics_from_predictions(pairs)


def vocab_digest(vocab: SubwordVocab) -> bytes:
    return hashlib.sha256("\n".join(vocab.pieces).encode("utf-8")).digest()


def save_model(
    path: Union[str, Path],
    params: ModelParams,
    mcfg: ModelConfig,
    vocab: SubwordVocab,
) -> None:
    """Binary model artifact: TAUG magic, version, config, vocab digest,
    then each tensor as dims plus row-major 32-bit floats (little-endian)."""
    digest = vocab_digest(vocab)
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(struct.pack("<H", FORMAT_VERSION))
        f.write(struct.pack("<II", mcfg.embed_dim, len(mcfg.dense_dims)))
        f.write(struct.pack(f"<{len(mcfg.dense_dims)}I", *mcfg.dense_dims))
        f.write(struct.pack("<ddq", mcfg.dropout_rate, mcfg.learning_rate, mcfg.seed))
        f.write(struct.pack("<I", len(digest)))
        f.write(digest)
        tensors = params.flat()
        f.write(struct.pack("<I", len(tensors)))
        for _, tensor in tensors:
            f.write(struct.pack("<I", tensor.ndim))
            f.write(struct.pack(f"<{tensor.ndim}I", *tensor.shape))
            f.write(np.ascontiguousarray(tensor, dtype="<f4").tobytes())


def load_model(path: Union[str, Path]) -> Tuple[ModelParams, ModelConfig, bytes]:
    """Read a model artifact; parameters come back as float64 tensors."""
    with open(path, "rb") as f:
        data = f.read()
    view = memoryview(data)
    offset = 0

    def take(fmt: str):
        nonlocal offset
        size = struct.calcsize(fmt)
        if offset + size > len(data):
            raise ModelFormatError("model file truncated")
        values = struct.unpack_from(fmt, view, offset)
        offset += size
        return values

    if bytes(view[:4]) != MAGIC:
        raise ModelFormatError("not a model file (bad magic bytes)")
    offset = 4
    (version,) = take("<H")
    if version != FORMAT_VERSION:
        raise ModelFormatError(f"unsupported model format version {version}")
    embed_dim, n_dense = take("<II")
    dense_dims = take(f"<{n_dense}I")
    dropout_rate, learning_rate, seed = take("<ddq")
    (digest_len,) = take("<I")
    digest = bytes(view[offset:offset + digest_len])
    offset += digest_len
    mcfg = ModelConfig(
        embed_dim=embed_dim,
        dense_dims=tuple(dense_dims),
        dropout_rate=dropout_rate,
        learning_rate=learning_rate,
        seed=seed,
    )
    (n_tensors,) = take("<I")
    tensors: List[np.ndarray] = []
    for _ in range(n_tensors):
        (ndim,) = take("<I")
        shape = take(f"<{ndim}I")
        count = int(np.prod(shape)) if shape else 1
        nbytes = count * 4
        if offset + nbytes > len(data):
            raise ModelFormatError("model file truncated")
        arr = np.frombuffer(view, dtype="<f4", count=count, offset=offset).reshape(shape)
        tensors.append(arr.astype(np.float64))
        offset += nbytes
    if len(tensors) != 1 + 2 * len(dense_dims):
        raise ModelFormatError("unexpected tensor count")
    params = ModelParams(
        embedding=tensors[0],
        weights=tensors[1::2],
        biases=tensors[2::2],
    )
    return params, mcfg, digest


def check_vocab_digest(digest: bytes, vocab: SubwordVocab) -> None:
    if digest != vocab_digest(vocab):
        raise VocabMismatch("model was trained with a different vocabulary file")
