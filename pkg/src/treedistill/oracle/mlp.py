"""From-scratch single-hidden-layer network oracle.

Categorical features are one-hot encoded, numeric features min-max scaled
from the schema bounds (not the data, so any dataset under the same schema
encodes identically). The hidden layer is sigmoid, the output softmax with
cross-entropy loss, trained by mini-batch gradient descent. The hidden size
is chosen by 5-fold cross-validation and the final model is retrained with
validation-based early stopping, keeping the best-validation-epoch weights.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from ..data.dataset import LabeledDataset
from ..data.schema import Categorical, FeatureSchema, Instance, parse_schema
from ..errors import DatasetError, TrainingDivergedError
from .base import Oracle

__all__ = [
    "TrainConfig",
    "TrainingSummary",
    "MlpOracle",
    "train_mlp",
    "encode_instance",
    "encoded_dim",
    "forward",
    "loss_and_gradients",
    "load_mlp",
]

ORACLE_FORMAT_VERSION = 1
_CV_FOLDS = 5


# --- encoding ---------------------------------------------------------------


def encoded_dim(schema: FeatureSchema) -> int:
    total = 0
    for f in schema.features:
        total += len(f.kind.values) if isinstance(f.kind, Categorical) else 1
    return total


def encode_instance(schema: FeatureSchema, instance: Instance) -> np.ndarray:
    out = np.zeros(encoded_dim(schema))
    pos = 0
    for value, feature in zip(instance, schema.features):
        if isinstance(feature.kind, Categorical):
            out[pos + feature.kind.values.index(value)] = 1.0
            pos += len(feature.kind.values)
        else:
            lo, hi = feature.kind.lo, feature.kind.hi
            out[pos] = (value - lo) / (hi - lo)
            pos += 1
    return out


def encode_batch(schema: FeatureSchema, instances) -> np.ndarray:
    return np.stack([encode_instance(schema, x) for x in instances])


# --- network math -----------------------------------------------------------


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _softmax(z: np.ndarray) -> np.ndarray:
    shifted = z - z.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def forward(params: tuple, X: np.ndarray) -> np.ndarray:
    """Class probabilities, rows summing to one."""
    W1, b1, W2, b2 = params
    H = _sigmoid(X @ W1.T + b1)
    return _softmax(H @ W2.T + b2)


def loss_and_gradients(params: tuple, X: np.ndarray, y: np.ndarray, n_classes: int):
    """Mean cross-entropy over the batch and its analytic gradients."""
    W1, b1, W2, b2 = params
    n = X.shape[0]
    H = _sigmoid(X @ W1.T + b1)
    P = _softmax(H @ W2.T + b2)
    eps = 1e-12
    loss = -float(np.mean(np.log(P[np.arange(n), y] + eps)))

    dZ2 = P.copy()
    dZ2[np.arange(n), y] -= 1.0
    dZ2 /= n
    dW2 = dZ2.T @ H
    db2 = dZ2.sum(axis=0)
    dH = dZ2 @ W2
    dZ1 = dH * H * (1.0 - H)
    dW1 = dZ1.T @ X
    db1 = dZ1.sum(axis=0)
    return loss, (dW1, db1, dW2, db2)


def _init_params(n_in: int, hidden: int, n_out: int, rng: np.random.Generator) -> tuple:
    W1 = rng.standard_normal((hidden, n_in)) / np.sqrt(n_in)
    W2 = rng.standard_normal((n_out, hidden)) / np.sqrt(hidden)
    return W1, np.zeros(hidden), W2, np.zeros(n_out)


def _accuracy(params: tuple, X: np.ndarray, y: np.ndarray) -> float:
    return float(np.mean(forward(params, X).argmax(axis=1) == y))


@dataclass(frozen=True)
class TrainConfig:
    hidden_candidates: tuple[int, ...]
    max_epochs: int = 200
    learning_rate: float = 0.5
    validation_fraction: float = 0.2
    patience: int = 15
    seed: int = 0
    batch_size: int = 32

    def __post_init__(self):
        if not self.hidden_candidates:
            raise ValueError("hidden_candidates must be non-empty")


@dataclass
class TrainingSummary:
    hidden_size: int
    cv_means: dict[int, float]
    validation_accuracy: float
    train_accuracy: float
    epochs_run: int


def _fit(
    X: np.ndarray,
    y: np.ndarray,
    X_val: np.ndarray,
    y_val: np.ndarray,
    hidden: int,
    n_classes: int,
    config: TrainConfig,
    rng: np.random.Generator,
):
    """One training run with early stopping; returns the weights of the best
    validation epoch, that accuracy, and the number of epochs run."""
    params = _init_params(X.shape[1], hidden, n_classes, rng)
    best = tuple(p.copy() for p in params)
    best_acc = _accuracy(params, X_val, y_val)
    bad_epochs = 0
    epochs_run = 0
    for epoch in range(config.max_epochs):
        epochs_run = epoch + 1
        order = rng.permutation(len(X))
        for start in range(0, len(X), config.batch_size):
            batch = order[start : start + config.batch_size]
            loss, grads = loss_and_gradients(params, X[batch], y[batch], n_classes)
            if not np.isfinite(loss):
                raise TrainingDivergedError(epoch + 1)
            params = tuple(p - config.learning_rate * g for p, g in zip(params, grads))
        acc = _accuracy(params, X_val, y_val)
        if acc > best_acc + 1e-12:
            best_acc = acc
            best = tuple(p.copy() for p in params)
            bad_epochs = 0
        else:
            bad_epochs += 1
            if bad_epochs > config.patience:
                break
    return best, best_acc, epochs_run


# --- the oracle --------------------------------------------------------------


@dataclass
class MlpOracle(Oracle):
    schema: FeatureSchema
    params: tuple  # (W1, b1, W2, b2)
    hidden_size: int
    training: dict = field(default_factory=dict)
    kind: str = "mlp"

    def predict(self, instance: Instance) -> str:
        x = encode_instance(self.schema, instance)[None, :]
        probs = forward(self.params, x)[0]
        # argmax ties resolve to the lowest class index
        return self.schema.class_labels[int(np.argmax(probs))]

    def predict_many(self, instances) -> list[str]:
        if not instances:
            return []
        X = encode_batch(self.schema, instances)
        picks = forward(self.params, X).argmax(axis=1)
        return [self.schema.class_labels[int(i)] for i in picks]

    def metadata(self) -> dict:
        meta = super().metadata()
        meta["hidden_size"] = self.hidden_size
        return meta

    def to_document(self) -> dict:
        W1, b1, W2, b2 = self.params
        return {
            "format": "treedistill-oracle",
            "format_version": ORACLE_FORMAT_VERSION,
            "kind": "mlp",
            "schema": self.schema.to_dict(),
            "schema_fingerprint": self.schema_fingerprint,
            "hidden_size": self.hidden_size,
            "weights": {
                "W1": W1.tolist(),
                "b1": b1.tolist(),
                "W2": W2.tolist(),
                "b2": b2.tolist(),
            },
            "training": self.training,
        }

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_document(), fh, sort_keys=True, indent=2)
            fh.write("\n")


def load_mlp(path: str) -> MlpOracle:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("format") != "treedistill-oracle" or doc.get("kind") != "mlp":
        raise DatasetError(f"{path}: not an MLP oracle artifact")
    schema = parse_schema(doc["schema"])
    w = doc["weights"]
    params = (
        np.asarray(w["W1"], dtype=float),
        np.asarray(w["b1"], dtype=float),
        np.asarray(w["W2"], dtype=float),
        np.asarray(w["b2"], dtype=float),
    )
    return MlpOracle(
        schema=schema,
        params=params,
        hidden_size=int(doc["hidden_size"]),
        training=doc.get("training", {}),
    )


def train_mlp(train: LabeledDataset, config: TrainConfig) -> MlpOracle:
    """Select the hidden size by 5-fold cross-validation, then retrain on a
    (1 - validation_fraction) split with early stopping. Deterministic for a
    given seed: the same seed reproduces the selected size and accuracies."""
    schema = train.schema
    if len(train) < 20:
        raise DatasetError(f"need at least 20 instances to train, got {len(train)}")
    if len(set(train.labels)) < 2:
        raise DatasetError("degenerate dataset: a single class is present")

    X = encode_batch(schema, train.instances)
    y = np.array([schema.label_index(label) for label in train.labels])
    n_classes = len(schema.class_labels)

    root = np.random.SeedSequence(config.seed)
    ss_folds, ss_cv, ss_final = root.spawn(3)

    fold_rng = np.random.default_rng(ss_folds)
    order = fold_rng.permutation(len(X))
    folds = np.array_split(order, _CV_FOLDS)

    cv_means: dict[int, float] = {}
    cv_streams = ss_cv.spawn(len(config.hidden_candidates) * _CV_FOLDS)
    best_hidden = None
    best_mean = -1.0
    for ci, hidden in enumerate(config.hidden_candidates):
        accs = []
        for fi, fold in enumerate(folds):
            mask = np.ones(len(X), dtype=bool)
            mask[fold] = False
            rng = np.random.default_rng(cv_streams[ci * _CV_FOLDS + fi])
            params, acc, _ = _fit(
                X[mask], y[mask], X[fold], y[fold], hidden, n_classes, config, rng
            )
            accs.append(acc)
        mean = float(np.mean(accs))
        cv_means[hidden] = mean
        if mean > best_mean:
            best_mean, best_hidden = mean, hidden

    final_rng = np.random.default_rng(ss_final)
    order = final_rng.permutation(len(X))
    n_val = max(1, int(round(config.validation_fraction * len(X))))
    val_idx, fit_idx = order[:n_val], order[n_val:]
    params, val_acc, epochs = _fit(
        X[fit_idx], y[fit_idx], X[val_idx], y[val_idx],
        best_hidden, n_classes, config, final_rng,
    )

    summary = TrainingSummary(
        hidden_size=best_hidden,
        cv_means=cv_means,
        validation_accuracy=val_acc,
        train_accuracy=_accuracy(params, X, y),
        epochs_run=epochs,
    )
    return MlpOracle(
        schema=schema,
        params=params,
        hidden_size=best_hidden,
        training={
            "seed": config.seed,
            "hidden_candidates": list(config.hidden_candidates),
            "cv_means": {str(k): v for k, v in cv_means.items()},
            "validation_accuracy": summary.validation_accuracy,
            "train_accuracy": summary.train_accuracy,
            "epochs_run": summary.epochs_run,
        },
    )
