"""Feature-based human/AI detector: scaling, training, prediction, evaluation.

The model is L2-regularized logistic regression trained by full-batch (or
mini-batch) gradient descent with adaptive-moment updates and early stopping
on validation loss. Training is deterministic for a fixed seed and config.
The positive class is "ai" throughout.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .errors import Diverged, LengthMismatch, MissingFeature, NoFeatures

POSITIVE_LABEL = "ai"
NEGATIVE_LABEL = "human"

_ADAM_BETA1 = 0.9
_ADAM_BETA2 = 0.999
_ADAM_EPS = 1e-8


@dataclass(frozen=True)
class ScalerState:
    feature_names: tuple[str, ...]  # retained features, in order
    mean: tuple[float, ...]
    std: tuple[float, ...]
    dropped: tuple[str, ...] = ()


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.05
    max_epochs: int = 500
    l2: float = 1e-4
    patience: int = 20
    seed: int = 0
    batch_size: int | None = None  # None = full batch

    def validate(self) -> None:
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.patience < 1:
            raise ValueError("patience must be >= 1")
        if self.max_epochs < 1:
            raise ValueError("max_epochs must be >= 1")
        if self.l2 < 0:
            raise ValueError("l2 must be nonnegative")
        if self.batch_size is not None and self.batch_size < 1:
            raise ValueError("batch_size must be >= 1 when set")


@dataclass
class DetectorModel:
    feature_names: tuple[str, ...]
    weights: np.ndarray
    bias: float
    scaler: ScalerState
    threshold: float = 0.5
    metadata: dict = field(default_factory=dict)


@dataclass(frozen=True)
class EvalReport:
    tp: int
    fp: int
    fn: int
    tn: int
    n: int
    accuracy: float
    precision: dict[str, float]
    recall: dict[str, float]
    f1: dict[str, float]
    macro_precision: float
    macro_recall: float
    macro_f1: float
    weighted_precision: float
    weighted_recall: float
    weighted_f1: float


def fit_scaler(X: np.ndarray, feature_names: Sequence[str]) -> ScalerState:
    """Per-feature mean/std from training rows only (population std).

    NaN cells (undefined ratios) are ignored while fitting. Zero-variance or
    all-NaN columns are dropped and listed in ``dropped``; if nothing remains
    :class:`NoFeatures` is raised.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] < 2:
        raise ValueError("fit_scaler needs a 2-D array with at least 2 rows")
    if X.shape[1] != len(feature_names):
        raise ValueError("feature_names length must match the number of columns")
    kept, mean, std, dropped = [], [], [], []
    for j, name in enumerate(feature_names):
        col = X[:, j]
        defined = col[~np.isnan(col)]
        if defined.size == 0:
            dropped.append(name)
            continue
        m = float(defined.mean())
        s = float(defined.std())  # population std
        if s == 0.0:
            dropped.append(name)
            continue
        kept.append(name)
        mean.append(m)
        std.append(s)
    if not kept:
        raise NoFeatures("every feature was dropped (zero variance or undefined)")
    return ScalerState(feature_names=tuple(kept), mean=tuple(mean), std=tuple(std), dropped=tuple(dropped))


def apply_scaler(scaler: ScalerState, X: np.ndarray, feature_names: Sequence[str]) -> np.ndarray:
    """Standardize the retained columns; NaN becomes 0 (mean imputation)."""
    X = np.asarray(X, dtype=float)
    index = {name: j for j, name in enumerate(feature_names)}
    for name in scaler.feature_names:
        if name not in index:
            raise MissingFeature(f"feature {name!r} missing from input columns")
    cols = [index[name] for name in scaler.feature_names]
    Z = (X[:, cols] - np.array(scaler.mean)) / np.array(scaler.std)
    return np.nan_to_num(Z, nan=0.0)


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def loss_and_gradient(
    weights: np.ndarray,
    bias: float,
    X: np.ndarray,
    y: np.ndarray,
    l2: float = 0.0,
) -> tuple[float, np.ndarray, float]:
    """Mean cross-entropy plus (l2/2)*||weights||^2, with the exact gradient.

    The log-loss is evaluated in the overflow-safe form
    max(z,0) - z*y + log1p(exp(-|z|)). The bias is not regularized.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.shape[0] == 0:
        raise ValueError("batch must be nonempty")
    z = X @ weights + bias
    per_example = np.maximum(z, 0.0) - z * y + np.log1p(np.exp(-np.abs(z)))
    loss = float(per_example.mean() + 0.5 * l2 * float(weights @ weights))
    residual = _sigmoid(z) - y
    grad_w = X.T @ residual / X.shape[0] + l2 * weights
    grad_b = float(residual.mean())
    return loss, grad_w, grad_b


def _bce(weights: np.ndarray, bias: float, X: np.ndarray, y: np.ndarray) -> float:
    loss, _, _ = loss_and_gradient(weights, bias, X, y, l2=0.0)
    return loss


def train_detector(
    X_train: np.ndarray,
    y_train: Sequence,
    X_val: np.ndarray,
    y_val: Sequence,
    feature_names: Sequence[str],
    config: TrainConfig = TrainConfig(),
) -> tuple[DetectorModel, list[dict]]:
    """Fit the scaler on the training rows and train with early stopping.

    Labels may be "human"/"ai" strings or 0/1. History records per-epoch
    train loss (regularized objective) and validation loss (plain
    cross-entropy); the returned model carries the parameters of the best
    validation epoch.
    """
    config.validate()
    y_tr = _labels_to01(y_train)
    y_va = _labels_to01(y_val)
    if len(y_tr) == 0 or len(y_va) == 0:
        raise ValueError("train and validation splits must be nonempty")
    if y_tr.min() == y_tr.max():
        raise ValueError("training split must contain both labels")

    scaler = fit_scaler(np.asarray(X_train, dtype=float), feature_names)
    Xtr = apply_scaler(scaler, X_train, feature_names)
    Xva = apply_scaler(scaler, X_val, feature_names)

    n_features = Xtr.shape[1]
    w = np.zeros(n_features)
    b = 0.0
    m_w = np.zeros(n_features)
    v_w = np.zeros(n_features)
    m_b = v_b = 0.0
    step = 0

    rng = np.random.default_rng(config.seed)
    batch = config.batch_size or Xtr.shape[0]

    best_val = math.inf
    best_w, best_b, best_epoch = w.copy(), b, 0
    since_improved = 0
    history: list[dict] = []

    for epoch in range(1, config.max_epochs + 1):
        if config.batch_size is None:
            order = np.arange(Xtr.shape[0])
        else:
            order = rng.permutation(Xtr.shape[0])
        for lo in range(0, Xtr.shape[0], batch):
            idx = order[lo : lo + batch]
            _, grad_w, grad_b = loss_and_gradient(w, b, Xtr[idx], y_tr[idx], config.l2)
            step += 1
            m_w = _ADAM_BETA1 * m_w + (1 - _ADAM_BETA1) * grad_w
            v_w = _ADAM_BETA2 * v_w + (1 - _ADAM_BETA2) * grad_w**2
            m_b = _ADAM_BETA1 * m_b + (1 - _ADAM_BETA1) * grad_b
            v_b = _ADAM_BETA2 * v_b + (1 - _ADAM_BETA2) * grad_b**2
            bias_c1 = 1 - _ADAM_BETA1**step
            bias_c2 = 1 - _ADAM_BETA2**step
            w = w - config.learning_rate * (m_w / bias_c1) / (np.sqrt(v_w / bias_c2) + _ADAM_EPS)
            b = b - config.learning_rate * (m_b / bias_c1) / (math.sqrt(v_b / bias_c2) + _ADAM_EPS)

        train_loss, _, _ = loss_and_gradient(w, b, Xtr, y_tr, config.l2)
        val_loss = _bce(w, b, Xva, y_va)
        if not (math.isfinite(train_loss) and math.isfinite(val_loss)):
            raise Diverged(f"loss became non-finite at epoch {epoch}; lower the learning rate")
        history.append({"epoch": epoch, "train_loss": train_loss, "val_loss": val_loss})

        if val_loss < best_val:
            best_val = val_loss
            best_w, best_b, best_epoch = w.copy(), b, epoch
            since_improved = 0
        else:
            since_improved += 1
            if since_improved >= config.patience:
                break

    model = DetectorModel(
        feature_names=scaler.feature_names,
        weights=best_w,
        bias=best_b,
        scaler=scaler,
        metadata={
            "config": {
                "learning_rate": config.learning_rate,
                "max_epochs": config.max_epochs,
                "l2": config.l2,
                "patience": config.patience,
                "seed": config.seed,
                "batch_size": config.batch_size,
            },
            "best_epoch": best_epoch,
            "best_val_loss": best_val,
            "epochs_run": len(history),
            "dropped_features": list(scaler.dropped),
        },
    )
    return model, history


def _labels_to01(labels: Sequence) -> np.ndarray:
    values = []
    for item in labels:
        if isinstance(item, str):
            if item not in (POSITIVE_LABEL, NEGATIVE_LABEL):
                raise ValueError(f"unknown label {item!r}")
            values.append(1.0 if item == POSITIVE_LABEL else 0.0)
        else:
            values.append(float(item))
    arr = np.array(values, dtype=float)
    if arr.size and not np.isin(arr, (0.0, 1.0)).all():
        raise ValueError("numeric labels must be 0 or 1")
    return arr


def predict_proba_matrix(model: DetectorModel, X: np.ndarray, feature_names: Sequence[str]) -> np.ndarray:
    """P(label = ai) for each row of raw (unscaled) features."""
    Z = apply_scaler(model.scaler, np.asarray(X, dtype=float), feature_names)
    return _sigmoid(Z @ model.weights + model.bias)


def predict_proba(model: DetectorModel, features: Mapping[str, float]) -> float:
    """P(label = ai) for one row given as a feature mapping."""
    row = []
    for name in model.feature_names:
        if name not in features:
            raise MissingFeature(f"feature {name!r} missing from input")
        value = features[name]
        row.append(math.nan if value is None else float(value))
    X = np.array([row], dtype=float)
    return float(predict_proba_matrix(model, X, model.feature_names)[0])


def predict_label(model: DetectorModel, prob_ai: float) -> str:
    return POSITIVE_LABEL if prob_ai >= model.threshold else NEGATIVE_LABEL


def evaluate(predictions: Sequence[str], gold: Sequence[str]) -> EvalReport:
    """Confusion matrix and derived metrics; positive class is "ai".

    Weighted averages weight classes by gold support; an undefined
    precision/recall (empty denominator) is reported as 0.0.
    """
    if len(predictions) != len(gold):
        raise LengthMismatch(f"{len(predictions)} predictions vs {len(gold)} gold labels")
    if not gold:
        raise ValueError("evaluate needs at least one example")
    tp = fp = fn = tn = 0
    for pred, truth in zip(predictions, gold):
        if truth == POSITIVE_LABEL:
            if pred == POSITIVE_LABEL:
                tp += 1
            else:
                fn += 1
        else:
            if pred == POSITIVE_LABEL:
                fp += 1
            else:
                tn += 1
    n = len(gold)

    def _ratio(num: int, den: int) -> float:
        return num / den if den else 0.0

    precision = {
        POSITIVE_LABEL: _ratio(tp, tp + fp),
        NEGATIVE_LABEL: _ratio(tn, tn + fn),
    }
    recall = {
        POSITIVE_LABEL: _ratio(tp, tp + fn),
        NEGATIVE_LABEL: _ratio(tn, tn + fp),
    }
    f1 = {}
    for cls in (POSITIVE_LABEL, NEGATIVE_LABEL):
        p, r = precision[cls], recall[cls]
        f1[cls] = 2 * p * r / (p + r) if (p + r) else 0.0
    support = {POSITIVE_LABEL: tp + fn, NEGATIVE_LABEL: tn + fp}

    def _weighted(metric: dict[str, float]) -> float:
        return sum(metric[cls] * support[cls] for cls in metric) / n

    return EvalReport(
        tp=tp,
        fp=fp,
        fn=fn,
        tn=tn,
        n=n,
        accuracy=(tp + tn) / n,
        precision=precision,
        recall=recall,
        f1=f1,
        macro_precision=(precision[POSITIVE_LABEL] + precision[NEGATIVE_LABEL]) / 2,
        macro_recall=(recall[POSITIVE_LABEL] + recall[NEGATIVE_LABEL]) / 2,
        macro_f1=(f1[POSITIVE_LABEL] + f1[NEGATIVE_LABEL]) / 2,
        weighted_precision=_weighted(precision),
        weighted_recall=_weighted(recall),
        weighted_f1=_weighted(f1),
    )


# ---------------------------------------------------------------------------
# Persistence: one JSON document per model
# ---------------------------------------------------------------------------

def save_model(model: DetectorModel, path: str | Path) -> None:
    doc = {
        "feature_names": list(model.feature_names),
        "weights": [float(w) for w in model.weights],
        "bias": float(model.bias),
        "scaler": {
            "feature_names": list(model.scaler.feature_names),
            "mean": list(model.scaler.mean),
            "std": list(model.scaler.std),
            "dropped": list(model.scaler.dropped),
        },
        "threshold": model.threshold,
        "metadata": model.metadata,
    }
    Path(path).write_text(json.dumps(doc, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> DetectorModel:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    scaler = ScalerState(
        feature_names=tuple(doc["scaler"]["feature_names"]),
        mean=tuple(doc["scaler"]["mean"]),
        std=tuple(doc["scaler"]["std"]),
        dropped=tuple(doc["scaler"].get("dropped", ())),
    )
    weights = np.array(doc["weights"], dtype=float)
    if len(weights) != len(doc["feature_names"]):
        raise ValueError("model file is inconsistent: |weights| != |feature_names|")
    if not np.isfinite(weights).all() or not math.isfinite(doc["bias"]):
        raise ValueError("model file contains non-finite parameters")
    return DetectorModel(
        feature_names=tuple(doc["feature_names"]),
        weights=weights,
        bias=float(doc["bias"]),
        scaler=scaler,
        threshold=float(doc.get("threshold", 0.5)),
        metadata=doc.get("metadata", {}),
    )
