"""scikit-learn compatible wrappers so the pipeline composes with the ecosystem.

Three estimators cover the text lane end to end: ``UrduTextNormalizer``
(strings in, clean strings out), ``StylometricFeaturizer`` (clean strings in,
feature matrix out) and ``StylometricDetector`` (features in, human/ai out).
All of them work inside ``sklearn.pipeline.Pipeline``.
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.exceptions import NotFittedError
from sklearn.utils.validation import check_array

from . import detector as _detector
from .errors import EmptyAfterPreprocess, NoWords
from .stylometry import FEATURE_NAMES, extract_features
from .textnorm import normalize_text


class UrduTextNormalizer(BaseEstimator, TransformerMixin):
    """Stateless transformer applying the full Urdu preprocessing pipeline.

    Parameters
    ----------
    on_empty : {"raise", "blank"}
        What to do when a text normalizes to the empty string. "blank" keeps
        a "" row so the transform stays length-preserving.
    """

    def __init__(self, on_empty: str = "raise"):
        self.on_empty = on_empty

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        if self.on_empty not in ("raise", "blank"):
            raise ValueError(f"on_empty must be 'raise' or 'blank', got {self.on_empty!r}")
        out = []
        for i, text in enumerate(X):
            cleaned = normalize_text(text)
            if not cleaned and self.on_empty == "raise":
                raise EmptyAfterPreprocess(f"row {i}")
            out.append(cleaned)
        return out


class StylometricFeaturizer(BaseEstimator, TransformerMixin):
    """Map preprocessed texts to the stylometric feature matrix.

    Undefined ratios come out as NaN; ``StylometricDetector``'s scaler mean-
    imputes them. Texts with no word tokens raise :class:`NoWords` unless
    ``on_no_words="nan"``, which emits an all-NaN row instead.
    """

    def __init__(self, on_no_words: str = "raise"):
        self.on_no_words = on_no_words

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        if self.on_no_words not in ("raise", "nan"):
            raise ValueError(f"on_no_words must be 'raise' or 'nan', got {self.on_no_words!r}")
        rows = []
        for i, text in enumerate(X):
            try:
                fv = extract_features(text)
            except NoWords:
                if self.on_no_words == "raise":
                    raise NoWords(f"row {i} has no word tokens")
                rows.append([math.nan] * len(FEATURE_NAMES))
                continue
            values = fv.as_dict()
            rows.append([math.nan if values[name] is None else values[name] for name in FEATURE_NAMES])
        return np.array(rows, dtype=float).reshape(len(rows), len(FEATURE_NAMES))

    def get_feature_names_out(self, input_features=None):
        return np.array(FEATURE_NAMES, dtype=object)


class StylometricDetector(BaseEstimator, ClassifierMixin):
    """Logistic detector over stylometric features with early stopping.

    ``fit`` accepts an explicit validation split; without one it carves
    ``validation_fraction`` off the training rows with the seeded RNG. Labels
    may be "human"/"ai" strings or 0/1 integers (1 = ai).
    """

    def __init__(
        self,
        learning_rate: float = 0.05,
        max_epochs: int = 500,
        l2: float = 1e-4,
        patience: int = 20,
        seed: int = 0,
        batch_size: int | None = None,
        threshold: float = 0.5,
        validation_fraction: float = 0.1,
    ):
        self.learning_rate = learning_rate
        self.max_epochs = max_epochs
        self.l2 = l2
        self.patience = patience
        self.seed = seed
        self.batch_size = batch_size
        self.threshold = threshold
        self.validation_fraction = validation_fraction

    def _config(self) -> _detector.TrainConfig:
        return _detector.TrainConfig(
            learning_rate=self.learning_rate,
            max_epochs=self.max_epochs,
            l2=self.l2,
            patience=self.patience,
            seed=self.seed,
            batch_size=self.batch_size,
        )

    def fit(self, X, y, X_val=None, y_val=None, feature_names=None):
        X = check_array(X, ensure_all_finite="allow-nan")
        y = np.asarray(y)
        names = tuple(feature_names) if feature_names is not None else tuple(
            f"x{j}" for j in range(X.shape[1])
        )
        if X_val is None:
            rng = np.random.default_rng(self.seed)
            order = rng.permutation(X.shape[0])
            n_val = max(1, int(round(self.validation_fraction * X.shape[0])))
            val_idx, train_idx = order[:n_val], order[n_val:]
            X, X_val = X[train_idx], X[val_idx]
            y, y_val = y[train_idx], y[val_idx]
        else:
            X_val = check_array(X_val, ensure_all_finite="allow-nan")
            y_val = np.asarray(y_val)

        self.classes_ = np.unique(np.concatenate([y, y_val]))
        model, history = _detector.train_detector(X, y, X_val, y_val, names, self._config())
        model.threshold = self.threshold
        self.model_ = model
        self.history_ = history
        self.input_feature_names_ = names
        self.n_features_in_ = len(names)
        return self

    def _check_fitted(self):
        if not hasattr(self, "model_"):
            raise NotFittedError("StylometricDetector is not fitted yet")

    def decision_function(self, X):
        self._check_fitted()
        X = check_array(X, ensure_all_finite="allow-nan")
        return _detector.predict_proba_matrix(self.model_, X, self.input_feature_names_)

    def predict_proba(self, X):
        prob_ai = self.decision_function(X)
        columns = {
            _detector.POSITIVE_LABEL: prob_ai,
            _detector.NEGATIVE_LABEL: 1.0 - prob_ai,
            1: prob_ai,
            0: 1.0 - prob_ai,
        }
        return np.column_stack([columns[cls] for cls in self.classes_])

    def predict(self, X):
        prob_ai = self.decision_function(X)
        is_ai = prob_ai >= self.threshold
        if self.classes_.dtype.kind in ("U", "S", "O"):
            return np.where(is_ai, _detector.POSITIVE_LABEL, _detector.NEGATIVE_LABEL)
        return is_ai.astype(self.classes_.dtype)
