import random

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import Pipeline

from urduforensics.errors import EmptyAfterPreprocess, NoWords
from urduforensics.estimators import (
    StylometricDetector,
    StylometricFeaturizer,
    UrduTextNormalizer,
)
from urduforensics.stylometry import FEATURE_NAMES

from helpers import urdu_words_text


def _synthetic_corpus(n_per_class=40, seed=4):
    rng = random.Random(seed)
    texts, labels = [], []
    for _ in range(n_per_class):
        # human-ish: wide sentence-length spread, varied vocabulary
        texts.append(urdu_words_text(rng, rng.randint(30, 90), word_len=(2, 12), terminator_every=(2, 14)))
        labels.append("human")
    for _ in range(n_per_class):
        # ai-ish: uniform sentences over a narrow vocabulary
        words = [rng.choice(["نظام", "تجزیہ", "مواد", "متن", "ماڈل", "نتیجہ"]) for _ in range(rng.randint(30, 90))]
        sentences = []
        for i in range(0, len(words), 8):
            sentences.append(" ".join(words[i : i + 8]) + "۔")
        texts.append(" ".join(sentences))
        labels.append("ai")
    return texts, labels


def test_normalizer_cleans_and_preserves_length():
    normalizer = UrduTextNormalizer()
    out = normalizer.fit_transform(["اُردُو   زبان", "کتاب۔"])
    assert out == ["اردو زبان", "کتاب۔"]


def test_normalizer_on_empty_modes():
    with pytest.raises(EmptyAfterPreprocess):
        UrduTextNormalizer().transform(["😀"])
    assert UrduTextNormalizer(on_empty="blank").transform(["😀"]) == [""]


def test_featurizer_shape_and_names():
    featurizer = StylometricFeaturizer()
    X = featurizer.fit_transform(["یہ کتاب ہے۔", "کتاب"])
    assert X.shape == (2, len(FEATURE_NAMES))
    assert list(featurizer.get_feature_names_out()) == list(FEATURE_NAMES)
    # single-word text has undefined n-gram ratios -> NaN cells
    assert np.isnan(X[1, FEATURE_NAMES.index("bigram_uniqueness")])


def test_featurizer_no_words_modes():
    with pytest.raises(NoWords):
        StylometricFeaturizer().transform(["،"])
    X = StylometricFeaturizer(on_no_words="nan").transform(["،"])
    assert np.isnan(X).all()


def test_detector_params_roundtrip_and_clone():
    detector = StylometricDetector(learning_rate=0.1, patience=3, seed=9)
    assert detector.get_params()["learning_rate"] == 0.1
    cloned = clone(detector)
    assert cloned.get_params() == detector.get_params()


def test_detector_not_fitted_error():
    with pytest.raises(NotFittedError):
        StylometricDetector().predict(np.zeros((1, 3)))


def test_detector_fit_predict_with_explicit_validation():
    rng = np.random.default_rng(0)
    X = np.vstack([rng.normal(0, 1, (60, 2)), rng.normal(8, 1, (60, 2))])
    y = np.array(["human"] * 60 + ["ai"] * 60)
    order = rng.permutation(120)
    X, y = X[order], y[order]
    detector = StylometricDetector(max_epochs=200, patience=10)
    detector.fit(X[:90], y[:90], X_val=X[90:], y_val=y[90:])
    assert (detector.predict(X[90:]) == y[90:]).mean() == 1.0
    proba = detector.predict_proba(X[90:])
    assert proba.shape == (30, 2)
    assert np.allclose(proba.sum(axis=1), 1.0)
    assert list(detector.classes_) == ["ai", "human"]


def test_detector_internal_validation_split():
    rng = np.random.default_rng(1)
    X = np.vstack([rng.normal(0, 1, (50, 2)), rng.normal(6, 1, (50, 2))])
    y = np.array([0] * 50 + [1] * 50)
    order = rng.permutation(100)
    detector = StylometricDetector(validation_fraction=0.2, seed=3)
    detector.fit(X[order], y[order])
    predictions = detector.predict(X)
    assert predictions.dtype == y.dtype
    assert (predictions == y).mean() > 0.95


def test_full_pipeline_composes():
    texts, labels = _synthetic_corpus()
    pipeline = Pipeline(
        [
            ("normalize", UrduTextNormalizer()),
            ("featurize", StylometricFeaturizer()),
            ("detect", StylometricDetector(seed=0, max_epochs=300, patience=15)),
        ]
    )
    pipeline.fit(texts, labels)
    predictions = pipeline.predict(texts)
    accuracy = (predictions == np.array(labels)).mean()
    assert accuracy > 0.8  # the synthetic styles are clearly separable
