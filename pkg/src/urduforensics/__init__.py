"""Urdu corpus forensics: preprocessing, stylometry, tests, and detection."""

__version__ = "0.1.0"

from .corpus import (
    Chunk,
    ChunkingConfig,
    ChunkingSummary,
    DatasetSplit,
    SplitConfig,
    chunk_corpus,
    chunk_text,
    split,
)
from .detector import (
    DetectorModel,
    EvalReport,
    ScalerState,
    TrainConfig,
    evaluate,
    fit_scaler,
    load_model,
    loss_and_gradient,
    predict_proba,
    save_model,
    train_detector,
)
from .estimators import StylometricDetector, StylometricFeaturizer, UrduTextNormalizer
from .stats import (
    ComparisonReport,
    TestResult,
    compare_groups,
    mann_whitney_u,
    welch_t_test,
)
from .stylometry import (
    FEATURE_NAMES,
    CorpusSummary,
    FeatureVector,
    NgramTable,
    corpus_summary,
    extract_features,
    ngram_table,
    type_token_ratio,
)
from .textnorm import (
    NormalizedText,
    RawDocument,
    collapse_whitespace,
    filter_characters,
    normalize_text,
    normalize_unicode,
    preprocess,
    remove_diacritics,
    split_sentences,
    tokenize_words,
)

__all__ = [
    "__version__",
    "Chunk",
    "ChunkingConfig",
    "ChunkingSummary",
    "ComparisonReport",
    "CorpusSummary",
    "DatasetSplit",
    "DetectorModel",
    "EvalReport",
    "FEATURE_NAMES",
    "FeatureVector",
    "NgramTable",
    "NormalizedText",
    "RawDocument",
    "ScalerState",
    "SplitConfig",
    "StylometricDetector",
    "StylometricFeaturizer",
    "TestResult",
    "TrainConfig",
    "UrduTextNormalizer",
    "chunk_corpus",
    "chunk_text",
    "collapse_whitespace",
    "compare_groups",
    "corpus_summary",
    "evaluate",
    "extract_features",
    "filter_characters",
    "fit_scaler",
    "load_model",
    "loss_and_gradient",
    "mann_whitney_u",
    "ngram_table",
    "normalize_text",
    "normalize_unicode",
    "predict_proba",
    "preprocess",
    "remove_diacritics",
    "save_model",
    "split",
    "split_sentences",
    "tokenize_words",
    "train_detector",
    "type_token_ratio",
    "welch_t_test",
]
