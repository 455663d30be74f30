"""Transformer fine-tuning adapter for the Urdu human/AI detection pipeline."""

__version__ = "0.1.0"

from .config import DEFAULT_MODEL, KNOWN_MODELS, FinetuneConfig
from .predictor import predict
from .trainer import finetune

__all__ = ["DEFAULT_MODEL", "KNOWN_MODELS", "FinetuneConfig", "finetune", "predict", "__version__"]
