"""Fine-tuning configuration."""

from __future__ import annotations

from dataclasses import asdict, dataclass

# The three encoders evaluated for this task; any sequence-classification
# checkpoint id or local path works.
KNOWN_MODELS = (
    "microsoft/mdeberta-v3-base",
    "distilbert/distilbert-base-multilingual-cased",
    "FacebookAI/xlm-roberta-base",
)

DEFAULT_MODEL = KNOWN_MODELS[0]


@dataclass(frozen=True)
class FinetuneConfig:
    model_id: str = DEFAULT_MODEL  # hub id or local checkpoint path
    max_length: int = 512
    learning_rate: float = 2e-5
    epochs: int = 8
    patience: int = 2
    seed: int = 0
    batch_size: int = 16

    def validate(self) -> None:
        if self.max_length < 1 or self.max_length > 512:
            raise ValueError("max_length must be in [1, 512]")
        if self.patience < 1:
            raise ValueError("patience must be >= 1")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")

    def as_dict(self) -> dict:
        return asdict(self)
