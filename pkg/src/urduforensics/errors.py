"""Exception types shared across the toolkit."""


class UrduForensicsError(Exception):
    """Base class for all toolkit errors."""


class EmptyAfterPreprocess(UrduForensicsError):
    """Document text reduced to the empty string after preprocessing."""

    def __init__(self, doc_id: str):
        super().__init__(f"document {doc_id!r} is empty after preprocessing")
        self.doc_id = doc_id


class InvalidConfig(UrduForensicsError, ValueError):
    """A configuration value violates its invariants."""


class EmptySplit(UrduForensicsError):
    """A requested split ratio produced an empty partition."""


class NoWords(UrduForensicsError):
    """Text has zero tokens after tokenization."""


class TooShort(UrduForensicsError):
    """Token sequence is shorter than the requested n-gram size."""


class DegenerateSample(UrduForensicsError):
    """Sample is too small or too uniform for the requested test."""


class Diverged(UrduForensicsError):
    """Training loss became non-finite (learning rate too high)."""


class MissingFeature(UrduForensicsError):
    """A feature required by the model is absent from the input."""


class NoFeatures(UrduForensicsError):
    """Every feature was dropped while fitting the scaler."""


class LengthMismatch(UrduForensicsError, ValueError):
    """Prediction and gold label sequences have different lengths."""


class RecordError(UrduForensicsError, ValueError):
    """A JSONL record is malformed; carries the 1-based line number."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number
