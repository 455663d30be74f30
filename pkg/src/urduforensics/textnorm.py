"""Urdu-aware text normalization and tokenization.

The preprocessing pipeline applies, in order: Unicode canonical composition
(NFC), harakat/diacritic removal, character filtering against an allowed set,
and whitespace collapsing. All functions are pure and idempotent as a
pipeline, so preprocessed text can be fed back in without change.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from functools import lru_cache

from .errors import EmptyAfterPreprocess

# Harakat/tashkeel range plus the combining hamza group and superscript alef,
# which behaves as a diacritic in Urdu.
DIACRITICS = frozenset(chr(cp) for cp in range(0x064B, 0x0656)) | {"ٰ"}

# Arabic-script blocks searched for letters during filtering.
_ARABIC_BLOCKS = (
    (0x0600, 0x06FF),
    (0x0750, 0x077F),
    (0xFB50, 0xFDFF),
    (0xFE70, 0xFEFF),
)

# Urdu punctuation preserved for sentence-boundary clarity, plus the ASCII
# marks that show up in code-mixed and wire-service text.
URDU_PUNCTUATION = "۔،؛؟"  # ۔ ، ؛ ؟
ASCII_PUNCTUATION = ".,!\"'()-"
KEPT_PUNCTUATION = frozenset(URDU_PUNCTUATION + ASCII_PUNCTUATION)

# Sentence ends after any of these; ASCII '.' and '!' are included because
# mixed-source corpora use both conventions.
SENTENCE_TERMINATORS = frozenset("۔؟!.")

_WHITESPACE_RE = re.compile(r"\s+")
_PUNCT_STRIP = URDU_PUNCTUATION + ASCII_PUNCTUATION


@dataclass(frozen=True)
class RawDocument:
    """One labeled text with provenance."""

    id: str
    text: str
    label: str  # "human" | "ai"
    generator: str | None = None
    source: str = ""
    domain: str = ""


@dataclass(frozen=True)
class NormalizedText:
    """Preprocessed text plus scalar counts before and after."""

    text: str
    original_length: int
    normalized_length: int


def normalize_unicode(text: str) -> str:
    """Return the canonical composed (NFC) form of ``text``."""
    return unicodedata.normalize("NFC", text)


def remove_diacritics(text: str) -> str:
    """Delete every harakat/diacritic scalar, preserving all other characters."""
    return "".join(ch for ch in text if ch not in DIACRITICS)


@lru_cache(maxsize=4096)
def _is_allowed(ch: str) -> bool:
    if ch.isspace():
        return True
    if ch in KEPT_PUNCTUATION:
        return True
    if ch.isascii():
        return ch.isalnum()
    cp = ord(ch)
    if 0x0660 <= cp <= 0x0669 or 0x06F0 <= cp <= 0x06F9:  # Arabic-Indic digits
        return True
    for lo, hi in _ARABIC_BLOCKS:
        if lo <= cp <= hi:
            return unicodedata.category(ch).startswith("L")
    return False


def filter_characters(text: str) -> str:
    """Delete characters outside the allowed set (letters, digits, kept punctuation, whitespace)."""
    return "".join(ch for ch in text if _is_allowed(ch))


def collapse_whitespace(text: str) -> str:
    """Replace each maximal whitespace run with a single space and trim the ends."""
    return _WHITESPACE_RE.sub(" ", text).strip()


def normalize_text(text: str) -> str:
    """Apply the full pipeline: NFC, diacritic removal, filtering, whitespace collapse."""
    return collapse_whitespace(filter_characters(remove_diacritics(normalize_unicode(text))))


def preprocess(doc: RawDocument) -> NormalizedText:
    """Normalize ``doc.text`` and record scalar counts before and after.

    Raises :class:`EmptyAfterPreprocess` when nothing survives; callers are
    expected to drop the document and log its id.
    """
    cleaned = normalize_text(doc.text)
    if not cleaned:
        raise EmptyAfterPreprocess(doc.id)
    return NormalizedText(
        text=cleaned,
        original_length=len(doc.text),
        normalized_length=len(cleaned),
    )


def tokenize_words(text: str) -> list[str]:
    """Split preprocessed text into word tokens.

    Splits on whitespace, strips leading/trailing punctuation from each token,
    and drops tokens that were punctuation-only. No morphological
    segmentation is attempted.
    """
    tokens = []
    for piece in text.split():
        word = piece.strip(_PUNCT_STRIP)
        if word:
            tokens.append(word)
    return tokens


def split_sentences(text: str) -> list[str]:
    """Split preprocessed text into sentences.

    A sentence ends after each terminator (۔ ؟ ! .); trailing text without a
    terminator counts as one sentence. Sentences are trimmed and empty ones
    dropped.
    """
    sentences = []
    buf: list[str] = []
    for ch in text:
        buf.append(ch)
        if ch in SENTENCE_TERMINATORS:
            sentence = "".join(buf).strip()
            if sentence:
                sentences.append(sentence)
            buf = []
    tail = "".join(buf).strip()
    if tail:
        sentences.append(tail)
    return sentences
