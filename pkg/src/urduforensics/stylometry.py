"""Per-text stylometric features and corpus-level summary statistics.

Ratios with zero denominators (e.g. bigram uniqueness of a one-word text) are
represented as ``None`` rather than zero-filled, and group aggregation skips
them so means are not biased by sentinels.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, fields
from typing import Iterable, Sequence

from .errors import NoWords, TooShort
from .textnorm import KEPT_PUNCTUATION, split_sentences, tokenize_words


@dataclass(frozen=True)
class FeatureVector:
    char_count: int
    word_count: int
    sentence_count: int
    avg_word_length: float
    avg_sentence_length: float
    sentence_length_std: float
    punctuation_density: float
    char_diversity: float
    ttr: float
    bigram_uniqueness: float | None
    trigram_uniqueness: float | None

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


FEATURE_NAMES: tuple[str, ...] = tuple(f.name for f in fields(FeatureVector))

# Candidate set for the six complexity measures compared between groups.
COMPLEXITY_MEASURES: tuple[str, ...] = (
    "ttr",
    "avg_word_length",
    "avg_sentence_length",
    "sentence_length_std",
    "punctuation_density",
    "char_diversity",
)


@dataclass(frozen=True)
class CorpusSummary:
    total_texts: int
    total_words: int
    total_chars: int
    unique_words: int
    avg_text_length: float
    avg_words_per_text: float
    vocabulary_richness: float

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class NgramTable:
    n: int
    entries: list[tuple[tuple[str, ...], int]]  # sorted by frequency desc, then lexicographic
    total: int
    unique: int


def type_token_ratio(tokens: Sequence[str]) -> float:
    """Distinct-token count divided by token count."""
    if not tokens:
        raise NoWords("type_token_ratio needs at least one token")
    return len(set(tokens)) / len(tokens)


def ngram_table(tokens: Sequence[str], n: int) -> NgramTable:
    """Exact frequency table over the sliding token windows of size ``n``."""
    if len(tokens) < n:
        raise TooShort(f"need at least {n} tokens for {n}-grams, got {len(tokens)}")
    counts = Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))
    entries = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    total = len(tokens) - n + 1
    return NgramTable(n=n, entries=entries, total=total, unique=len(counts))


def _uniqueness(tokens: Sequence[str], n: int) -> float | None:
    if len(tokens) < n:
        return None
    table = ngram_table(tokens, n)
    return table.unique / table.total


def extract_features(text: str) -> FeatureVector:
    """Compute the full stylometric vector for one preprocessed text."""
    tokens = tokenize_words(text)
    if not tokens:
        raise NoWords("text has no word tokens")
    sentences = split_sentences(text)
    sentence_word_counts = [len(tokenize_words(s)) for s in sentences]

    char_count = len(text)
    word_count = len(tokens)
    sentence_count = len(sentences)
    mean_sentence_len = sum(sentence_word_counts) / sentence_count
    var = sum((c - mean_sentence_len) ** 2 for c in sentence_word_counts) / sentence_count
    punct = sum(1 for ch in text if ch in KEPT_PUNCTUATION)

    return FeatureVector(
        char_count=char_count,
        word_count=word_count,
        sentence_count=sentence_count,
        avg_word_length=sum(len(t) for t in tokens) / word_count,
        avg_sentence_length=mean_sentence_len,
        sentence_length_std=math.sqrt(var),
        punctuation_density=punct / char_count,
        char_diversity=len(set(text)) / char_count,
        ttr=type_token_ratio(tokens),
        bigram_uniqueness=_uniqueness(tokens, 2),
        trigram_uniqueness=_uniqueness(tokens, 3),
    )


def corpus_summary(texts: Iterable[str]) -> CorpusSummary:
    """Aggregate one label group of preprocessed texts.

    ``unique_words`` is the group-wide distinct-token count;
    ``vocabulary_richness`` is the mean per-text distinct-token count.
    """
    total_texts = 0
    total_words = 0
    total_chars = 0
    vocab: set[str] = set()
    per_text_unique: list[int] = []
    for text in texts:
        tokens = tokenize_words(text)
        if not tokens:
            raise NoWords("group contains a text with no word tokens")
        total_texts += 1
        total_words += len(tokens)
        total_chars += len(text)
        vocab.update(tokens)
        per_text_unique.append(len(set(tokens)))
    if total_texts == 0:
        raise NoWords("group is empty")
    return CorpusSummary(
        total_texts=total_texts,
        total_words=total_words,
        total_chars=total_chars,
        unique_words=len(vocab),
        avg_text_length=total_chars / total_texts,
        avg_words_per_text=total_words / total_texts,
        vocabulary_richness=sum(per_text_unique) / total_texts,
    )


def summarize_by_label(docs: Iterable) -> tuple[dict[str, CorpusSummary], list[str]]:
    """Group documents by label and summarize each group.

    Documents whose text has no tokens are skipped and their ids returned, so
    one bad record never aborts a corpus-wide report.
    """
    groups: dict[str, list[str]] = {}
    skipped: list[str] = []
    for doc in docs:
        if not tokenize_words(doc.text):
            skipped.append(doc.id)
            continue
        groups.setdefault(doc.label, []).append(doc.text)
    summaries = {label: corpus_summary(texts) for label, texts in sorted(groups.items())}
    return summaries, skipped
