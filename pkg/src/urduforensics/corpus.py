"""Corpus mechanics: sliding-window chunking and deterministic splitting."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptySplit, InvalidConfig


@dataclass(frozen=True)
class ChunkingConfig:
    window: int = 450
    overlap: int = 100
    min_chunk: int = 45

    def validate(self) -> None:
        if not 0 < self.overlap < self.window:
            raise InvalidConfig(
                f"overlap must satisfy 0 < overlap < window, got overlap={self.overlap} window={self.window}"
            )
        if not 0 < self.min_chunk <= self.window:
            raise InvalidConfig(
                f"min_chunk must satisfy 0 < min_chunk <= window, got min_chunk={self.min_chunk}"
            )


@dataclass(frozen=True)
class Chunk:
    chunk_id: str
    parent_id: str
    index: int
    text: str
    label: str
    char_start: int
    char_end: int


@dataclass(frozen=True)
class ChunkingSummary:
    total_texts: int
    texts_chunked: int
    total_chunks: int
    avg_chunks_per_text: float
    chunk_length_min: int
    chunk_length_max: int
    chunk_length_mean: float
    chunk_length_std: float
    label_counts: dict[str, int]


@dataclass(frozen=True)
class SplitConfig:
    ratios: tuple[float, float, float] = (0.8, 0.1, 0.1)
    seed: int = 0
    mode: str = "chunk_level"  # "chunk_level" | "grouped"

    def validate(self) -> None:
        if len(self.ratios) != 3 or any(not 0 < r < 1 for r in self.ratios):
            raise InvalidConfig(f"each ratio must lie in (0,1), got {self.ratios}")
        if abs(sum(self.ratios) - 1.0) > 1e-9:
            raise InvalidConfig(f"ratios must sum to 1, got {sum(self.ratios)}")
        if self.mode not in ("chunk_level", "grouped"):
            raise InvalidConfig(f"unknown split mode {self.mode!r}")


@dataclass(frozen=True)
class DatasetSplit:
    train: list[Chunk]
    validation: list[Chunk]
    test: list[Chunk]

    def sizes(self) -> tuple[int, int, int]:
        return (len(self.train), len(self.validation), len(self.test))

    def label_counts(self) -> dict[str, dict[str, int]]:
        out = {}
        for name, part in (("train", self.train), ("validation", self.validation), ("test", self.test)):
            counts: dict[str, int] = {}
            for chunk in part:
                counts[chunk.label] = counts.get(chunk.label, 0) + 1
            out[name] = counts
        return out


def _snap_end(text: str, start: int, stride: int, candidate: int) -> int:
    """Snap a window end backward to whitespace without losing coverage.

    The search stops at ``start + stride`` (the next window's start): snapping
    any earlier would leave a gap no later window covers. When the boundary
    character itself is whitespace the cut is already word-safe.
    """
    if text[candidate].isspace():
        return candidate
    j = candidate - 1
    floor = start + stride
    while j >= floor:
        if text[j].isspace():
            return j
        j -= 1
    return candidate


def chunk_text(parent_id: str, text: str, label: str, config: ChunkingConfig = ChunkingConfig()) -> list[Chunk]:
    """Split one preprocessed text into overlapping, word-safe chunks.

    Texts no longer than the window come back as a single chunk. Otherwise
    windows start at 0, window-overlap, 2(window-overlap), ...; each window
    end is snapped backward to whitespace when possible, and a final fragment
    shorter than ``min_chunk`` is merged into the previous chunk (which may
    then exceed the window by at most min_chunk-1 characters).
    """
    config.validate()
    n = len(text)
    window, min_chunk = config.window, config.min_chunk
    stride = window - config.overlap

    bounds: list[tuple[int, int]] = []
    if n <= window:
        bounds.append((0, n))
    else:
        start = 0
        while True:
            if n - start <= window:
                if n - start < min_chunk and bounds:
                    prev_start, _ = bounds[-1]
                    bounds[-1] = (prev_start, n)  # tail merge
                else:
                    bounds.append((start, n))
                break
            end = _snap_end(text, start, stride, start + window)
            bounds.append((start, end))
            start += stride

    return [
        Chunk(
            chunk_id=f"{parent_id}#{i:04d}",
            parent_id=parent_id,
            index=i,
            text=text[cs:ce],
            label=label,
            char_start=cs,
            char_end=ce,
        )
        for i, (cs, ce) in enumerate(bounds)
    ]


def chunk_corpus(corpus: Iterable, config: ChunkingConfig = ChunkingConfig()) -> tuple[list[Chunk], ChunkingSummary]:
    """Chunk every document and compute the corpus-level summary.

    ``corpus`` is any iterable of objects with ``id``, ``text`` and ``label``
    attributes (documents must already be preprocessed). The summary's std is
    the population standard deviation.
    """
    config.validate()
    chunks: list[Chunk] = []
    total_texts = 0
    texts_chunked = 0
    label_counts: dict[str, int] = {}
    for doc in corpus:
        total_texts += 1
        doc_chunks = chunk_text(doc.id, doc.text, doc.label, config)
        if len(doc_chunks) > 1:
            texts_chunked += 1
        for chunk in doc_chunks:
            label_counts[chunk.label] = label_counts.get(chunk.label, 0) + 1
        chunks.extend(doc_chunks)

    if total_texts == 0:
        raise ValueError("cannot summarize an empty corpus")

    lengths = [len(c.text) for c in chunks]
    mean = sum(lengths) / len(lengths)
    var = sum((x - mean) ** 2 for x in lengths) / len(lengths)
    summary = ChunkingSummary(
        total_texts=total_texts,
        texts_chunked=texts_chunked,
        total_chunks=len(chunks),
        avg_chunks_per_text=len(chunks) / total_texts,
        chunk_length_min=min(lengths),
        chunk_length_max=max(lengths),
        chunk_length_mean=mean,
        chunk_length_std=math.sqrt(var),
        label_counts=label_counts,
    )
    return chunks, summary


def apportion(total: int, ratios: Sequence[float]) -> list[int]:
    """Largest-remainder apportionment of ``total`` items across ``ratios``."""
    quotas = [total * r for r in ratios]
    sizes = [math.floor(q) for q in quotas]
    seats = total - sum(sizes)
    order = sorted(range(len(ratios)), key=lambda i: (-(quotas[i] - sizes[i]), i))
    for i in order[:seats]:
        sizes[i] += 1
    return sizes


def split(chunks: Sequence[Chunk], config: SplitConfig = SplitConfig()) -> DatasetSplit:
    """Partition chunks into train/validation/test deterministically.

    ``chunk_level`` mode shuffles chunks with the seeded RNG and cuts by
    largest-remainder sizes, reproducing published counts exactly. ``grouped``
    mode apportions parents instead, so no parent text spans two splits
    (sizes then depend on chunks-per-parent and are approximate).
    """
    config.validate()
    if not chunks:
        raise EmptySplit("no chunks to split")
    rng = random.Random(config.seed)

    if config.mode == "chunk_level":
        sizes = apportion(len(chunks), config.ratios)
        if min(sizes) == 0:
            raise EmptySplit(f"split sizes {sizes} include an empty partition")
        order = list(chunks)
        rng.shuffle(order)
        a, b = sizes[0], sizes[0] + sizes[1]
        return DatasetSplit(train=order[:a], validation=order[a:b], test=order[b:])

    parents: list[str] = []
    seen = set()
    for chunk in chunks:
        if chunk.parent_id not in seen:
            seen.add(chunk.parent_id)
            parents.append(chunk.parent_id)
    sizes = apportion(len(parents), config.ratios)
    if min(sizes) == 0:
        raise EmptySplit(f"parent split sizes {sizes} include an empty partition")
    rng.shuffle(parents)
    a, b = sizes[0], sizes[0] + sizes[1]
    assignment = {}
    for i, parent in enumerate(parents):
        assignment[parent] = "train" if i < a else ("validation" if i < b else "test")
    parts: dict[str, list[Chunk]] = {"train": [], "validation": [], "test": []}
    for chunk in chunks:
        parts[assignment[chunk.parent_id]].append(chunk)
    result = DatasetSplit(train=parts["train"], validation=parts["validation"], test=parts["test"])
    if min(result.sizes()) == 0:
        raise EmptySplit("a grouped partition received no chunks")
    return result
