"""Batch inference emitting the pipeline's prediction JSONL contract."""

from __future__ import annotations

import json
from pathlib import Path

import torch
from transformers import AutoModelForSequenceClassification, AutoTokenizer

from .data import read_chunk_file
from .trainer import _batches, _collate, _device


def predict(
    checkpoint: str | Path,
    test_path: str | Path,
    out_path: str | Path,
    batch_size: int = 32,
    max_length: int = 512,
) -> int:
    """Score every row of ``test_path`` in order; one output line per input.

    Rows are ``{"id", "prob_ai", "label_pred"}``, byte-compatible with the
    evaluation harness's --pred input. Returns the row count.
    """
    tokenizer = AutoTokenizer.from_pretrained(checkpoint)
    model = AutoModelForSequenceClassification.from_pretrained(checkpoint)
    device = _device()
    model.to(device)
    model.eval()

    rows = read_chunk_file(test_path, require_label=False)
    encodings = [dict(tokenizer(row.text, truncation=True, max_length=max_length)) for row in rows]
    ai_index = model.config.label2id.get("ai", 1)

    probs: list[float] = []
    with torch.no_grad():
        for idx in _batches(len(encodings), batch_size):
            batch, _ = _collate(tokenizer, encodings, None, idx, device)
            logits = model(**batch).logits
            probs.extend(torch.softmax(logits, dim=-1)[:, ai_index].tolist())

    with open(out_path, "w", encoding="utf-8") as handle:
        for row, prob in zip(rows, probs):
            record = {
                "id": row.chunk_id,
                "prob_ai": float(prob),
                "label_pred": "ai" if prob >= 0.5 else "human",
            }
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")
    return len(rows)
