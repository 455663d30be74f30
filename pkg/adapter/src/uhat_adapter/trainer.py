"""Fine-tuning loop: AdamW, early stopping on validation loss, best-epoch checkpoint."""

from __future__ import annotations

import json
import math
from pathlib import Path

import torch
from transformers import AutoModelForSequenceClassification, AutoTokenizer

from .config import FinetuneConfig
from .data import ID2LABEL, LABEL2ID, ChunkRow, read_chunk_file


def load_model_and_tokenizer(model_id: str):
    tokenizer = AutoTokenizer.from_pretrained(model_id)
    model = AutoModelForSequenceClassification.from_pretrained(
        model_id,
        num_labels=2,
        id2label=ID2LABEL,
        label2id=LABEL2ID,
    )
    return model, tokenizer


def _device() -> torch.device:
    return torch.device("cuda" if torch.cuda.is_available() else "cpu")


def _encode(tokenizer, rows: list[ChunkRow], max_length: int):
    return [
        dict(tokenizer(row.text, truncation=True, max_length=max_length)) for row in rows
    ]


def _batches(n: int, batch_size: int, order=None):
    indices = order if order is not None else list(range(n))
    for lo in range(0, n, batch_size):
        yield indices[lo : lo + batch_size]


def _collate(tokenizer, encodings, labels, idx, device):
    batch = tokenizer.pad([encodings[i] for i in idx], return_tensors="pt").to(device)
    target = None
    if labels is not None:
        target = torch.tensor([labels[i] for i in idx], dtype=torch.long, device=device)
    return batch, target


def _weighted_f1(predictions: list[int], golds: list[int]) -> float:
    score = 0.0
    for cls in (0, 1):
        tp = sum(1 for p, g in zip(predictions, golds) if p == cls and g == cls)
        fp = sum(1 for p, g in zip(predictions, golds) if p == cls and g != cls)
        fn = sum(1 for p, g in zip(predictions, golds) if p != cls and g == cls)
        support = tp + fn
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / support if support else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        score += f1 * support
    return score / len(golds)


def _evaluate(model, tokenizer, encodings, labels, batch_size, device):
    model.eval()
    total_loss = 0.0
    predictions: list[int] = []
    with torch.no_grad():
        for idx in _batches(len(encodings), batch_size):
            batch, target = _collate(tokenizer, encodings, labels, idx, device)
            out = model(**batch, labels=target)
            total_loss += float(out.loss.detach()) * len(idx)
            predictions.extend(out.logits.argmax(dim=-1).tolist())
    return total_loss / len(encodings), _weighted_f1(predictions, labels)


def finetune(
    train_path: str | Path,
    val_path: str | Path,
    config: FinetuneConfig,
    out_dir: str | Path,
) -> dict:
    """Train a binary human/ai head on chunk files; keep the best-loss epoch.

    Writes ``<out_dir>/checkpoint`` (model + tokenizer of the best validation
    epoch) and ``<out_dir>/history.json`` with per-epoch train/val loss and
    validation weighted F1. Returns the history payload.
    """
    config.validate()
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    checkpoint_dir = out_dir / "checkpoint"

    torch.manual_seed(config.seed)
    model, tokenizer = load_model_and_tokenizer(config.model_id)
    capacity = getattr(model.config, "max_position_embeddings", None)
    if capacity is not None and config.max_length > capacity:
        raise ValueError(f"max_length {config.max_length} exceeds model capacity {capacity}")
    device = _device()
    model.to(device)

    train_rows = read_chunk_file(train_path)
    val_rows = read_chunk_file(val_path)
    train_enc = _encode(tokenizer, train_rows, config.max_length)
    val_enc = _encode(tokenizer, val_rows, config.max_length)
    train_labels = [LABEL2ID[row.label] for row in train_rows]
    val_labels = [LABEL2ID[row.label] for row in val_rows]

    optimizer = torch.optim.AdamW(model.parameters(), lr=config.learning_rate)
    shuffler = torch.Generator().manual_seed(config.seed)

    best_val = math.inf
    best_epoch = 0
    since_improved = 0
    epochs_log: list[dict] = []

    for epoch in range(1, config.epochs + 1):
        model.train()
        order = torch.randperm(len(train_enc), generator=shuffler).tolist()
        running = 0.0
        for idx in _batches(len(train_enc), config.batch_size, order):
            batch, target = _collate(tokenizer, train_enc, train_labels, idx, device)
            optimizer.zero_grad()
            out = model(**batch, labels=target)
            out.loss.backward()
            optimizer.step()
            running += float(out.loss.detach()) * len(idx)
        train_loss = running / len(train_enc)
        val_loss, val_f1 = _evaluate(model, tokenizer, val_enc, val_labels, config.batch_size, device)
        epochs_log.append(
            {"epoch": epoch, "train_loss": train_loss, "val_loss": val_loss, "val_f1": val_f1}
        )
        print(f"epoch {epoch}: train_loss={train_loss:.4f} val_loss={val_loss:.4f} val_f1={val_f1:.4f}")

        if val_loss < best_val:
            best_val = val_loss
            best_epoch = epoch
            since_improved = 0
            model.save_pretrained(checkpoint_dir)
            tokenizer.save_pretrained(checkpoint_dir)
        else:
            since_improved += 1
            if since_improved >= config.patience:
                print(f"early stop at epoch {epoch} (no improvement for {config.patience})")
                break

    history = {
        "config": config.as_dict(),
        "device": str(device),
        "epochs": epochs_log,
        "best_epoch": best_epoch,
        "best_val_loss": best_val,
        "stopped_epoch": epochs_log[-1]["epoch"],
        "checkpoint": str(checkpoint_dir),
    }
    (out_dir / "history.json").write_text(
        json.dumps(history, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    return history
