"""Chunk JSONL reading (the upstream pipeline's wire format)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

LABEL2ID = {"human": 0, "ai": 1}
ID2LABEL = {0: "human", 1: "ai"}


@dataclass(frozen=True)
class ChunkRow:
    chunk_id: str
    text: str
    label: str | None


def read_chunk_file(path: str | Path, require_label: bool = True) -> list[ChunkRow]:
    """Load chunk rows in file order; labels must be human/ai when required."""
    rows = []
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{line_no}: invalid JSON ({exc.msg})") from exc
            for key in ("chunk_id", "text"):
                if key not in obj:
                    raise ValueError(f"{path}:{line_no}: missing field {key!r}")
            label = obj.get("label")
            if require_label and label not in LABEL2ID:
                raise ValueError(f"{path}:{line_no}: label must be 'human' or 'ai', got {label!r}")
            rows.append(ChunkRow(chunk_id=str(obj["chunk_id"]), text=obj["text"], label=label))
    if not rows:
        raise ValueError(f"{path}: no rows")
    return rows
