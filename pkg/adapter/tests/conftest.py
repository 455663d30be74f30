import json
import os
import random
from pathlib import Path

import pytest

os.environ.setdefault("TRANSFORMERS_OFFLINE", "1")
os.environ.setdefault("HF_HUB_OFFLINE", "1")

URDU = "اآبپتٹثجچحخدڈذرڑزژسشصضطظعغفقکگلمنںوہھءیئے"


@pytest.fixture(scope="session")
def tiny_checkpoint(tmp_path_factory):
    """A small randomly initialized encoder + tokenizer saved locally.

    Keeps the tests hub-independent; the adapter treats it like any other
    checkpoint path.
    """
    import torch
    from transformers import BertConfig, BertForSequenceClassification, BertTokenizerFast

    out = tmp_path_factory.mktemp("tiny-model")
    tokens = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]
    tokens += list(URDU) + ["##" + c for c in URDU]
    tokens += list("۔،؛؟.,!0123456789") + ["##" + d for d in "0123456789"]
    (out / "vocab.txt").write_text("\n".join(tokens) + "\n", encoding="utf-8")
    BertTokenizerFast(vocab_file=str(out / "vocab.txt"), do_lower_case=False).save_pretrained(out)

    config = BertConfig(
        vocab_size=len(tokens),
        hidden_size=32,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=64,
        max_position_embeddings=160,
    )
    torch.manual_seed(1234)
    BertForSequenceClassification(config).save_pretrained(out)
    return out


def make_chunk_rows(n: int, seed: int = 0) -> list[dict]:
    """Balanced synthetic chunk rows in the pipeline's chunk schema."""
    rng = random.Random(seed)
    rows = []
    for i in range(n):
        label = "ai" if i % 2 else "human"
        if label == "human":
            words = ["".join(rng.choice(URDU) for _ in range(rng.randint(2, 9))) for _ in range(rng.randint(15, 40))]
        else:
            vocab = ["".join(rng.choice(URDU[:12]) for _ in range(4)) for _ in range(6)]
            words = [rng.choice(vocab) for _ in range(rng.randint(15, 40))]
        text = " ".join(words) + "۔"
        rows.append(
            {
                "chunk_id": f"doc{i:03d}#0000",
                "parent_id": f"doc{i:03d}",
                "index": 0,
                "text": text,
                "label": label,
                "char_start": 0,
                "char_end": len(text),
            }
        )
    return rows


def write_chunks(path: Path, rows: list[dict]) -> Path:
    with open(path, "w", encoding="utf-8") as handle:
        for row in rows:
            handle.write(json.dumps(row, ensure_ascii=False) + "\n")
    return path
