"""JSONL corpus/chunk schemas, report serialization, and run manifests.

All files are UTF-8. Content files are byte-identical across reruns with the
same inputs and flags; timestamps live only in the manifest written beside
each output.
"""

from __future__ import annotations

import dataclasses
import json
import sys
import time
from pathlib import Path
from typing import Iterable, Iterator

from .corpus import Chunk, ChunkingSummary, DatasetSplit
from .detector import EvalReport
from .errors import RecordError
from .stats import ComparisonReport, TestResult
from .stylometry import NgramTable
from .textnorm import RawDocument

LABELS = ("human", "ai")
GENERATORS = ("gpt-4o-mini", "gemini", "kimi", "unknown")

RAW_FIELDS = {"id", "text", "label", "generator", "source", "domain"}
NORMALIZED_EXTRA_FIELDS = {"original_length", "normalized_length"}
CHUNK_FIELDS = {"chunk_id", "parent_id", "index", "text", "label", "char_start", "char_end"}
PREDICTION_FIELDS = {"id", "prob_ai", "label_pred"}


def read_jsonl(path: str | Path) -> Iterator[tuple[int, dict]]:
    """Yield (1-based line number, parsed object); RecordError on bad JSON."""
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise RecordError(line_no, f"invalid JSON ({exc.msg})") from exc
            if not isinstance(obj, dict):
                raise RecordError(line_no, "record is not a JSON object")
            yield line_no, obj


def write_jsonl(path: str | Path, rows: Iterable[dict]) -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as handle:
        for row in rows:
            handle.write(json.dumps(row, ensure_ascii=False) + "\n")
            count += 1
    return count


def parse_raw_document(obj: dict, line_no: int, normalized: bool = False) -> RawDocument:
    """Validate one corpus record and build a RawDocument.

    ``normalized=True`` additionally allows the two length fields the
    preprocess stage appends.
    """
    allowed = RAW_FIELDS | (NORMALIZED_EXTRA_FIELDS if normalized else set())
    unknown = set(obj) - allowed
    if unknown:
        raise RecordError(line_no, f"unknown fields {sorted(unknown)}")
    for key in ("id", "text", "label"):
        if key not in obj:
            raise RecordError(line_no, f"missing required field {key!r}")
    doc_id, text, label = obj["id"], obj["text"], obj["label"]
    if not isinstance(doc_id, str) or not doc_id:
        raise RecordError(line_no, "'id' must be a nonempty string")
    if not isinstance(text, str) or not text.strip():
        raise RecordError(line_no, "'text' must be a nonempty string")
    if label not in LABELS:
        raise RecordError(line_no, f"'label' must be one of {LABELS}, got {label!r}")
    generator = obj.get("generator")
    if label == "human" and generator is not None:
        raise RecordError(line_no, "human documents must not carry a generator")
    if generator is not None and generator not in GENERATORS:
        raise RecordError(line_no, f"'generator' must be one of {GENERATORS} or null, got {generator!r}")
    return RawDocument(
        id=doc_id,
        text=text,
        label=label,
        generator=generator,
        source=obj.get("source") or "",
        domain=obj.get("domain") or "",
    )


def read_corpus(path: str | Path, normalized: bool = False) -> list[RawDocument]:
    docs = []
    seen: set[str] = set()
    for line_no, obj in read_jsonl(path):
        doc = parse_raw_document(obj, line_no, normalized=normalized)
        if doc.id in seen:
            raise RecordError(line_no, f"duplicate document id {doc.id!r}")
        seen.add(doc.id)
        docs.append(doc)
    return docs


def document_row(doc: RawDocument) -> dict:
    return {
        "id": doc.id,
        "text": doc.text,
        "label": doc.label,
        "generator": doc.generator,
        "source": doc.source,
        "domain": doc.domain,
    }


def parse_chunk(obj: dict, line_no: int) -> Chunk:
    unknown = set(obj) - CHUNK_FIELDS
    if unknown:
        raise RecordError(line_no, f"unknown fields {sorted(unknown)}")
    missing = CHUNK_FIELDS - set(obj)
    if missing:
        raise RecordError(line_no, f"missing fields {sorted(missing)}")
    if obj["label"] not in LABELS:
        raise RecordError(line_no, f"'label' must be one of {LABELS}, got {obj['label']!r}")
    try:
        return Chunk(
            chunk_id=str(obj["chunk_id"]),
            parent_id=str(obj["parent_id"]),
            index=int(obj["index"]),
            text=obj["text"],
            label=obj["label"],
            char_start=int(obj["char_start"]),
            char_end=int(obj["char_end"]),
        )
    except (TypeError, ValueError) as exc:
        raise RecordError(line_no, f"bad chunk field: {exc}") from exc


def read_chunks(path: str | Path) -> list[Chunk]:
    return [parse_chunk(obj, line_no) for line_no, obj in read_jsonl(path)]


def chunk_row(chunk: Chunk) -> dict:
    return {
        "chunk_id": chunk.chunk_id,
        "parent_id": chunk.parent_id,
        "index": chunk.index,
        "text": chunk.text,
        "label": chunk.label,
        "char_start": chunk.char_start,
        "char_end": chunk.char_end,
    }


def parse_prediction(obj: dict, line_no: int) -> dict:
    missing = PREDICTION_FIELDS - set(obj)
    if missing:
        raise RecordError(line_no, f"missing fields {sorted(missing)}")
    prob = obj["prob_ai"]
    if not isinstance(prob, (int, float)) or isinstance(prob, bool) or not 0.0 <= prob <= 1.0:
        raise RecordError(line_no, f"'prob_ai' must be a number in [0,1], got {prob!r}")
    if obj["label_pred"] not in LABELS:
        raise RecordError(line_no, f"'label_pred' must be one of {LABELS}, got {obj['label_pred']!r}")
    if not isinstance(obj["id"], str) or not obj["id"]:
        raise RecordError(line_no, "'id' must be a nonempty string")
    return {"id": obj["id"], "prob_ai": float(prob), "label_pred": obj["label_pred"]}


# ---------------------------------------------------------------------------
# Report serialization
# ---------------------------------------------------------------------------

def summary_dict(summary: ChunkingSummary) -> dict:
    return dataclasses.asdict(summary)


def test_result_dict(result: TestResult | None) -> dict | None:
    if result is None:
        return None
    return {
        "statistic": result.statistic,
        "p_value": result.p_value,
        "method": result.method,
        "n1": result.n1,
        "n2": result.n2,
        "df": result.df,
    }


def comparison_dict(report: ComparisonReport) -> dict:
    metrics = {}
    for name, mc in report.metrics.items():
        metrics[name] = {
            "n_human": mc.n_human,
            "n_ai": mc.n_ai,
            "human_mean": mc.human_mean,
            "ai_mean": mc.ai_mean,
            "human_std": mc.human_std,
            "ai_std": mc.ai_std,
            "t_test": test_result_dict(mc.t_result),
            "mann_whitney": test_result_dict(mc.u_result),
            "significant": mc.significant,
            "t_error": mc.t_error,
            "u_error": mc.u_error,
        }
    return {"alpha": report.alpha, "metrics": metrics}


def ngram_dict(table: NgramTable, top_k: int) -> dict:
    return {
        "n": table.n,
        "total": table.total,
        "unique": table.unique,
        "top": [{"ngram": " ".join(gram), "count": count} for gram, count in table.entries[:top_k]],
    }


def eval_report_dict(report: EvalReport) -> dict:
    return {
        "n": report.n,
        "confusion": {"tp": report.tp, "fp": report.fp, "fn": report.fn, "tn": report.tn},
        "accuracy": report.accuracy,
        "precision": report.precision,
        "recall": report.recall,
        "f1": report.f1,
        "macro": {
            "precision": report.macro_precision,
            "recall": report.macro_recall,
            "f1": report.macro_f1,
        },
        "weighted": {
            "precision": report.weighted_precision,
            "recall": report.weighted_recall,
            "f1": report.weighted_f1,
        },
    }


def split_counts(split: DatasetSplit) -> dict:
    sizes = split.sizes()
    return {
        "train": sizes[0],
        "validation": sizes[1],
        "test": sizes[2],
        "labels": split.label_counts(),
    }


def write_json(path: str | Path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")


def write_manifest(
    output: str | Path,
    command: str,
    flags: dict,
    inputs: list[str],
    outputs: list[str],
    seed: int | None = None,
    extra: dict | None = None,
) -> Path:
    """Write the run manifest beside ``output`` and return its path."""
    from . import __version__

    manifest = {
        "command": command,
        "flags": flags,
        "inputs": inputs,
        "outputs": outputs,
        "seed": seed,
        "tool_version": __version__,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z", time.localtime()),
    }
    if extra:
        manifest.update(extra)
    out = Path(output)
    path = out / "manifest.json" if out.is_dir() else out.with_name(out.name + ".manifest.json")
    write_json(path, manifest)
    return path


def log(message: str) -> None:
    print(message, file=sys.stderr)
