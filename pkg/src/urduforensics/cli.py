"""Command-line pipeline: preprocess, chunk, analyze, split, train, evaluate, detect.

Every stage reads and writes files, so runs are reproducible and external
detectors can interoperate through the prediction JSONL contract. Exit codes:
0 success, 1 invalid input or config, 2 I/O or environment failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

import numpy as np

from . import __version__, io
from .corpus import ChunkingConfig, SplitConfig, chunk_corpus, split
from .detector import (
    TrainConfig,
    evaluate,
    load_model,
    predict_label,
    predict_proba_matrix,
    save_model,
    train_detector,
)
from .errors import EmptyAfterPreprocess, NoWords, RecordError, UrduForensicsError
from .stylometry import FEATURE_NAMES, extract_features, summarize_by_label
from .stats import compare_groups
from .textnorm import RawDocument, normalize_text, preprocess, tokenize_words


def _features_matrix(chunks):
    """Featurize chunk rows; returns (matrix, labels, ids, skipped_ids)."""
    rows, labels, ids, skipped = [], [], [], []
    for chunk in chunks:
        try:
            fv = extract_features(chunk.text)
        except NoWords:
            skipped.append(chunk.chunk_id)
            continue
        values = fv.as_dict()
        rows.append([np.nan if values[name] is None else values[name] for name in FEATURE_NAMES])
        labels.append(chunk.label)
        ids.append(chunk.chunk_id)
    matrix = np.array(rows, dtype=float).reshape(len(rows), len(FEATURE_NAMES))
    return matrix, labels, ids, skipped


def cmd_preprocess(args) -> int:
    docs = io.read_corpus(args.input)
    rows = []
    dropped = 0
    for doc in docs:
        try:
            normalized = preprocess(doc)
        except EmptyAfterPreprocess:
            io.log(f"dropped {doc.id}: empty after preprocessing")
            dropped += 1
            continue
        row = io.document_row(doc)
        row["text"] = normalized.text
        row["original_length"] = normalized.original_length
        row["normalized_length"] = normalized.normalized_length
        rows.append(row)
    io.write_jsonl(args.out, rows)
    io.log(f"preprocessed {len(rows)} documents ({dropped} dropped) -> {args.out}")
    io.write_manifest(
        args.out,
        "preprocess",
        {"in": args.input, "out": args.out},
        inputs=[args.input],
        outputs=[args.out],
        extra={"documents": len(rows), "dropped": dropped},
    )
    return 0


def cmd_chunk(args) -> int:
    config = ChunkingConfig(window=args.window, overlap=args.overlap, min_chunk=args.min_chunk)
    config.validate()
    docs = io.read_corpus(args.input, normalized=True)
    chunks, summary = chunk_corpus(docs, config)
    io.write_jsonl(args.out, (io.chunk_row(c) for c in chunks))
    io.write_json(args.summary, io.summary_dict(summary))
    io.log(f"wrote {summary.total_chunks} chunks from {summary.total_texts} texts -> {args.out}")
    io.write_manifest(
        args.out,
        "chunk",
        {
            "in": args.input,
            "out": args.out,
            "window": args.window,
            "overlap": args.overlap,
            "min_chunk": args.min_chunk,
            "summary": args.summary,
        },
        inputs=[args.input],
        outputs=[args.out, args.summary],
    )
    return 0


def cmd_analyze(args) -> int:
    docs = io.read_corpus(args.input, normalized=True)
    summaries, skipped = summarize_by_label(docs)
    features = {"human": [], "ai": []}
    skipped_set = set(skipped)
    ngram_counts = {label: {2: Counter(), 3: Counter()} for label in ("human", "ai")}
    ngram_totals = {label: {2: 0, 3: 0} for label in ("human", "ai")}
    for doc in docs:
        if doc.id in skipped_set:
            continue
        features[doc.label].append(extract_features(doc.text))
        tokens = tokenize_words(doc.text)
        for n in (2, 3):
            for i in range(len(tokens) - n + 1):
                ngram_counts[doc.label][n][tuple(tokens[i : i + n])] += 1
                ngram_totals[doc.label][n] += 1
    if not features["human"] or not features["ai"]:
        raise RecordError(0, "analyze needs at least one tokenizable document per label group")
    comparison = compare_groups(features["human"], features["ai"], alpha=args.alpha)

    def _top(label: str, n: int) -> dict:
        counts = ngram_counts[label][n]
        entries = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[: args.top_k]
        return {
            "n": n,
            "total": ngram_totals[label][n],
            "unique": len(counts),
            "top": [{"ngram": " ".join(gram), "count": count} for gram, count in entries],
        }

    report = {
        "groups": {label: summary.as_dict() for label, summary in summaries.items()},
        "comparison": io.comparison_dict(comparison),
        "ngrams": {
            label: {"bigrams": _top(label, 2), "trigrams": _top(label, 3)} for label in ("human", "ai")
        },
        "skipped_documents": skipped,
    }
    io.write_json(args.out, report)
    io.log(f"analysis report -> {args.out}")
    io.write_manifest(
        args.out,
        "analyze",
        {"in": args.input, "alpha": args.alpha, "top_k": args.top_k, "out": args.out},
        inputs=[args.input],
        outputs=[args.out],
    )
    return 0


def cmd_split(args) -> int:
    try:
        ratios = tuple(float(r) for r in args.ratios.split(","))
    except ValueError as exc:
        raise RecordError(0, f"--ratios must be three comma-separated numbers: {exc}") from exc
    if len(ratios) != 3:
        raise RecordError(0, "--ratios must contain exactly three values")
    config = SplitConfig(ratios=ratios, seed=args.seed, mode=args.mode)
    config.validate()
    chunks = io.read_chunks(args.input)
    result = split(chunks, config)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, part in (("train", result.train), ("validation", result.validation), ("test", result.test)):
        io.write_jsonl(out_dir / f"{name}.jsonl", (io.chunk_row(c) for c in part))
    sizes = result.sizes()
    io.log(f"split {len(chunks)} chunks -> {sizes[0]}/{sizes[1]}/{sizes[2]} in {out_dir}")
    io.write_manifest(
        out_dir,
        "split",
        {"in": args.input, "ratios": args.ratios, "seed": args.seed, "mode": args.mode, "out_dir": args.out_dir},
        inputs=[args.input],
        outputs=[str(out_dir / f"{n}.jsonl") for n in ("train", "validation", "test")],
        seed=args.seed,
        extra={"ratios": list(ratios), "mode": args.mode, "counts": io.split_counts(result)},
    )
    return 0


def cmd_train(args) -> int:
    train_chunks = io.read_chunks(args.train)
    val_chunks = io.read_chunks(args.val)
    X_tr, y_tr, _, skipped_tr = _features_matrix(train_chunks)
    X_va, y_va, _, skipped_va = _features_matrix(val_chunks)
    for chunk_id in skipped_tr + skipped_va:
        io.log(f"skipped {chunk_id}: no word tokens")
    config = TrainConfig(
        learning_rate=args.lr,
        max_epochs=args.epochs,
        l2=args.l2,
        patience=args.patience,
        seed=args.seed,
        batch_size=args.batch,
    )
    model, history = train_detector(X_tr, y_tr, X_va, y_va, FEATURE_NAMES, config)
    model.metadata["history"] = history
    model.metadata["train_rows"] = len(y_tr)
    model.metadata["val_rows"] = len(y_va)
    save_model(model, args.out)
    best = model.metadata["best_epoch"]
    io.log(f"trained on {len(y_tr)} rows, best epoch {best} -> {args.out}")
    io.write_manifest(
        args.out,
        "train",
        {
            "train": args.train,
            "val": args.val,
            "lr": args.lr,
            "epochs": args.epochs,
            "l2": args.l2,
            "patience": args.patience,
            "seed": args.seed,
            "batch": args.batch,
            "out": args.out,
        },
        inputs=[args.train, args.val],
        outputs=[args.out],
        seed=args.seed,
    )
    return 0


def cmd_evaluate(args) -> int:
    if (args.model is None) == (args.pred is None):
        raise RecordError(0, "provide exactly one of --model or --pred")
    test_chunks = io.read_chunks(args.test)
    gold_by_id = {c.chunk_id: c.label for c in test_chunks}

    skipped: list[str] = []
    if args.model is not None:
        model = load_model(args.model)
        X, labels, ids, skipped = _features_matrix(test_chunks)
        if not ids:
            raise RecordError(0, "no evaluable rows in the test split")
        probs = predict_proba_matrix(model, X, FEATURE_NAMES)
        predictions = [predict_label(model, p) for p in probs]
        gold = labels
        source = "model"
    else:
        preds = [io.parse_prediction(obj, line_no) for line_no, obj in io.read_jsonl(args.pred)]
        pred_ids = [p["id"] for p in preds]
        if len(set(pred_ids)) != len(pred_ids):
            raise RecordError(0, "predictions contain duplicate ids")
        missing = set(pred_ids) - set(gold_by_id)
        if missing:
            raise RecordError(0, f"predictions reference unknown ids, e.g. {sorted(missing)[:3]}")
        absent = set(gold_by_id) - set(pred_ids)
        if absent:
            raise RecordError(0, f"predictions missing for {len(absent)} test rows, e.g. {sorted(absent)[:3]}")
        predictions = [p["label_pred"] for p in preds]
        gold = [gold_by_id[p["id"]] for p in preds]
        source = "predictions"

    report = evaluate(predictions, gold)
    payload = io.eval_report_dict(report)
    payload["source"] = source
    payload["skipped"] = skipped
    io.write_json(args.out, payload)
    io.log(f"accuracy {report.accuracy:.4f} on {report.n} rows -> {args.out}")
    io.write_manifest(
        args.out,
        "evaluate",
        {"test": args.test, "model": args.model, "pred": args.pred, "out": args.out},
        inputs=[p for p in (args.test, args.model, args.pred) if p],
        outputs=[args.out],
    )
    return 0


def cmd_detect(args) -> int:
    if (args.text is None) == (args.input is None):
        raise RecordError(0, "provide exactly one of --text or --in")
    model = load_model(args.model)

    items: list[tuple[str, str]] = []
    if args.text is not None:
        if not args.text.strip():
            print("usage: urduforensics detect --model MODEL --text TEXT", file=sys.stderr)
            return 1
        items.append(("text", args.text))
    else:
        for line_no, obj in io.read_jsonl(args.input):
            text = obj.get("text")
            if "id" not in obj or not isinstance(text, str) or not text.strip():
                raise RecordError(line_no, "detect input rows need nonempty string 'id' and 'text'")
            items.append((str(obj["id"]), text))

    out_handle = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        for item_id, raw_text in items:
            cleaned = normalize_text(raw_text)
            try:
                fv = extract_features(cleaned) if cleaned else None
            except NoWords:
                fv = None
            if fv is None:
                io.log(f"skipped {item_id}: nothing to score after preprocessing")
                continue
            values = fv.as_dict()
            row = np.array(
                [[np.nan if values[name] is None else values[name] for name in FEATURE_NAMES]], dtype=float
            )
            prob = float(predict_proba_matrix(model, row, FEATURE_NAMES)[0])
            record = {"id": item_id, "prob_ai": prob, "label_pred": predict_label(model, prob)}
            out_handle.write(json.dumps(record, ensure_ascii=False) + "\n")
    finally:
        if args.out:
            out_handle.close()
    if args.out:
        io.write_manifest(
            args.out,
            "detect",
            {"model": args.model, "text": args.text, "in": args.input, "out": args.out},
            inputs=[p for p in (args.model, args.input) if p],
            outputs=[args.out],
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="urduforensics",
        description="Urdu human/AI text forensics pipeline",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="normalize a raw corpus")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("chunk", help="sliding-window chunking of long texts")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--window", type=int, default=450)
    p.add_argument("--overlap", type=int, default=100)
    p.add_argument("--min-chunk", type=int, default=45)
    p.add_argument("--summary", required=True)
    p.set_defaults(func=cmd_chunk)

    p = sub.add_parser("analyze", help="stylometric summaries, tests, and n-grams")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--top-k", type=int, default=50)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("split", help="deterministic train/validation/test split")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--ratios", default="0.8,0.1,0.1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("chunk_level", "grouped"), default="chunk_level")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("train", help="train the feature-based detector")
    p.add_argument("--train", required=True)
    p.add_argument("--val", required=True)
    p.add_argument("--lr", type=float, default=0.05)
    p.add_argument("--epochs", type=int, default=500)
    p.add_argument("--l2", type=float, default=1e-4)
    p.add_argument("--patience", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--batch", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="score a test split with a model or external predictions")
    p.add_argument("--test", required=True)
    p.add_argument("--model")
    p.add_argument("--pred")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("detect", help="classify new text with a trained model")
    p.add_argument("--model", required=True)
    p.add_argument("--text")
    p.add_argument("--in", dest="input")
    p.add_argument("--out")
    p.set_defaults(func=cmd_detect)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RecordError, UrduForensicsError, ValueError) as exc:
        io.log(f"error: {exc}")
        return 1
    except OSError as exc:
        io.log(f"i/o error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
