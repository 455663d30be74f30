"""Command-line front end: finetune and predict."""

from __future__ import annotations

import argparse
import sys

from .config import DEFAULT_MODEL, FinetuneConfig
from .predictor import predict
from .trainer import finetune


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uhat-adapter", description="transformer detector adapter")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("finetune", help="fine-tune an encoder on chunk files")
    p.add_argument("--train", required=True)
    p.add_argument("--val", required=True)
    p.add_argument("--model-id", default=DEFAULT_MODEL, help="hub id or local checkpoint path")
    p.add_argument("--max-length", type=int, default=512)
    p.add_argument("--lr", type=float, default=2e-5)
    p.add_argument("--epochs", type=int, default=8)
    p.add_argument("--patience", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--batch-size", type=int, default=16)
    p.add_argument("--out", required=True, help="output directory for checkpoint and history")

    q = sub.add_parser("predict", help="score a chunk file with a saved checkpoint")
    q.add_argument("--checkpoint", required=True)
    q.add_argument("--in", dest="input", required=True)
    q.add_argument("--out", required=True)
    q.add_argument("--batch-size", type=int, default=32)
    q.add_argument("--max-length", type=int, default=512)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "finetune":
            config = FinetuneConfig(
                model_id=args.model_id,
                max_length=args.max_length,
                learning_rate=args.lr,
                epochs=args.epochs,
                patience=args.patience,
                seed=args.seed,
                batch_size=args.batch_size,
            )
            history = finetune(args.train, args.val, config, args.out)
            print(f"best epoch {history['best_epoch']} -> {history['checkpoint']}")
        else:
            count = predict(args.checkpoint, args.input, args.out, args.batch_size, args.max_length)
            print(f"wrote {count} predictions -> {args.out}")
        return 0
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o or model-resolution error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
