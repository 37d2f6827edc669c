"""Command-line entry point.

Subcommands:
    run          build premises from a table file and a pairs file
    stats        per-split corpus statistics and train-overlap counts
    diff-preds   2×2 agreement table between two prediction files
    manifest     write the two-stage training schedule file
    trim-vectors shrink a vector file to a corpus vocabulary

Exit codes: 0 success, 1 fatal input error, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ConfigError, MalformedInput, PairMismatch, TabPremError
from .embeddings import trim_vector_file
from .pipeline import (
    DEFAULT_TOKEN_BUDGET,
    OutputFormat,
    PipelineConfig,
    Stage,
    emit_training_manifest,
    run_pipeline,
)
from .relevance import DEFAULT_TOP_K, tokenize
from .stats import compare_predictions, compute_stats

__all__ = ["main", "build_parser"]


def _parse_stages(raw: str) -> frozenset[Stage]:
    tokens = [token for token in raw.split(",") if token.strip()]
    return frozenset(Stage.from_token(token) for token in tokens)


def _split_pair(raw: str) -> tuple[str, str]:
    name, sep, path = raw.partition("=")
    if not sep or not name.strip() or not path.strip():
        raise ConfigError(f"--split takes name=path, got {raw!r}")
    return name.strip(), path.strip()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tabprem",
        description="Turn key-value tables into premise paragraphs for tabular NLI.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="build premises for a pairs file")
    run.add_argument("--tables", required=True, help="canonical table file (JSON-lines)")
    run.add_argument("--pairs", required=True, help="canonical pairs file (JSON-lines)")
    run.add_argument("--out", required=True, help="output premise records (JSON-lines)")
    run.add_argument(
        "--stages",
        default="",
        help="comma-separated subset of bpr,drr,kg (empty = universal baseline)",
    )
    run.add_argument("--k", type=int, default=DEFAULT_TOP_K, help="rows kept by pruning")
    run.add_argument(
        "--budget", type=int, default=DEFAULT_TOKEN_BUDGET, help="token budget for the summary"
    )
    run.add_argument("--vectors", help="static word-vector file (required by drr)")
    run.add_argument("--stopwords", help="stop-word list (default: shipped list)")
    run.add_argument("--registry", help="template registry (default: shipped registry)")
    run.add_argument("--inventory", help="sense inventory file (required by kg)")
    run.add_argument("--gateway", help="contextual-embedding endpoint URL")
    run.add_argument("--gateway-cache", help="JSON cache replayed/extended for gateway calls")
    run.add_argument(
        "--format",
        choices=["para", "struc"],
        default="para",
        help="premise output shape (struc excludes bpr/kg)",
    )
    run.add_argument(
        "--tidy-punct",
        action="store_true",
        help="attach the terminal period of definition sentences",
    )
    run.add_argument("--workers", type=int, default=1, help="thread-pool size")

    stats = sub.add_parser("stats", help="corpus statistics per split")
    stats.add_argument("--train", required=True, help="table file of the training split")
    stats.add_argument(
        "--split",
        action="append",
        default=[],
        metavar="NAME=PATH",
        help="additional split (repeatable)",
    )

    diff = sub.add_parser("diff-preds", help="2×2 agreement table for two prediction files")
    diff.add_argument("--gold", required=True, help="gold labels (JSON-lines pair_id/label)")
    diff.add_argument("--a", required=True, help="prediction file A")
    diff.add_argument("--b", required=True, help="prediction file B")

    manifest = sub.add_parser("manifest", help="write the training-schedule manifest")
    manifest.add_argument("--out", required=True, help="manifest output path")
    manifest.add_argument("--premises", help="premise file the fine-tuning stage consumes")
    manifest.add_argument("--stages", default="", help="stage subset the premises were built with")
    manifest.add_argument("--k", type=int, default=DEFAULT_TOP_K)
    manifest.add_argument("--budget", type=int, default=DEFAULT_TOKEN_BUDGET)
    manifest.add_argument(
        "--no-pretraining",
        action="store_true",
        help="emit a single-stage manifest (no broad-coverage pretraining)",
    )

    trim = sub.add_parser("trim-vectors", help="restrict a vector file to a corpus vocabulary")
    trim.add_argument("--vectors", required=True, help="source vector file")
    trim.add_argument("--corpus", required=True, help="UTF-8 text whose tokens form the vocabulary")
    trim.add_argument("--out", required=True, help="trimmed vector file")

    return parser


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = PipelineConfig(
        stages=_parse_stages(args.stages),
        k=args.k,
        token_budget=args.budget,
        vectors=args.vectors,
        stopwords=args.stopwords,
        registry=args.registry,
        inventory=args.inventory,
        gateway_url=args.gateway,
        gateway_cache=args.gateway_cache,
        output_format=OutputFormat(args.format.upper()),
        tidy_punct=args.tidy_punct,
        workers=args.workers,
    )
    cfg.validate()
    summary = run_pipeline(cfg, args.tables, args.pairs, args.out)
    for name in ("pairs_processed", "pairs_over_budget", "gateway_fallbacks", "errors"):
        print(f"{name}: {summary[name]}")
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    splits: dict[str, str] = {"train": args.train}
    for raw in args.split:
        name, path = _split_pair(raw)
        if name in splits:
            raise ConfigError(f"duplicate split name {name!r}")
        splits[name] = path
    report = compute_stats(splits, train_split="train")
    print(json.dumps(report.to_dict(), indent=2, ensure_ascii=False))
    return 0


def _cmd_diff_preds(args: argparse.Namespace) -> int:
    diff = compare_predictions(args.gold, args.a, args.b)
    print(json.dumps(diff.to_dict(), indent=2, ensure_ascii=False))
    return 0


def _cmd_manifest(args: argparse.Namespace) -> int:
    cfg = PipelineConfig(
        stages=_parse_stages(args.stages),
        k=args.k,
        token_budget=args.budget,
    )
    emit_training_manifest(
        cfg,
        args.out,
        premises_path=args.premises,
        pretraining=not args.no_pretraining,
    )
    print(f"manifest written: {args.out}")
    return 0


def _cmd_trim_vectors(args: argparse.Namespace) -> int:
    with open(args.corpus, "r", encoding="utf-8") as fh:
        vocabulary = set(tokenize(fh.read()))
    kept, seen = trim_vector_file(args.vectors, vocabulary, args.out)
    print(f"kept {kept} of {seen} vectors")
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "stats": _cmd_stats,
    "diff-preds": _cmd_diff_preds,
    "manifest": _cmd_manifest,
    "trim-vectors": _cmd_trim_vectors,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (MalformedInput, PairMismatch, FileNotFoundError, TabPremError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
