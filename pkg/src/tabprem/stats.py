"""Corpus statistics and prediction-file comparison.

`compute_stats` reports, per split, the table count, mean keys per table
(1 decimal), the distinct normalized-key count, and the overlap of that key
set with the training split — the numbers that expose how far a zero-shot
split drifts from training vocabulary. `compare_predictions` cross-tabulates
two prediction files against gold labels into the four agreement cells,
as percentages of all pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError, MalformedInput, PairMismatch
from .tables import Label, parse_table_file

__all__ = [
    "SplitStats",
    "StatsReport",
    "PredictionDiff",
    "compute_stats",
    "compare_predictions",
    "load_predictions",
]


@dataclass(frozen=True)
class SplitStats:
    table_count: int
    mean_keys_per_table: float  # rounded to 1 decimal
    distinct_keys: int
    overlap_with_train: int

    def to_dict(self) -> dict:
        return {
            "table_count": self.table_count,
            "mean_keys_per_table": self.mean_keys_per_table,
            "distinct_keys": self.distinct_keys,
            "overlap_with_train": self.overlap_with_train,
        }


@dataclass(frozen=True)
class StatsReport:
    train_split: str
    splits: dict[str, SplitStats]

    def to_dict(self) -> dict:
        return {
            "train_split": self.train_split,
            "splits": {name: stats.to_dict() for name, stats in self.splits.items()},
        }


def compute_stats(splits: dict[str, str | Path], train_split: str) -> StatsReport:
    """Per-split table stats plus normalized-key overlap with the train split.

    By construction overlap(train, train) equals the train split's own
    distinct-key count. Missing files are fatal.
    """
    if train_split not in splits:
        raise ConfigError(f"train split {train_split!r} not among the given splits")
    key_sets: dict[str, set[str]] = {}
    loaded: dict[str, tuple[int, float]] = {}
    for name, path in splits.items():
        tables = parse_table_file(path)
        keys: set[str] = set()
        total_rows = 0
        for table in tables:
            keys.update(table.normalized_keys())
            total_rows += len(table.rows)
        mean = round(total_rows / len(tables), 1) if tables else 0.0
        key_sets[name] = keys
        loaded[name] = (len(tables), mean)
    train_keys = key_sets[train_split]
    report_splits = {
        name: SplitStats(
            table_count=loaded[name][0],
            mean_keys_per_table=loaded[name][1],
            distinct_keys=len(key_sets[name]),
            overlap_with_train=len(key_sets[name] & train_keys),
        )
        for name in splits
    }
    return StatsReport(train_split=train_split, splits=report_splits)


@dataclass(frozen=True)
class PredictionDiff:
    """The 2×2 agreement table between two prediction files, as percentages
    of all gold pairs (the four cells sum to 100 up to float error)."""

    a_correct_b_wrong: float
    a_wrong_b_correct: float
    both_correct: float
    both_wrong: float
    total_pairs: int

    def to_dict(self) -> dict:
        return {
            "a_correct_b_wrong": self.a_correct_b_wrong,
            "a_wrong_b_correct": self.a_wrong_b_correct,
            "both_correct": self.both_correct,
            "both_wrong": self.both_wrong,
            "total_pairs": self.total_pairs,
        }


def load_predictions(path: str | Path) -> dict[str, Label]:
    """JSON-lines of {"pair_id", "label"} with single-letter label codes."""
    spath = str(path)
    labels: dict[str, Label] = {}
    with Path(path).open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedInput(f"invalid JSON: {exc.msg}", spath, line_no) from None
            if not isinstance(record, dict) or "pair_id" not in record or "label" not in record:
                raise MalformedInput("prediction needs pair_id and label", spath, line_no)
            pair_id = str(record["pair_id"])
            if pair_id in labels:
                raise MalformedInput(f"duplicate pair_id {pair_id!r}", spath, line_no)
            try:
                labels[pair_id] = Label.from_code(str(record["label"]).strip().upper())
            except ValueError as exc:
                raise MalformedInput(str(exc), spath, line_no) from None
    return labels


def _require_same_pairs(gold: dict[str, Label], preds: dict[str, Label], which: str) -> None:
    missing = [pid for pid in gold if pid not in preds]
    extra = [pid for pid in preds if pid not in gold]
    if missing or extra:
        raise PairMismatch(missing, extra, which)


def compare_predictions(
    gold_path: str | Path,
    preds_a_path: str | Path,
    preds_b_path: str | Path,
) -> PredictionDiff:
    """Cross-tabulate two prediction files against gold labels.

    All three files must cover exactly the same pair ids; PairMismatch lists
    any discrepancy.
    """
    gold = load_predictions(gold_path)
    preds_a = load_predictions(preds_a_path)
    preds_b = load_predictions(preds_b_path)
    if not gold:
        raise MalformedInput("gold file has no pairs", str(gold_path))
    _require_same_pairs(gold, preds_a, "preds_a")
    _require_same_pairs(gold, preds_b, "preds_b")
    cells = {"ab": 0, "a": 0, "b": 0, "neither": 0}
    for pair_id, answer in gold.items():
        a_ok = preds_a[pair_id] is answer
        b_ok = preds_b[pair_id] is answer
        if a_ok and b_ok:
            cells["ab"] += 1
        elif a_ok:
            cells["a"] += 1
        elif b_ok:
            cells["b"] += 1
        else:
            cells["neither"] += 1
    total = len(gold)
    return PredictionDiff(
        a_correct_b_wrong=100.0 * cells["a"] / total,
        a_wrong_b_correct=100.0 * cells["b"] / total,
        both_correct=100.0 * cells["ab"] / total,
        both_wrong=100.0 * cells["neither"] / total,
        total_pairs=total,
    )
