#!/usr/bin/env python3
"""Convert a public InfoTabS release into canonical table/pairs files.

Expected release layout (the repository's ``data/`` directory):

    tables/json/T*.json            one JSON object per table:
                                   {"title": "...", "<key>": ["v1", ...], ...}
    tables/table_categories.tsv    optional; columns: table_id, category
    maindata/infotabs_train.tsv    tab-separated with a header row holding at
    maindata/infotabs_dev.tsv      least table_id, hypothesis, label columns
    maindata/infotabs_test_alpha1.tsv
    maindata/infotabs_test_alpha2.tsv
    maindata/infotabs_test_alpha3.tsv

Output: ``tables_<split>.jsonl`` and ``pairs_<split>.jsonl`` per split
(train, dev, a1, a2, a3) under --out. Each split's table file holds exactly
the tables its pairs reference, in first-reference order. Rows with no usable
values and tables with no usable rows are dropped (counted in the summary
printed at the end). Tables without a category annotation get an empty
category: the canonical format allows it, and typed rendering will then
refuse those tables explicitly rather than fabricate a class.

Usage:
    python3 scripts/convert_infotabs.py --release <dir> --out <dir>
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from tabprem import HypothesisPair, Label, RowEntry, TableDocument, write_tables

SPLIT_FILES = {
    "train": "infotabs_train.tsv",
    "dev": "infotabs_dev.tsv",
    "a1": "infotabs_test_alpha1.tsv",
    "a2": "infotabs_test_alpha2.tsv",
    "a3": "infotabs_test_alpha3.tsv",
}

_LABEL_WORDS = {
    "E": "E",
    "C": "C",
    "N": "N",
    "ENTAIL": "E",
    "ENTAILED": "E",
    "ENTAILMENT": "E",
    "CONTRADICT": "C",
    "CONTRADICTION": "C",
    "NEUTRAL": "N",
}


def _find_release_root(release: Path) -> Path:
    """Accept either the release's data/ directory or its parent."""
    for candidate in (release, release / "data"):
        if (candidate / "maindata").is_dir():
            return candidate
    raise SystemExit(f"error: no maindata/ directory under {release}")


def _load_categories(root: Path) -> dict[str, str]:
    path = root / "tables" / "table_categories.tsv"
    if not path.is_file():
        return {}
    categories: dict[str, str] = {}
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter="\t")
        for row in reader:
            if len(row) >= 2 and row[0].strip() and row[0].strip().lower() != "table_id":
                categories[row[0].strip()] = row[1].strip()
    return categories


def _clean_values(raw) -> tuple[str, ...]:
    items = raw if isinstance(raw, list) else [raw]
    return tuple(str(v).strip() for v in items if str(v).strip())


def _load_table(root: Path, table_id: str, category: str, dropped_rows: list[str]) -> TableDocument | None:
    path = root / "tables" / "json" / f"{table_id}.json"
    with path.open("r", encoding="utf-8") as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict):
        raise SystemExit(f"error: {path} does not hold a JSON object")
    title_values = _clean_values(obj.get("title", ""))
    title = title_values[0] if title_values else table_id
    rows: list[RowEntry] = []
    for key, raw_values in obj.items():
        if key == "title" or not key.strip():
            continue
        values = _clean_values(raw_values)
        if not values:
            dropped_rows.append(f"{table_id}/{key}")
            continue
        rows.append(RowEntry(key=key.strip(), values=values, index=len(rows)))
    if not rows:
        return None
    return TableDocument(id=table_id, title=title, category=category, rows=tuple(rows))


def _parse_label(raw: str, path: Path, line_no: int) -> Label:
    word = raw.strip().upper()
    if word not in _LABEL_WORDS:
        raise SystemExit(f"error: {path}:{line_no}: unrecognized label {raw!r}")
    return Label.from_code(_LABEL_WORDS[word])


def _convert_split(root: Path, split: str, out_dir: Path, categories: dict[str, str]) -> dict:
    tsv_path = root / "maindata" / SPLIT_FILES[split]
    pairs: list[HypothesisPair] = []
    table_ids: list[str] = []
    seen_tables: set[str] = set()
    with tsv_path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh, delimiter="\t")
        for line_no, row in enumerate(reader, start=2):
            table_id = (row.get("table_id") or "").strip()
            hypothesis = (row.get("hypothesis") or "").strip()
            if not table_id or not hypothesis:
                raise SystemExit(f"error: {tsv_path}:{line_no}: missing table_id or hypothesis")
            label = _parse_label(row.get("label") or "", tsv_path, line_no)
            raw_index = (row.get("index") or "").strip()
            pair_id = f"{split}-{raw_index}" if raw_index else f"{split}-{line_no - 1}"
            pairs.append(
                HypothesisPair(
                    pair_id=pair_id, table_id=table_id, hypothesis=hypothesis, label=label
                )
            )
            if table_id not in seen_tables:
                seen_tables.add(table_id)
                table_ids.append(table_id)

    dropped_rows: list[str] = []
    tables: list[TableDocument] = []
    dropped_tables: list[str] = []
    for table_id in table_ids:
        table = _load_table(root, table_id, categories.get(table_id, ""), dropped_rows)
        if table is None:
            dropped_tables.append(table_id)
        else:
            tables.append(table)
    kept = {t.id for t in tables}
    pairs = [p for p in pairs if p.table_id in kept]

    write_tables(tables, out_dir / f"tables_{split}.jsonl")
    with (out_dir / f"pairs_{split}.jsonl").open("w", encoding="utf-8") as fh:
        for pair in pairs:
            record = {
                "pair_id": pair.pair_id,
                "table_id": pair.table_id,
                "hypothesis": pair.hypothesis,
                "label": pair.label.to_code(),
            }
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
    return {
        "split": split,
        "tables": len(tables),
        "pairs": len(pairs),
        "dropped_tables": len(dropped_tables),
        "dropped_rows": len(dropped_rows),
    }


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--release", required=True, help="InfoTabS release data/ directory")
    parser.add_argument("--out", required=True, help="output directory for canonical files")
    parser.add_argument(
        "--splits",
        default=",".join(SPLIT_FILES),
        help="comma-separated subset of train,dev,a1,a2,a3",
    )
    args = parser.parse_args(argv)

    root = _find_release_root(Path(args.release))
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    categories = _load_categories(root)

    splits = [s.strip() for s in args.splits.split(",") if s.strip()]
    unknown = [s for s in splits if s not in SPLIT_FILES]
    if unknown:
        raise SystemExit(f"error: unknown split(s) {', '.join(unknown)}")

    for split in splits:
        summary = _convert_split(root, split, out_dir, categories)
        print(
            "{split}: {tables} tables, {pairs} pairs "
            "({dropped_tables} tables and {dropped_rows} rows dropped)".format(**summary)
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
