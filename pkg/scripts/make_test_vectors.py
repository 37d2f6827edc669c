#!/usr/bin/env python3
"""Trim a full static-vector file down to the test-fixture vocabulary.

The committed fixture `tests/data/vectors_100d_trimmed.vec` is produced by
running this against real 100-dimensional English vectors (see
export_vectors_json.py for obtaining them from the PDDL-licensed npm bundle
`wink-embeddings-sg-100d`, which repackages the Stanford GloVe 6B set). The
vocabulary is everything the fixtures can surface: both renderings of each
fixture table, the hypotheses, and the sense-inventory text.

Usage: make_test_vectors.py FULL.vec
"""

from __future__ import annotations

import sys
from pathlib import Path

from tabprem import (
    RenderMode,
    parse_pairs_file,
    parse_table_file,
    render_paragraph,
    render_struc,
    seed_registry,
    tokenize,
)
from tabprem.embeddings import trim_vector_file
from tabprem.knowledge import load_inventory

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"


def fixture_vocabulary() -> set[str]:
    registry = seed_registry()
    chunks: list[str] = []
    for name in ("nyse", "fluorine", "caesar"):
        for table in parse_table_file(DATA / f"{name}.jsonl"):
            for mode in (RenderMode.UNIVERSAL, RenderMode.BPR):
                chunks.append(render_paragraph(table, registry, mode).text)
            chunks.append(render_struc(table))
        for pair in parse_pairs_file(DATA / f"{name}_pairs.jsonl"):
            chunks.append(pair.hypothesis)
    for sense in load_inventory(DATA / "caesar_inventory.jsonl").entries:
        chunks.append(sense.definition)
        chunks.extend(sense.examples)
    return set(tokenize("\n".join(chunks)))


def main() -> int:
    if len(sys.argv) != 2:
        print(__doc__.strip().splitlines()[-1], file=sys.stderr)
        return 2
    vocabulary = fixture_vocabulary()
    out = DATA / "vectors_100d_trimmed.vec"
    kept, seen = trim_vector_file(sys.argv[1], vocabulary, out)
    print(f"vocabulary of {len(vocabulary)} tokens; kept {kept} of {seen} vectors -> {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
