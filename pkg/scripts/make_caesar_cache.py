#!/usr/bin/env python3
"""Build the committed replay cache for definition-augmentation tests.

Enumerates every embedding request the disambiguator issues over the person
fixture (and the stock-exchange "Volume" row), then assigns deterministic
axis-aligned vectors: each key's anchor shares an axis with its intended
winning sense's candidate context, while decoy senses sit on other axes. The
resulting JSON replays through ContextualEmbeddingClient with no live
endpoint, so the augmentation path is testable offline and byte-stable.

Usage: make_caesar_cache.py (paths are fixed relative to the repo root)
"""

from __future__ import annotations

import json
from pathlib import Path

from tabprem import (
    EmbedRequest,
    RenderMode,
    clean_key,
    find_byte_span,
    load_inventory,
    lookup_senses,
    parse_table_file,
    render_paragraph,
    seed_registry,
)
from tabprem.knowledge import _candidate_request

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"
DIM = 8
MODEL = "fixture-axes-v1"

# Which sense must win per key: a distinctive substring of its definition.
WINNERS = {
    "died": "pass from physical life",
    "resting place": "cemetery or graveyard",
    "born": "british nuclear physicist",
    "spouse": "significant other",
    "volume": "capital markets",
}

# One axis per key for (anchor, winner); decoys get the next free axes.
KEY_AXIS = {"died": 0, "resting place": 1, "born": 2, "spouse": 3, "volume": 4}
DECOY_AXES = [5, 6, 7]


def axis_vector(axis: int) -> list[float]:
    vec = [0.0] * DIM
    vec[axis] = 1.0
    return vec


def main() -> None:
    inventory = load_inventory(DATA / "caesar_inventory.jsonl")
    registry = seed_registry()

    entries: dict[tuple[str, int, int], list[float]] = {}

    def put(req, vector: list[float]) -> None:
        entries.setdefault(req.key(), vector)

    def add_key(key: str, row_sentence: str, decoy_iter) -> None:
        surface = clean_key(key)
        lemma = surface.lower()
        axis = KEY_AXIS[lemma]
        span = find_byte_span(row_sentence, surface)
        if span is None:
            raise SystemExit(f"key {surface!r} not found in {row_sentence!r}")
        anchor_req = EmbedRequest(row_sentence, span[0], span[1])
        put(anchor_req, axis_vector(axis))
        for sense in lookup_senses(inventory, key):
            req = _candidate_request(surface, sense)
            if WINNERS[lemma] in sense.definition:
                put(req, axis_vector(axis))
            else:
                put(req, axis_vector(next(decoy_iter)))

    decoys = iter(DECOY_AXES * 10)

    caesar = parse_table_file(DATA / "caesar.jsonl")[0]
    paragraph = render_paragraph(caesar, registry, RenderMode.UNIVERSAL)
    for row in paragraph.row_sentences():
        add_key(row.key, row.sentence, decoys)

    nyse = parse_table_file(DATA / "nyse.jsonl")[0]
    nyse_paragraph = render_paragraph(nyse, registry, RenderMode.UNIVERSAL)
    for row in nyse_paragraph.row_sentences():
        if clean_key(row.key).lower() == "volume":
            add_key(row.key, row.sentence, decoys)

    payload = {
        "entries": [
            {
                "sentence": sentence,
                "target_start": start,
                "target_end": end,
                "vector": vector,
                "dim": DIM,
                "model": MODEL,
            }
            for (sentence, start, end), vector in entries.items()
        ]
    }
    out = DATA / "caesar_gateway_cache.json"
    out.write_text(json.dumps(payload, ensure_ascii=False, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {len(entries)} cached embeddings to {out}")


if __name__ == "__main__":
    main()
