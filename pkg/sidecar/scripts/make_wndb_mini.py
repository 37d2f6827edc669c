"""Regenerate tests/fixtures/wndb_mini/ from a full WordNet dict/ directory.

The mini fixture is a faithful excerpt of the real database files: the
license header plus the index lines for a handful of lemmas and the data
lines for exactly the synsets those lemmas reference. Tests that parse the
fixture therefore exercise the same byte-level format as a full install.

Usage:
    python3 scripts/make_wndb_mini.py [--dict ../vendor/wordnet-db/dict]

Run from the sidecar/ directory. Fetch the source data first (see
scripts/fetch_wordnet.sh).
"""

from __future__ import annotations

import argparse
from pathlib import Path

# Chosen for what the tests need: volume (six senses, morphy "volumes"),
# object (multi-segment definition), book (examples + morphy "books"),
# location (plain), stock_exchange (multi-word lemma). "resting_place" is
# deliberately NOT in WordNet's index — the fixture preserves that absence
# simply by not being able to include it.
LEMMAS = ["volume", "object", "book", "location", "stock_exchange"]


def extract(dict_dir: Path, out_dir: Path) -> None:
    index_src = (dict_dir / "index.noun").read_text(encoding="utf-8").splitlines(keepends=True)
    header = [line for line in index_src if line[:1].isspace()]
    picked_index: list[str] = []
    offsets: set[str] = set()
    for line in index_src:
        if line[:1].isspace():
            continue
        fields = line.split()
        if fields and fields[0] in LEMMAS:
            picked_index.append(line)
            synset_count = int(fields[2])
            offsets.update(fields[-synset_count:])
    missing = set(LEMMAS) - {line.split()[0] for line in picked_index}
    if missing:
        raise SystemExit(f"lemmas not found in index.noun: {sorted(missing)}")

    data_src = (dict_dir / "data.noun").read_text(encoding="utf-8").splitlines(keepends=True)
    picked_data = [
        line
        for line in data_src
        if line[:1].isspace() or line.split(" ", 1)[0] in offsets
    ]

    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "index.noun").write_text("".join(header + picked_index), encoding="utf-8")
    (out_dir / "data.noun").write_text("".join(picked_data), encoding="utf-8")
    print(f"wrote {len(picked_index)} index lines and "
          f"{len(picked_data) - len(header)} data lines to {out_dir}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dict", default="../vendor/wordnet-db/dict",
                        help="full WordNet dict/ directory to excerpt")
    parser.add_argument("--out", default="tests/fixtures/wndb_mini",
                        help="output fixture directory")
    args = parser.parse_args()
    extract(Path(args.dict), Path(args.out))


if __name__ == "__main__":
    main()
