"""Sense-inventory extraction: table keys → candidate definitions.

Reads a list of keys (one per line), looks each up in a local WordNet
database, and falls back to a local file of Wikipedia article leads for
multi-word keys WordNet does not know (WordNet covers those only when
they are established collocations). The output is a JSON lines file of
sense records compatible with the premise-builder's inventory loader:

    {"lemma": ..., "definition": ..., "examples": [...], "source": "WORDNET"}

Definitions are copied verbatim from the source (the consumer lowercases
on load). Keys that resolve nowhere are written to a misses report, which
is always produced — an empty report means full coverage, a missing one
means the run did not finish.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .wndb import Synset, WordNetDb

__all__ = [
    "ExtractionSpec",
    "ExtractionResult",
    "WikipediaLeads",
    "read_keys",
    "build_inventory",
    "write_inventory",
    "write_misses",
    "main",
]

log = logging.getLogger(__name__)

_WS_RUN = re.compile(r"\s+")

DEFAULT_SENSE_CAP = 8


def _normalize(text: str) -> str:
    return _WS_RUN.sub(" ", text).strip().lower()


@dataclass(frozen=True)
class ExtractionSpec:
    """Inputs and knobs for one extraction run."""

    keys_path: Path
    out_path: Path
    wordnet_dir: Path
    misses_path: Path
    wikipedia_path: Path | None = None
    sense_cap: int = DEFAULT_SENSE_CAP

    def __post_init__(self):
        if self.sense_cap < 1:
            raise ValueError("sense_cap must be at least 1")


@dataclass(frozen=True)
class SenseRecord:
    lemma: str
    definition: str
    examples: tuple[str, ...]
    source: str  # "WORDNET" | "WIKIPEDIA"

    def to_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "definition": self.definition,
            "examples": list(self.examples),
            "source": self.source,
        }


@dataclass(frozen=True)
class Miss:
    key: str
    reason: str


@dataclass
class ExtractionResult:
    records: list[SenseRecord] = field(default_factory=list)
    misses: list[Miss] = field(default_factory=list)
    keys_resolved: int = 0


class WikipediaLeads:
    """Title → first sentence, loaded from a JSON-lines dump excerpt with
    records of the form {"title": ..., "first_sentence": ...}. Titles match
    case-insensitively with whitespace collapsed."""

    def __init__(self, path: str | Path):
        self._leads: dict[str, tuple[str, str]] = {}
        with Path(path).open("r", encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                    title = str(record["title"])
                    lead = str(record["first_sentence"])
                except (json.JSONDecodeError, KeyError, TypeError) as exc:
                    raise ValueError(f"{path}:{line_no}: bad lead record ({exc})") from None
                self._leads[_normalize(title)] = (title, lead)

    def __len__(self) -> int:
        return len(self._leads)

    def lookup(self, key: str) -> tuple[str, str] | None:
        return self._leads.get(_normalize(key))


def read_keys(path: str | Path) -> list[str]:
    """Keys, one per line; blank lines skipped, duplicates dropped
    (first occurrence wins, order preserved)."""
    keys: list[str] = []
    seen: set[str] = set()
    with Path(path).open("r", encoding="utf-8") as fh:
        for line in fh:
            key = line.strip()
            if not key:
                continue
            marker = _normalize(key)
            if marker in seen:
                continue
            seen.add(marker)
            keys.append(key)
    return keys


def _wordnet_records(key: str, synsets: list[Synset], cap: int) -> list[SenseRecord]:
    records: list[SenseRecord] = []
    for synset in synsets[:cap]:
        if not synset.definition:
            continue
        records.append(
            SenseRecord(
                lemma=_normalize(key),
                definition=synset.definition,
                examples=synset.examples,
                source="WORDNET",
            )
        )
    return records


def build_inventory(spec: ExtractionSpec) -> ExtractionResult:
    """Resolve every key; a failure on one key is logged and recorded as a
    miss, never fatal to the run."""
    wndb = WordNetDb(spec.wordnet_dir)
    leads = WikipediaLeads(spec.wikipedia_path) if spec.wikipedia_path else None
    result = ExtractionResult()
    for key in read_keys(spec.keys_path):
        try:
            records = _wordnet_records(key, wndb.synsets(key, pos="n"), spec.sense_cap)
            if not records and leads is not None and " " in _normalize(key):
                # The encyclopedia fallback is for multi-word keys only:
                # those are usually missing from WordNet, while a missing
                # single word is better surfaced as a miss to review.
                hit = leads.lookup(key)
                if hit is not None:
                    records = [
                        SenseRecord(
                            lemma=_normalize(key),
                            definition=hit[1],
                            examples=(),
                            source="WIKIPEDIA",
                        )
                    ]
        except Exception as exc:  # per-key isolation
            log.exception("key %r failed", key)
            result.misses.append(Miss(key=key, reason=f"error: {exc}"))
            continue
        if records:
            result.records.extend(records)
            result.keys_resolved += 1
        else:
            result.misses.append(Miss(key=key, reason="not found"))
    return result


def write_inventory(records: list[SenseRecord], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record.to_dict(), ensure_ascii=False) + "\n")


def write_misses(misses: list[Miss], path: str | Path) -> None:
    """The report is written even when empty: its presence certifies that
    the run completed and every key was attempted."""
    with Path(path).open("w", encoding="utf-8") as fh:
        for miss in misses:
            fh.write(json.dumps({"key": miss.key, "reason": miss.reason}, ensure_ascii=False) + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="build-inventory",
        description="Extract a sense inventory for table keys from local WordNet "
        "data, with a Wikipedia-leads fallback.",
    )
    parser.add_argument("--keys", required=True, help="file of keys, one per line")
    parser.add_argument("--out", required=True, help="output inventory (JSON lines)")
    parser.add_argument("--wordnet-dir", required=True, help="WordNet dict/ directory")
    parser.add_argument("--wikipedia", help="JSON lines of {title, first_sentence} leads")
    parser.add_argument("--misses", help="misses report path (default: <out>.misses.jsonl)")
    parser.add_argument(
        "--cap",
        type=int,
        default=DEFAULT_SENSE_CAP,
        help=f"max senses kept per key (default {DEFAULT_SENSE_CAP})",
    )
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")

    misses_path = Path(args.misses) if args.misses else Path(args.out + ".misses.jsonl")
    try:
        spec = ExtractionSpec(
            keys_path=Path(args.keys),
            out_path=Path(args.out),
            wordnet_dir=Path(args.wordnet_dir),
            misses_path=misses_path,
            wikipedia_path=Path(args.wikipedia) if args.wikipedia else None,
            sense_cap=args.cap,
        )
        result = build_inventory(spec)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    write_inventory(result.records, spec.out_path)
    write_misses(result.misses, spec.misses_path)
    print(
        f"wrote {len(result.records)} senses for {result.keys_resolved} keys "
        f"to {spec.out_path} ({len(result.misses)} misses -> {spec.misses_path})"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
