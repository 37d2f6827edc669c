"""Table documents, hypothesis pairs, and the canonical JSON-lines formats.

A table is a titled, categorized, ordered list of key/value rows; a pair binds
a hypothesis sentence (optionally labeled) to a table by id. Parsing is strict:
schema violations raise MalformedInput with a file:line locator instead of
silently dropping records. All types are immutable after construction and safe
to share across threads.

Canonical table file — UTF-8 JSON-lines, one object per table:
    {"id": str, "title": str, "category": str,
     "rows": [{"key": str, "values": [str, ...]}, ...]}
Canonical pairs file — JSON-lines:
    {"pair_id": str, "table_id": str, "hypothesis": str, "label": "E"|"C"|"N"}
with "label" optional (absent means UNKNOWN, the inference-time default).
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .errors import EmptyTable, MalformedInput

__all__ = [
    "Label",
    "RowEntry",
    "TableDocument",
    "HypothesisPair",
    "NormalizedKey",
    "normalize_key",
    "parse_table_file",
    "parse_pairs_file",
    "serialize_table",
    "serialize_tables",
    "write_tables",
]

# Lowercased + whitespace-collapsed + trailing sentence punctuation stripped.
NormalizedKey = str

_WS_RUN = re.compile(r"\s+")
# Any trailing mix of whitespace and sentence punctuation; stripping the whole
# run at once keeps normalize_key idempotent (e.g. "x. ," -> "x", not "x.").
_TRAILING_PUNCT = re.compile(r"[\s.,:;]+$")

_LABEL_BY_CODE = {"E": "ENTAILED", "C": "CONTRADICTION", "N": "NEUTRAL"}
_CODE_BY_LABEL = {v: k for k, v in _LABEL_BY_CODE.items()}


class Label(enum.Enum):
    ENTAILED = "ENTAILED"
    CONTRADICTION = "CONTRADICTION"
    NEUTRAL = "NEUTRAL"
    UNKNOWN = "UNKNOWN"

    @classmethod
    def from_code(cls, code: str) -> "Label":
        try:
            return cls(_LABEL_BY_CODE[code])
        except KeyError:
            raise ValueError(f"unknown label code {code!r}; expected E, C or N") from None

    def to_code(self) -> str | None:
        """Single-letter file code; None for UNKNOWN (serialized by omission)."""
        return _CODE_BY_LABEL.get(self.value)


@dataclass(frozen=True)
class RowEntry:
    """One key/value row. `values` is never empty; `index` is the 0-based
    position of the row within its table after parsing."""

    key: str
    values: tuple[str, ...]
    index: int

    def joined_values(self) -> str:
        return ", ".join(self.values)


@dataclass(frozen=True)
class TableDocument:
    id: str
    title: str
    category: str
    rows: tuple[RowEntry, ...]

    def normalized_keys(self) -> list[NormalizedKey]:
        return [normalize_key(r.key) for r in self.rows]


@dataclass(frozen=True)
class HypothesisPair:
    pair_id: str
    table_id: str
    hypothesis: str
    label: Label = field(default=Label.UNKNOWN)


def normalize_key(raw: str) -> NormalizedKey:
    """Lowercase, collapse whitespace runs, trim, strip trailing ".,:;".

    Internal periods survive ("No. of listings" → "no. of listings"): they are
    abbreviation-bearing, only the trailing run is sentence punctuation.
    Idempotent by construction. Empty output is legal; callers flag it.
    """
    text = _WS_RUN.sub(" ", raw.lower()).strip()
    return _TRAILING_PUNCT.sub("", text)


def _iter_jsonl(path: str | Path) -> Iterator[tuple[int, dict]]:
    """Yield (line_no, object) for every non-blank line; strict JSON."""
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedInput(f"invalid JSON: {exc.msg}", str(path), line_no) from None
            if not isinstance(obj, dict):
                raise MalformedInput("record is not a JSON object", str(path), line_no)
            yield line_no, obj


def _require_str(obj: dict, key: str, path: str, line_no: int, allow_empty: bool = False) -> str:
    value = obj.get(key)
    if not isinstance(value, str):
        raise MalformedInput(f"field {key!r} missing or not a string", path, line_no)
    if not allow_empty and not value.strip():
        raise MalformedInput(f"field {key!r} is empty", path, line_no)
    return value


def parse_table_file(path: str | Path) -> list[TableDocument]:
    """Parse a canonical table file, in file order.

    Duplicate keys inside one table (same normalized form) are merged by
    concatenating their value lists into the first occurrence; indices are
    re-assigned contiguously afterwards, so rows[i].index == i always holds.
    """
    tables: list[TableDocument] = []
    spath = str(path)
    for line_no, obj in _iter_jsonl(path):
        table_id = _require_str(obj, "id", spath, line_no)
        title = _require_str(obj, "title", spath, line_no)
        category = _require_str(obj, "category", spath, line_no, allow_empty=True)
        raw_rows = obj.get("rows")
        if not isinstance(raw_rows, list):
            raise MalformedInput("field 'rows' missing or not a list", spath, line_no)
        if not raw_rows:
            raise EmptyTable(f"table {table_id!r} has no rows", spath, line_no)

        merged: list[tuple[str, list[str]]] = []
        position_by_norm: dict[NormalizedKey, int] = {}
        for raw in raw_rows:
            if not isinstance(raw, dict):
                raise MalformedInput("row is not a JSON object", spath, line_no)
            key = _require_str(raw, "key", spath, line_no)
            if not key.strip():
                raise MalformedInput("row key is empty after trimming", spath, line_no)
            values = raw.get("values")
            if not isinstance(values, list) or not values:
                raise MalformedInput(f"row {key!r}: 'values' missing or empty", spath, line_no)
            if any(not isinstance(v, str) or v == "" for v in values):
                raise MalformedInput(f"row {key!r}: values contain an empty or non-string entry", spath, line_no)
            norm = normalize_key(key)
            if norm in position_by_norm:
                merged[position_by_norm[norm]][1].extend(values)
            else:
                position_by_norm[norm] = len(merged)
                merged.append((key, list(values)))

        rows = tuple(
            RowEntry(key=key, values=tuple(values), index=i)
            for i, (key, values) in enumerate(merged)
        )
        tables.append(TableDocument(id=table_id, title=title, category=category, rows=rows))
    return tables


def parse_pairs_file(path: str | Path) -> list[HypothesisPair]:
    """Parse a canonical pairs file, in file order.

    A dangling table_id is NOT an error here; the reference is resolved lazily
    when the pipeline runs (so pairs files can be parsed standalone).
    """
    pairs: list[HypothesisPair] = []
    spath = str(path)
    for line_no, obj in _iter_jsonl(path):
        pair_id = _require_str(obj, "pair_id", spath, line_no)
        table_id = _require_str(obj, "table_id", spath, line_no)
        hypothesis = _require_str(obj, "hypothesis", spath, line_no)
        label = Label.UNKNOWN
        if "label" in obj and obj["label"] is not None:
            raw_label = obj["label"]
            if not isinstance(raw_label, str):
                raise MalformedInput("field 'label' is not a string", spath, line_no)
            try:
                label = Label.from_code(raw_label)
            except ValueError as exc:
                raise MalformedInput(str(exc), spath, line_no) from None
        pairs.append(HypothesisPair(pair_id=pair_id, table_id=table_id, hypothesis=hypothesis, label=label))
    return pairs


def serialize_table(table: TableDocument) -> str:
    """One canonical JSON line (no trailing newline) for a table.

    The field order and separators here DEFINE the canonical form; parsing a
    file of such lines and re-serializing must reproduce it byte-identically.
    """
    obj = {
        "id": table.id,
        "title": table.title,
        "category": table.category,
        "rows": [{"key": r.key, "values": list(r.values)} for r in table.rows],
    }
    return json.dumps(obj, ensure_ascii=False)


def serialize_tables(tables: Iterable[TableDocument]) -> str:
    return "".join(serialize_table(t) + "\n" for t in tables)


def write_tables(tables: Iterable[TableDocument], path: str | Path) -> None:
    Path(path).write_text(serialize_tables(tables), encoding="utf-8")
