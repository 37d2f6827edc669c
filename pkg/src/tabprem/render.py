"""Row-to-sentence rendering: universal template, typed templates with a
leading category sentence, and the flat "key k : value v ; …" linearization.

The universal template is fixed ("The {k} of {t} are {v}."). Typed rendering
consults a registry of patterns selected by (category, key, entity type), with
entity types inferred by a deterministic rule cascade — template authoring is a
one-time manual step, so inference stays auditable regex logic, never a model.

Rendering is pure and deterministic; the registry is immutable after load, so
tables may be rendered in parallel.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from .errors import MalformedInput, MissingCategory
from .tables import RowEntry, TableDocument

__all__ = [
    "EntityType",
    "StageTag",
    "RenderMode",
    "Template",
    "TemplateRegistry",
    "RenderedRow",
    "PremiseParagraph",
    "UNIVERSAL_PATTERN",
    "infer_entity_type",
    "resolve_template",
    "render_row",
    "render_category_sentence",
    "render_paragraph",
    "render_struc",
    "load_registry",
    "seed_registry",
]

UNIVERSAL_PATTERN = "The {k} of {t} are {v}."

WILDCARD = "*"

_PLACEHOLDER = re.compile(r"\{([^{}]*)\}")
_ALLOWED_PLACEHOLDERS = {"t", "k", "v"}

# Entity typing cascade, first match wins: BOOL → MONEY → DATE → CARDINAL →
# SEQUENCE → STRING.
_BOOL_VALUES = {"yes", "no", "true", "false"}
_CURRENCY_SYMBOLS = ("$", "£", "€", "¥")
_CURRENCY_CODES = (
    "USD US$ EUR GBP JPY CNY INR CAD AUD CHF RUB KRW BRL MXN SEK NOK DKK PLN ZAR HKD SGD NZD"
).split()
_CURRENCY_CODE_RE = re.compile(r"\b(?:" + "|".join(re.escape(c) for c in _CURRENCY_CODES) + r")\b")
_MONTH_RE = re.compile(
    r"\b(?:jan(?:uary)?|feb(?:ruary)?|mar(?:ch)?|apr(?:il)?|may|jun(?:e)?|jul(?:y)?"
    r"|aug(?:ust)?|sep(?:t(?:ember)?)?|oct(?:ober)?|nov(?:ember)?|dec(?:ember)?)\b",
    re.IGNORECASE,
)
_ISO_DATE_RE = re.compile(r"\b\d{4}-\d{2}-\d{2}\b")
_AGED_RE = re.compile(r"\b(?:aged?|age)\s+\d{1,3}\b", re.IGNORECASE)
_DIGIT_RE = re.compile(r"\d")
_CARDINAL_STRIP_RE = re.compile(r"[,.\s]")
_CARDINAL_RE = re.compile(r"^[+-]?\d+$")


class EntityType(enum.Enum):
    MONEY = "MONEY"
    DATE = "DATE"
    CARDINAL = "CARDINAL"
    BOOL = "BOOL"
    SEQUENCE = "SEQUENCE"
    STRING = "STRING"


class StageTag(enum.Enum):
    """Which rendering stage produced a sentence."""

    UNIVERSAL = "UNIVERSAL"
    BPR = "BPR"
    CATEGORY = "CATEGORY"
    STRUC = "STRUC"  # reserved tag for the linearized format (string output)
    KG_DEF = "KG_DEF"


class RenderMode(enum.Enum):
    UNIVERSAL = "UNIVERSAL"
    BPR = "BPR"


@dataclass(frozen=True)
class Template:
    """A sentence pattern plus its selector.

    Selector fields use "*" as a wildcard. `order` is the position within the
    registry file and breaks priority ties deterministically.

    Patterns may omit {v}: presence-style sentences for BOOL rows ("{t} has
    {k}.") deliberately drop the value, so only the placeholder NAMES are
    validated, not a mandatory {v}.
    """

    pattern: str
    category: str = WILDCARD
    key: str = WILDCARD
    etype: str = WILDCARD
    priority: int = 0
    order: int = 0

    def __post_init__(self) -> None:
        if not self.pattern.strip():
            raise ValueError("template pattern is empty")
        names = set(_PLACEHOLDER.findall(self.pattern))
        bad = names - _ALLOWED_PLACEHOLDERS
        if bad:
            raise ValueError(f"template pattern uses unknown placeholders: {sorted(bad)}")
        if self.etype != WILDCARD and self.etype.upper() not in EntityType.__members__:
            raise ValueError(f"unknown entity type in selector: {self.etype!r}")

    def matches(self, category: str, key: str, etype: EntityType) -> bool:
        if self.category != WILDCARD and self.category.casefold().strip() != category.casefold().strip():
            return False
        if self.key != WILDCARD and self.key.casefold().strip() != key.casefold().strip():
            return False
        if self.etype != WILDCARD and self.etype.upper() != etype.value:
            return False
        return True

    def tier(self) -> int:
        # exact-key > category+type > type-only > (universal handled separately)
        if self.key != WILDCARD:
            return 0
        if self.category != WILDCARD:
            return 1
        if self.etype != WILDCARD:
            return 2
        return 3


class TemplateRegistry:
    """Ordered template collection with a fixed universal fallback.

    Resolution is total: every (category, key, entity type) query resolves to
    exactly one template, falling back to UNIVERSAL_PATTERN.
    """

    def __init__(self, templates: Iterable[Template] = ()):
        # Duplicate (selector, priority) entries are legal; resolution breaks
        # such ties by file order, so the earlier entry simply wins.
        self.templates: tuple[Template, ...] = tuple(templates)
        self.universal = Template(pattern=UNIVERSAL_PATTERN)

    def __len__(self) -> int:
        return len(self.templates)


def load_registry(path: str | Path) -> TemplateRegistry:
    """Load a registry file: JSON-lines, '#'-prefixed comment lines allowed."""
    templates: list[Template] = []
    spath = str(path)
    with Path(path).open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            try:
                obj = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise MalformedInput(f"invalid JSON: {exc.msg}", spath, line_no) from None
            if not isinstance(obj, dict) or "pattern" not in obj:
                raise MalformedInput("template record needs a 'pattern' field", spath, line_no)
            try:
                templates.append(
                    Template(
                        pattern=obj["pattern"],
                        category=obj.get("category", WILDCARD),
                        key=obj.get("key", WILDCARD),
                        etype=obj.get("etype", WILDCARD),
                        priority=int(obj.get("priority", 0)),
                        order=len(templates),
                    )
                )
            except (ValueError, TypeError) as exc:
                raise MalformedInput(str(exc), spath, line_no) from None
    return TemplateRegistry(templates)


def seed_registry() -> TemplateRegistry:
    """The registry shipped with the package (typed patterns + specials)."""
    ref = resources.files("tabprem").joinpath("data/templates.jsonl")
    with resources.as_file(ref) as path:
        return load_registry(path)


@dataclass(frozen=True)
class RenderedRow:
    """One emitted sentence plus provenance.

    source_index is the table row index, or -1 for sentences not backed by a
    row (CATEGORY and KG_DEF). `key` keeps the source row's key (None for
    CATEGORY) so later stages can reference it without re-resolving the table.
    """

    sentence: str
    source_index: int
    stage_tag: StageTag
    key: str | None = None

    def __post_init__(self) -> None:
        if not self.sentence:
            raise ValueError("rendered sentence is empty")
        if self.source_index == -1 and self.stage_tag not in (StageTag.CATEGORY, StageTag.KG_DEF):
            raise ValueError("source_index -1 is reserved for CATEGORY/KG_DEF sentences")


@dataclass(frozen=True)
class PremiseParagraph:
    sentences: tuple[RenderedRow, ...]
    table_id: str

    @property
    def text(self) -> str:
        """The emitted premise string: sentences joined by single spaces."""
        return " ".join(r.sentence for r in self.sentences)

    def row_sentences(self) -> tuple[RenderedRow, ...]:
        """Sentences backed by table rows (excludes CATEGORY and KG_DEF)."""
        return tuple(r for r in self.sentences if r.source_index >= 0)


def infer_entity_type(row: RowEntry) -> EntityType:
    """Deterministic typing cascade over the comma-joined value."""
    value = row.joined_values()
    folded = value.casefold().strip()
    if folded in _BOOL_VALUES:
        return EntityType.BOOL
    if any(sym in value for sym in _CURRENCY_SYMBOLS) or _CURRENCY_CODE_RE.search(value):
        return EntityType.MONEY
    if (
        _ISO_DATE_RE.search(value)
        or _AGED_RE.search(value)
        or (_MONTH_RE.search(value) and _DIGIT_RE.search(value))
    ):
        return EntityType.DATE
    if _CARDINAL_RE.match(_CARDINAL_STRIP_RE.sub("", value)):
        return EntityType.CARDINAL
    if len([part for part in value.split(",") if part.strip()]) >= 3:
        return EntityType.SEQUENCE
    return EntityType.STRING


def resolve_template(
    registry: TemplateRegistry, category: str, key: str, etype: EntityType
) -> Template:
    """Most specific matching template; universal fallback makes this total.

    Precedence: exact key match > (category, type) > type-only > universal.
    Within a tier the highest priority wins; remaining ties go to the earliest
    registry-file entry.
    """
    candidates = [t for t in registry.templates if t.matches(category, key, etype)]
    if not candidates:
        return registry.universal
    return min(candidates, key=lambda t: (t.tier(), -t.priority, t.order))


def _finish_sentence(sentence: str) -> str:
    """Exactly one terminal period (collapses the doubled '.' produced when a
    substituted value already ends in one)."""
    sentence = sentence.rstrip()
    if not sentence.endswith("."):
        return sentence + "."
    while sentence.endswith(".."):
        sentence = sentence[:-1]
    return sentence


def _substitute(pattern: str, title: str, key: str, value: str) -> str:
    return pattern.replace("{t}", title).replace("{k}", key).replace("{v}", value)


def render_row(row: RowEntry, table: TableDocument, registry: TemplateRegistry) -> RenderedRow:
    etype = infer_entity_type(row)
    template = resolve_template(registry, table.category, row.key, etype)
    sentence = _finish_sentence(_substitute(template.pattern, table.title, row.key, row.joined_values()))
    tag = StageTag.UNIVERSAL if template is registry.universal else StageTag.BPR
    return RenderedRow(sentence=sentence, source_index=row.index, stage_tag=tag, key=row.key)


def _render_row_universal(row: RowEntry, table: TableDocument) -> RenderedRow:
    sentence = _finish_sentence(_substitute(UNIVERSAL_PATTERN, table.title, row.key, row.joined_values()))
    return RenderedRow(sentence=sentence, source_index=row.index, stage_tag=StageTag.UNIVERSAL, key=row.key)


def render_category_sentence(table: TableDocument) -> RenderedRow:
    """"{t} is a/an {category}." — the first sentence of a typed paragraph."""
    category = table.category.strip()
    if not category:
        raise MissingCategory(f"table {table.id!r} has no category")
    article = "an" if category[:1].lower() in "aeiou" else "a"
    return RenderedRow(
        sentence=f"{table.title} is {article} {category}.",
        source_index=-1,
        stage_tag=StageTag.CATEGORY,
        key=None,
    )


def render_paragraph(
    table: TableDocument, registry: TemplateRegistry, mode: RenderMode = RenderMode.UNIVERSAL
) -> PremiseParagraph:
    """UNIVERSAL: rows only, universal template (the plain-paragraph baseline).
    BPR: category sentence first, then typed rows in table order."""
    rows: list[RenderedRow] = []
    if mode is RenderMode.BPR:
        rows.append(render_category_sentence(table))
        rows.extend(render_row(r, table, registry) for r in table.rows)
    else:
        rows.extend(_render_row_universal(r, table) for r in table.rows)
    return PremiseParagraph(sentences=tuple(rows), table_id=table.id)


def render_struc(table: TableDocument, rows: Iterable[RowEntry] | None = None) -> str:
    """Flat linearization: "key <k> : value <v>" per row, joined by " ; ".

    `rows` restricts/reorders the linearization (used when pruning feeds this
    format); default is every table row in order.
    """
    selected = table.rows if rows is None else tuple(rows)
    return " ; ".join(f"key {r.key} : value {r.joined_values()}" for r in selected)
