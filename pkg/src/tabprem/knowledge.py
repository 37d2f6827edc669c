"""Definition augmentation: look up table keys in a sense inventory, pick the
sense whose context best matches the premise, and append definition sentences.

The inventory is a JSON-lines file of senses ({"lemma", "definition",
"examples", "source"}), possibly several per lemma; per-lemma file order is
preserved and breaks score ties (after the WordNet-over-Wikipedia rule).
Definitions are lowercased at load time, so rendered sentences are an exact
concatenation over the stored entry. Lookup cascades: whole normalized key
first; for a multi-word key with no whole-key senses, the top sense of each
covered word is merged into one pseudo-sense (definitions joined by "; ");
otherwise the key has no senses and is silently skipped.

Disambiguation embeds the key's span inside its premise sentence (the anchor)
and, per sense, the key's span inside the first example mentioning it — or
the whole definition, mean-pooled, when no example does — then keeps the
sense with the highest cosine. Appended sentences take the form

    KEY: <key> is defined as <definition> .

where the detached terminal period is the default and tidy punctuation mode
attaches it instead.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Protocol

import numpy as np

from .embeddings import EmbeddingTable, EmbedRequest, cosine
from .errors import MalformedInput, ZeroVector
from .relevance import tokenize
from .render import PremiseParagraph, RenderedRow, StageTag
from .tables import normalize_key

__all__ = [
    "DEFINITION_PATTERN",
    "SenseSource",
    "SenseEntry",
    "SenseInventory",
    "KeyAugmentation",
    "EmbeddingGateway",
    "StaticMeanGateway",
    "clean_key",
    "find_byte_span",
    "load_inventory",
    "lookup_senses",
    "disambiguate_sense",
    "definition_sentence",
    "augment_premise",
    "augmentations_for",
]

# Shape of every appended definition sentence (default punctuation mode).
DEFINITION_PATTERN = re.compile(r"^KEY: .+ is defined as .+ \.$")

_PAREN_CHUNK = re.compile(r"\([^()]*\)")
_WS_RUN = re.compile(r"\s+")


class EmbeddingGateway(Protocol):
    """Anything that turns an EmbedRequest into a vector (HTTP client, replay
    cache, or the static-vector fallback below)."""

    def embed(self, req: EmbedRequest) -> np.ndarray: ...


class SenseSource(Enum):
    WORDNET = "WORDNET"
    WIKIPEDIA = "WIKIPEDIA"

    @classmethod
    def from_str(cls, raw: str) -> "SenseSource":
        try:
            return cls(raw.strip().upper())
        except ValueError:
            raise MalformedInput(f"unknown sense source {raw!r}") from None


# Tie-break order between sources when cosines are exactly equal.
_SOURCE_RANK = {SenseSource.WORDNET: 0, SenseSource.WIKIPEDIA: 1}


@dataclass(frozen=True)
class SenseEntry:
    """One candidate sense of a lemma. `lemma` must be in normalized-key form
    and `definition` lowercase — load_inventory enforces both."""

    lemma: str
    definition: str
    examples: tuple[str, ...] = ()
    source: SenseSource = SenseSource.WORDNET

    def __post_init__(self):
        if not self.lemma.strip():
            raise MalformedInput("sense entry with empty lemma")
        if normalize_key(self.lemma) != self.lemma:
            raise MalformedInput(f"sense lemma {self.lemma!r} is not normalized")
        if not self.definition.strip():
            raise MalformedInput(f"sense entry for {self.lemma!r} has no definition")


def clean_key(key: str) -> str:
    """Display form of a key: parenthesized chunks dropped, whitespace
    collapsed ("Spouse(s)" → "Spouse"). Original casing is kept."""
    cleaned = _PAREN_CHUNK.sub("", key)
    return _WS_RUN.sub(" ", cleaned).strip()


def find_byte_span(sentence: str, phrase: str) -> tuple[int, int] | None:
    """UTF-8 byte offsets of the first case-insensitive occurrence of
    `phrase` in `sentence`, or None. Offsets land on character boundaries
    by construction."""
    if not phrase:
        return None
    match = re.search(re.escape(phrase), sentence, re.IGNORECASE)
    if match is None:
        return None
    start = len(sentence[: match.start()].encode("utf-8"))
    end = start + len(sentence[match.start() : match.end()].encode("utf-8"))
    return start, end


class SenseInventory:
    """Lemma → senses map; per-lemma order preserved from the inventory file."""

    def __init__(self, entries: list[SenseEntry]):
        self.entries = tuple(entries)
        self._by_lemma: dict[str, list[SenseEntry]] = {}
        for entry in self.entries:
            self._by_lemma.setdefault(entry.lemma, []).append(entry)

    def __len__(self) -> int:
        return len(self.entries)

    def senses(self, lemma: str) -> list[SenseEntry]:
        return list(self._by_lemma.get(lemma, []))


def load_inventory(path: str | Path) -> SenseInventory:
    spath = str(path)
    entries: list[SenseEntry] = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedInput(f"invalid JSON: {exc.msg}", spath, line_no) from None
            if not isinstance(record, dict):
                raise MalformedInput("sense record is not an object", spath, line_no)
            try:
                entries.append(
                    SenseEntry(
                        lemma=normalize_key(str(record["lemma"])),
                        definition=str(record["definition"]).strip().lower(),
                        examples=tuple(str(x) for x in record.get("examples", [])),
                        source=SenseSource.from_str(str(record["source"])),
                    )
                )
            except KeyError as exc:
                raise MalformedInput(f"sense record missing {exc}", spath, line_no) from None
    return SenseInventory(entries)


def lookup_senses(inv: SenseInventory, key: str) -> list[SenseEntry]:
    """Cascading sense lookup for a table key.

    Whole normalized key first. A multi-word key with no whole-key entry
    falls back to its individual words: each covered word contributes its top
    sense, merged into one pseudo-sense whose definition joins them with
    "; ". An empty list means "no augmentation for this key".
    """
    normalized = normalize_key(clean_key(key))
    whole = inv.senses(normalized)
    if whole:
        return whole
    words = normalized.split(" ")
    if len(words) < 2:
        return []
    tops = [inv.senses(word)[0] for word in words if inv.senses(word)]
    if not tops:
        return []
    merged = SenseEntry(
        lemma=normalized,
        definition="; ".join(entry.definition for entry in tops),
        examples=(),
        source=tops[0].source,
    )
    return [merged]


def _candidate_request(key_surface: str, sense: SenseEntry) -> EmbedRequest:
    """Context for a sense: the key's span in the first example mentioning
    it, else the whole definition mean-pooled."""
    for example in sense.examples:
        span = find_byte_span(example, key_surface)
        if span is not None:
            return EmbedRequest(sentence=example, target_start=span[0], target_end=span[1])
    return EmbedRequest(sentence=sense.definition)


def disambiguate_sense(
    key: str,
    premise_row_sentence: str,
    senses: list[SenseEntry],
    gateway: EmbeddingGateway,
) -> tuple[SenseEntry, float]:
    """Pick the sense whose candidate context is most cosine-similar to the
    key's occurrence in its premise sentence.

    The anchor is the key span inside `premise_row_sentence`; when the
    templated sentence dropped the key, the whole sentence is mean-pooled
    instead. Exact ties prefer WordNet over Wikipedia, then earlier inventory
    position. A sense whose similarity is undefined (zero vector) loses to
    any defined one.
    """
    if not senses:
        raise ValueError("disambiguate_sense needs at least one sense")
    surface = clean_key(key)
    span = find_byte_span(premise_row_sentence, surface)
    if span is None:
        anchor_req = EmbedRequest(sentence=premise_row_sentence)
    else:
        anchor_req = EmbedRequest(
            sentence=premise_row_sentence, target_start=span[0], target_end=span[1]
        )
    anchor = gateway.embed(anchor_req)

    scored: list[tuple[float, int, int, SenseEntry]] = []
    for position, sense in enumerate(senses):
        try:
            sim = cosine(anchor, gateway.embed(_candidate_request(surface, sense)))
        except ZeroVector:
            sim = float("-inf")
        scored.append((-sim, _SOURCE_RANK[sense.source], position, sense))
    neg_sim, _, _, chosen = min(scored)
    return chosen, -neg_sim


def definition_sentence(display_key: str, sense: SenseEntry, tidy_punct: bool = False) -> str:
    """Render one appended definition: the stored definition with its own
    terminal period dropped, then the (detached by default) sentence period."""
    definition = sense.definition.strip()
    while definition.endswith("."):
        definition = definition[:-1].rstrip()
    terminal = "." if tidy_punct else " ."
    return f"KEY: {display_key} is defined as {definition}{terminal}"


@dataclass(frozen=True)
class KeyAugmentation:
    """One key's chosen definition plus the sentence it renders to."""

    key: str
    chosen: SenseEntry
    similarity: float
    rendered: RenderedRow


def augmentations_for(
    paragraph: PremiseParagraph,
    inv: SenseInventory,
    gateway: EmbeddingGateway,
    tidy_punct: bool = False,
) -> list[KeyAugmentation]:
    """One KeyAugmentation per retained row whose key has senses, in the
    rows' paragraph order. Keys missing from the inventory are skipped."""
    augmentations: list[KeyAugmentation] = []
    for row in paragraph.row_sentences():
        if row.key is None:
            continue
        senses = lookup_senses(inv, row.key)
        if not senses:
            continue
        chosen, similarity = disambiguate_sense(row.key, row.sentence, senses, gateway)
        display = clean_key(row.key)
        rendered = RenderedRow(
            sentence=definition_sentence(display, chosen, tidy_punct=tidy_punct),
            source_index=-1,
            stage_tag=StageTag.KG_DEF,
            key=display,
        )
        augmentations.append(
            KeyAugmentation(key=display, chosen=chosen, similarity=similarity, rendered=rendered)
        )
    return augmentations


def augment_premise(
    paragraph: PremiseParagraph,
    inv: SenseInventory,
    gateway: EmbeddingGateway,
    tidy_punct: bool = False,
) -> PremiseParagraph:
    """Append definition sentences after all existing sentences; never edits
    or reorders what is already there."""
    additions = tuple(
        aug.rendered for aug in augmentations_for(paragraph, inv, gateway, tidy_punct=tidy_punct)
    )
    return PremiseParagraph(
        sentences=tuple(paragraph.sentences) + additions,
        table_id=paragraph.table_id,
    )


class StaticMeanGateway:
    """Degraded, offline disambiguation backend: a text's vector is the mean
    of its tokens' static word vectors (the span's substring when a target is
    given). Used when the contextual endpoint is down and a static table is
    configured."""

    def __init__(self, table: EmbeddingTable):
        self.table = table

    def embed(self, req: EmbedRequest) -> np.ndarray:
        req.validate()
        if req.target_start == -1 and req.target_end == -1:
            text = req.sentence
        else:
            data = req.sentence.encode("utf-8")
            text = data[req.target_start : req.target_end].decode("utf-8")
        vectors = [
            vec for token in tokenize(text) if (vec := self.table.lookup(token)) is not None
        ]
        if not vectors:
            raise ZeroVector(f"no static coverage for {text!r}")
        return np.mean(np.stack(vectors), axis=0)
