"""Reader for WordNet database files in the WNdb text format.

Reads the `index.<pos>` / `data.<pos>` files of a WordNet 3.x `dict/`
directory (for example the one shipped by the npm package `wordnet-db`).
Only what the sense-inventory extractor needs is implemented: lemma lookup
with light morphological normalization, and synset glosses split into a
definition and example sentences.

Format notes (line-oriented, space-separated):

    index.noun:  lemma pos synset_cnt p_cnt ptr... sense_cnt tagsense_cnt offset...
    data.noun:   offset lex_filenum ss_type w_cnt(word lex_id)... p_cnt ptr... | gloss

The gloss is `; `-separated: leading unquoted segments form the definition,
double-quoted segments are example sentences. License header lines in each
file start with whitespace and are skipped. Multi-word lemmas use
underscores in the files; lookups accept spaces.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

__all__ = ["Synset", "WordNetDb", "split_gloss", "PARTS_OF_SPEECH"]

log = logging.getLogger(__name__)

PARTS_OF_SPEECH = {"n": "noun", "v": "verb", "a": "adj", "r": "adv"}

# Morphy's rules of detachment: candidate (suffix, replacement) pairs tried
# against the surface form; a candidate counts only if the index has it.
_DETACHMENT_RULES = {
    "n": [
        ("s", ""),
        ("ses", "s"),
        ("ves", "f"),
        ("xes", "x"),
        ("zes", "z"),
        ("ches", "ch"),
        ("shes", "sh"),
        ("men", "man"),
        ("ies", "y"),
    ],
    "v": [
        ("s", ""),
        ("ies", "y"),
        ("es", "e"),
        ("es", ""),
        ("ed", "e"),
        ("ed", ""),
        ("ing", "e"),
        ("ing", ""),
    ],
    "a": [("er", ""), ("est", ""), ("er", "e"), ("est", "e")],
    "r": [],
}


@dataclass(frozen=True)
class Synset:
    offset: int
    pos: str
    words: tuple[str, ...]
    definition: str
    examples: tuple[str, ...] = field(default=())


def split_gloss(gloss: str) -> tuple[str, tuple[str, ...]]:
    """Leading unquoted `; `-segments form the definition; quoted ones are
    examples. Quoted and unquoted segments may interleave; order of examples
    is preserved."""
    definition_parts: list[str] = []
    examples: list[str] = []
    for segment in gloss.split("; "):
        segment = segment.strip()
        if not segment:
            continue
        if segment.startswith('"'):
            examples.append(segment.strip('"').strip())
        elif not examples:
            definition_parts.append(segment)
        else:
            # An unquoted trailer after examples (rare; usually a usage
            # note) is folded into the last example's context — drop it.
            continue
    return "; ".join(definition_parts), tuple(examples)


def _parse_data_line(line: str, pos: str) -> Synset:
    fields_part, _, gloss = line.partition(" | ")
    fields = fields_part.split()
    offset = int(fields[0])
    word_count = int(fields[3], 16)  # two-digit hexadecimal
    words = tuple(fields[4 + 2 * i].replace("_", " ") for i in range(word_count))
    definition, examples = split_gloss(gloss.strip())
    return Synset(offset=offset, pos=pos, words=words, definition=definition, examples=examples)


class WordNetDb:
    """Lemma → synsets over one WNdb `dict/` directory. Files are parsed
    lazily, one part of speech at a time, then kept in memory."""

    def __init__(self, dict_dir: str | Path):
        self.dict_dir = Path(dict_dir)
        if not self.dict_dir.is_dir():
            raise FileNotFoundError(f"no such WordNet dict directory: {self.dict_dir}")
        self._index: dict[str, dict[str, list[int]]] = {}
        self._data: dict[str, dict[int, Synset]] = {}

    # -- file loading --------------------------------------------------------

    def _load_pos(self, pos: str) -> None:
        if pos in self._index:
            return
        if pos not in PARTS_OF_SPEECH:
            raise ValueError(f"unknown part of speech {pos!r}")
        suffix = PARTS_OF_SPEECH[pos]
        index: dict[str, list[int]] = {}
        index_path = self.dict_dir / f"index.{suffix}"
        with index_path.open("r", encoding="utf-8") as fh:
            for line in fh:
                if line[:1].isspace():
                    continue  # license header
                fields = line.split()
                if len(fields) < 6:
                    continue
                lemma = fields[0]
                synset_count = int(fields[2])
                index[lemma] = [int(off) for off in fields[-synset_count:]]
        data: dict[int, Synset] = {}
        data_path = self.dict_dir / f"data.{suffix}"
        with data_path.open("r", encoding="utf-8") as fh:
            for line in fh:
                if line[:1].isspace() or " | " not in line:
                    continue
                try:
                    synset = _parse_data_line(line.rstrip("\n"), pos)
                except (ValueError, IndexError) as exc:
                    log.warning("skipping malformed %s line: %s", data_path.name, exc)
                    continue
                data[synset.offset] = synset
        self._index[pos] = index
        self._data[pos] = data

    # -- lookup ----------------------------------------------------------------

    def morphy(self, form: str, pos: str = "n") -> list[str]:
        """Base-form candidates present in the index: the exact form first,
        then rule-of-detachment variants (standard suffix rules; the WNdb
        bundle ships no exception files, so irregulars resolve only when
        listed directly). Multi-word forms are looked up whole."""
        self._load_pos(pos)
        index = self._index[pos]
        surface = form.strip().lower().replace(" ", "_")
        candidates: list[str] = []
        if surface in index:
            candidates.append(surface)
        for suffix, replacement in _DETACHMENT_RULES[pos]:
            if surface.endswith(suffix):
                candidate = surface[: len(surface) - len(suffix)] + replacement
                if candidate and candidate in index and candidate not in candidates:
                    candidates.append(candidate)
        return candidates

    def synsets(self, lemma: str, pos: str = "n") -> list[Synset]:
        """Synsets for the lemma (after morphy), in WordNet sense order."""
        self._load_pos(pos)
        results: list[Synset] = []
        seen: set[int] = set()
        for candidate in self.morphy(lemma, pos):
            for offset in self._index[pos][candidate]:
                synset = self._data[pos].get(offset)
                if synset is not None and offset not in seen:
                    seen.add(offset)
                    results.append(synset)
        return results
