"""Hypothesis-conditioned row relevance: score each rendered row sentence
against the hypothesis with static word vectors, rank rows, and keep the
top-k most relevant ones.

A row's score is the mean, over hypothesis content words that have a vector,
of the maximum cosine similarity against the row-sentence tokens that have a
vector. Tokens without vectors are skipped on both sides; when nothing is
comparable the row scores 0.0 and its ranking entry is flagged as having no
coverage. The leading category sentence never competes — selection
re-attaches it in front of the retained rows, which appear in descending
score order (deliberately not table order).

Scoring is pure over read-only inputs, so distinct hypotheses can be ranked
in parallel.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .embeddings import EmbeddingTable, cosine
from .errors import EmptyHypothesis, ZeroVector
from .render import PremiseParagraph, RenderedRow

__all__ = [
    "DEFAULT_TOP_K",
    "RankEntry",
    "RowRanking",
    "SelectionConfig",
    "tokenize",
    "content_words",
    "load_stopwords",
    "default_stopwords",
    "row_score",
    "rank_rows",
    "select_top_k",
]

DEFAULT_TOP_K = 4

# Everything stripped from token edges. Periods and hyphens INSIDE a token
# survive ("u.s.", "twenty-one", "3,000"), as does one trailing period when
# the token is an internal-period abbreviation like "U.S.".
_EDGE_PUNCT = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~“”‘’«»…—–"
_WS_SPLIT = re.compile(r"\s+")


def tokenize(text: str) -> list[str]:
    """Lowercase whitespace tokenizer with edge-punctuation stripping."""
    tokens: list[str] = []
    for raw in _WS_SPLIT.split(text.lower()):
        if not raw:
            continue
        stripped_trailing_period = False
        start, end = 0, len(raw)
        while start < end and raw[start] in _EDGE_PUNCT:
            start += 1
        while end > start and raw[end - 1] in _EDGE_PUNCT:
            if raw[end - 1] == ".":
                stripped_trailing_period = True
            end -= 1
        core = raw[start:end]
        if not core:
            continue
        if stripped_trailing_period and "." in core:
            core += "."
        tokens.append(core)
    return tokens


def content_words(tokens: list[str], stopwords: set[str]) -> list[str]:
    """Order-preserving subsequence with stop words removed (binary 0/1
    weighting: a word either counts fully or not at all)."""
    return [t for t in tokens if t not in stopwords]


def load_stopwords(path: str | Path) -> set[str]:
    """One stopword per line; blank lines and '#' comments ignored."""
    words: set[str] = set()
    with Path(path).open("r", encoding="utf-8") as fh:
        for line in fh:
            word = line.strip()
            if word and not word.startswith("#"):
                words.add(word.lower())
    return words


def default_stopwords() -> set[str]:
    """The frozen English stop list shipped with the package."""
    ref = resources.files("tabprem").joinpath("data/stopwords.txt")
    return {
        word.strip().lower()
        for word in ref.read_text(encoding="utf-8").splitlines()
        if word.strip() and not word.startswith("#")
    }


@dataclass(frozen=True)
class RankEntry:
    """One row's relevance verdict. `rank` starts at 1 for the best row;
    `no_coverage` marks a score that defaulted to 0.0 because nothing was
    comparable."""

    row_index: int
    score: float
    rank: int
    no_coverage: bool = False


@dataclass(frozen=True)
class RowRanking:
    """All rows of one paragraph ranked against one hypothesis: entries are
    sorted by score descending (ties by ascending row index), ranks
    consecutive from 1."""

    entries: tuple[RankEntry, ...]
    hypothesis_id: str = ""

    def top(self, k: int) -> tuple[RankEntry, ...]:
        return tuple(entry for entry in self.entries if entry.rank <= k)


@dataclass(frozen=True)
class SelectionConfig:
    """Pruning hyperparameters; k is how many rows survive."""

    k: int = DEFAULT_TOP_K

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")


def _covered_vectors(tokens: list[str], embeddings: EmbeddingTable) -> list:
    vectors = []
    for token in tokens:
        vec = embeddings.lookup(token)
        if vec is not None:
            vectors.append(vec)
    return vectors


def _row_score_with_coverage(
    hyp_content: list[str],
    row_tokens: list[str],
    embeddings: EmbeddingTable,
) -> tuple[float, bool]:
    if not hyp_content:
        raise EmptyHypothesis("no hypothesis content words to score")
    hyp_vectors = _covered_vectors(hyp_content, embeddings)
    row_vectors = _covered_vectors(row_tokens, embeddings)
    per_word_max: list[float] = []
    for hv in hyp_vectors:
        best: float | None = None
        for rv in row_vectors:
            try:
                sim = cosine(hv, rv)
            except ZeroVector:
                continue
            if best is None or sim > best:
                best = sim
        if best is not None:
            per_word_max.append(best)
    if not per_word_max:
        return 0.0, True
    return sum(per_word_max) / len(per_word_max), False


def row_score(
    hyp_content: list[str],
    row_sentence_tokens: list[str],
    embeddings: EmbeddingTable,
) -> float:
    """Mean-of-max cosine between covered hypothesis words and row tokens.

    Hypothesis words without a vector are skipped from the mean; if nothing
    is comparable at all the score is 0.0 (rank_rows flags that entry as
    no-coverage). Raises EmptyHypothesis when `hyp_content` is empty.
    """
    score, _ = _row_score_with_coverage(hyp_content, row_sentence_tokens, embeddings)
    return score


def rank_rows(
    hypothesis: str,
    paragraph: PremiseParagraph,
    embeddings: EmbeddingTable,
    stopwords: set[str] | None = None,
    hypothesis_id: str = "",
) -> RowRanking:
    """Score every row sentence of `paragraph` against `hypothesis`.

    Category and definition sentences (negative source index) are exempt from
    ranking. Raises EmptyHypothesis when stop-word removal leaves nothing.
    """
    stops = default_stopwords() if stopwords is None else stopwords
    hyp_content = content_words(tokenize(hypothesis), stops)
    scored: list[tuple[int, float, bool]] = []
    for row in paragraph.row_sentences():
        score, no_coverage = _row_score_with_coverage(
            hyp_content, tokenize(row.sentence), embeddings
        )
        scored.append((row.source_index, score, no_coverage))
    scored.sort(key=lambda item: (-item[1], item[0]))
    return RowRanking(
        entries=tuple(
            RankEntry(row_index=index, score=score, rank=position, no_coverage=no_coverage)
            for position, (index, score, no_coverage) in enumerate(scored, start=1)
        ),
        hypothesis_id=hypothesis_id,
    )


def select_top_k(
    ranking: RowRanking,
    paragraph: PremiseParagraph,
    cfg: SelectionConfig | None = None,
) -> PremiseParagraph:
    """Keep the k best-ranked rows, in descending score order.

    Sentences with a negative source index (the category sentence) are exempt
    from pruning and stay in front, in their original order. When k meets or
    exceeds the row count, every row survives — still reordered by score.
    """
    config = SelectionConfig() if cfg is None else cfg
    by_index: dict[int, RenderedRow] = {
        row.source_index: row for row in paragraph.row_sentences()
    }
    sentences: list[RenderedRow] = [
        row for row in paragraph.sentences if row.source_index < 0
    ]
    for entry in ranking.top(config.k):
        row = by_index.get(entry.row_index)
        if row is not None:
            sentences.append(row)
    return PremiseParagraph(sentences=tuple(sentences), table_id=paragraph.table_id)
