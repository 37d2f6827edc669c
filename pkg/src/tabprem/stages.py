"""Composable pipeline stages in scikit-learn estimator style.

Each stage is a stateless transformer over PipelineItem work units (one unit
per table/hypothesis pair). `fit` is a no-op that returns self — the stages
hold only configuration, never learned state — but the estimator interface
(get_params/set_params, fit/transform) keeps them compatible with
sklearn.pipeline.Pipeline for anyone composing preprocessing graphs that way.
The CLI runner composes these same objects one item at a time via
`transform_item`, so both entry points execute identical stage code.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from sklearn.base import BaseEstimator, TransformerMixin

from .embeddings import ContextualEmbeddingClient, EmbeddingTable
from .errors import ConfigError, GatewayUnavailable
from .knowledge import SenseInventory, StaticMeanGateway, augment_premise
from .relevance import (
    DEFAULT_TOP_K,
    RowRanking,
    SelectionConfig,
    rank_rows,
    select_top_k,
)
from .render import (
    PremiseParagraph,
    RenderMode,
    TemplateRegistry,
    render_paragraph,
    seed_registry,
)
from .tables import HypothesisPair, TableDocument

__all__ = [
    "PipelineItem",
    "ParagraphRenderer",
    "DistractingRowRemover",
    "KnowledgeAugmenter",
]


@dataclass(frozen=True)
class PipelineItem:
    """One pair's state as it moves through the stages."""

    pair: HypothesisPair
    table: TableDocument
    paragraph: PremiseParagraph | None = None
    ranking: RowRanking | None = None
    fallback_used: bool = False


class ParagraphRenderer(BaseEstimator, TransformerMixin):
    """Render each item's table into its premise paragraph.

    mode "universal" emits one universal-template sentence per row; "bpr"
    prepends the category sentence and uses the typed registry.
    """

    def __init__(self, mode: str = "universal", registry: TemplateRegistry | None = None):
        self.mode = mode
        self.registry = registry

    def fit(self, X, y=None):
        return self

    def transform_item(self, item: PipelineItem) -> PipelineItem:
        try:
            render_mode = RenderMode(self.mode.upper())
        except ValueError:
            raise ConfigError(f"unknown render mode {self.mode!r}") from None
        registry = self.registry if self.registry is not None else seed_registry()
        paragraph = render_paragraph(item.table, registry, mode=render_mode)
        return replace(item, paragraph=paragraph)

    def transform(self, X):
        return [self.transform_item(item) for item in X]


class DistractingRowRemover(BaseEstimator, TransformerMixin):
    """Rank rows against the item's hypothesis and keep the top k."""

    def __init__(
        self,
        embeddings: EmbeddingTable | None = None,
        stopwords: set[str] | None = None,
        k: int = DEFAULT_TOP_K,
    ):
        self.embeddings = embeddings
        self.stopwords = stopwords
        self.k = k

    def fit(self, X, y=None):
        return self

    def transform_item(self, item: PipelineItem) -> PipelineItem:
        if self.embeddings is None:
            raise ConfigError("row pruning requires a static vector table")
        if item.paragraph is None:
            raise ConfigError("row pruning requires a rendered paragraph")
        ranking = rank_rows(
            item.pair.hypothesis,
            item.paragraph,
            self.embeddings,
            stopwords=self.stopwords,
            hypothesis_id=item.pair.pair_id,
        )
        pruned = select_top_k(ranking, item.paragraph, SelectionConfig(k=self.k))
        return replace(item, paragraph=pruned, ranking=ranking)

    def transform(self, X):
        return [self.transform_item(item) for item in X]


class KnowledgeAugmenter(BaseEstimator, TransformerMixin):
    """Append a disambiguated definition sentence per retained key.

    When the contextual endpoint is unreachable and `fallback_vectors` is
    configured, disambiguation degrades to static mean-of-word-vectors
    similarity and the item is marked `fallback_used`.
    """

    def __init__(
        self,
        inventory: SenseInventory | None = None,
        gateway: ContextualEmbeddingClient | None = None,
        tidy_punct: bool = False,
        fallback_vectors: EmbeddingTable | None = None,
    ):
        self.inventory = inventory
        self.gateway = gateway
        self.tidy_punct = tidy_punct
        self.fallback_vectors = fallback_vectors

    def fit(self, X, y=None):
        return self

    def transform_item(self, item: PipelineItem) -> PipelineItem:
        if self.inventory is None:
            raise ConfigError("definition augmentation requires a sense inventory")
        if self.gateway is None:
            raise ConfigError("definition augmentation requires an embedding gateway")
        if item.paragraph is None:
            raise ConfigError("definition augmentation requires a rendered paragraph")
        try:
            augmented = augment_premise(
                item.paragraph, self.inventory, self.gateway, tidy_punct=self.tidy_punct
            )
            return replace(item, paragraph=augmented)
        except GatewayUnavailable:
            if self.fallback_vectors is None:
                raise
        augmented = augment_premise(
            item.paragraph,
            self.inventory,
            StaticMeanGateway(self.fallback_vectors),
            tidy_punct=self.tidy_punct,
        )
        return replace(item, paragraph=augmented, fallback_used=True)

    def transform(self, X):
        return [self.transform_item(item) for item in X]
