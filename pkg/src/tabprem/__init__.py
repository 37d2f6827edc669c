"""tabprem: turn key-value tables plus hypothesis sentences into
knowledge-enriched, length-bounded premise paragraphs for tabular NLI.

Four composable input modifications, each independently switchable:

* typed sentence templates with a leading category sentence (``bpr``),
* hypothesis-conditioned pruning to the k most relevant rows (``drr``),
* appended, contextually disambiguated key definitions (``kg``),
* a two-stage training manifest for implicit knowledge transfer.

The ``tabprem`` CLI drives the same stage objects exposed here.
"""

from .errors import (
    ConfigError,
    DanglingTableRef,
    DimensionMismatch,
    EmptyHypothesis,
    EmptyTable,
    GatewayUnavailable,
    MalformedInput,
    MissingCategory,
    PairMismatch,
    ProtocolError,
    TabPremError,
    ZeroVector,
)
from .tables import (
    HypothesisPair,
    Label,
    RowEntry,
    TableDocument,
    normalize_key,
    parse_pairs_file,
    parse_table_file,
    serialize_table,
    serialize_tables,
    write_tables,
)
from .render import (
    EntityType,
    PremiseParagraph,
    RenderMode,
    RenderedRow,
    StageTag,
    Template,
    TemplateRegistry,
    UNIVERSAL_PATTERN,
    infer_entity_type,
    load_registry,
    render_category_sentence,
    render_paragraph,
    render_row,
    render_struc,
    resolve_template,
    seed_registry,
)
from .embeddings import (
    ContextualEmbeddingClient,
    EmbedRequest,
    EmbeddingTable,
    cosine,
    load_vectors,
    trim_vector_file,
)
from .relevance import (
    DEFAULT_TOP_K,
    RankEntry,
    RowRanking,
    SelectionConfig,
    content_words,
    default_stopwords,
    load_stopwords,
    rank_rows,
    row_score,
    select_top_k,
    tokenize,
)
from .knowledge import (
    DEFINITION_PATTERN,
    EmbeddingGateway,
    KeyAugmentation,
    SenseEntry,
    SenseInventory,
    SenseSource,
    StaticMeanGateway,
    augment_premise,
    augmentations_for,
    clean_key,
    definition_sentence,
    disambiguate_sense,
    find_byte_span,
    load_inventory,
    lookup_senses,
)
from .stages import (
    DistractingRowRemover,
    KnowledgeAugmenter,
    ParagraphRenderer,
    PipelineItem,
)
from .pipeline import (
    DEFAULT_TOKEN_BUDGET,
    OutputFormat,
    PipelineConfig,
    PremiseRecord,
    Stage,
    emit_training_manifest,
    estimate_tokens,
    run_pipeline,
)
from .stats import (
    PredictionDiff,
    SplitStats,
    StatsReport,
    compare_predictions,
    compute_stats,
    load_predictions,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "TabPremError",
    "MalformedInput",
    "EmptyTable",
    "MissingCategory",
    "EmptyHypothesis",
    "DanglingTableRef",
    "DimensionMismatch",
    "ZeroVector",
    "GatewayUnavailable",
    "ProtocolError",
    "PairMismatch",
    "ConfigError",
    # table model
    "Label",
    "RowEntry",
    "TableDocument",
    "HypothesisPair",
    "normalize_key",
    "parse_table_file",
    "parse_pairs_file",
    "serialize_table",
    "serialize_tables",
    "write_tables",
    # rendering
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
    # embeddings
    "EmbeddingTable",
    "EmbedRequest",
    "ContextualEmbeddingClient",
    "cosine",
    "load_vectors",
    "trim_vector_file",
    # relevance
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
    # knowledge
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
    # stages
    "PipelineItem",
    "ParagraphRenderer",
    "DistractingRowRemover",
    "KnowledgeAugmenter",
    # pipeline
    "Stage",
    "OutputFormat",
    "PipelineConfig",
    "PremiseRecord",
    "estimate_tokens",
    "run_pipeline",
    "emit_training_manifest",
    "DEFAULT_TOKEN_BUDGET",
    # stats
    "SplitStats",
    "StatsReport",
    "PredictionDiff",
    "compute_stats",
    "compare_predictions",
    "load_predictions",
]
