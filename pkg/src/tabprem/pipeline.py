"""End-to-end premise construction: load inputs, apply the configured stages
in fixed order (render → row pruning → definition augmentation), and emit one
JSON-lines record per successfully processed pair.

Per-pair failures (unknown table id, empty hypothesis, unreachable gateway
with no fallback…) go to an errors sidecar file next to the output and
processing continues; only unreadable inputs or an invalid configuration are
fatal. Pairs may be processed by a thread pool — all shared resources are
read-only — but records are always written in input order, and reruns with
identical inputs and a primed gateway cache produce byte-identical files.
"""

from __future__ import annotations

import enum
import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .embeddings import ContextualEmbeddingClient, EmbeddingTable, load_vectors
from .errors import ConfigError, DanglingTableRef, TabPremError
from .knowledge import SenseInventory, load_inventory
from .relevance import default_stopwords, load_stopwords
from .render import TemplateRegistry, load_registry, render_struc, seed_registry
from .stages import (
    DistractingRowRemover,
    KnowledgeAugmenter,
    ParagraphRenderer,
    PipelineItem,
)
from .tables import HypothesisPair, TableDocument, parse_pairs_file, parse_table_file

__all__ = [
    "Stage",
    "OutputFormat",
    "PipelineConfig",
    "PremiseRecord",
    "estimate_tokens",
    "run_pipeline",
    "emit_training_manifest",
    "DEFAULT_TOKEN_BUDGET",
]

DEFAULT_TOKEN_BUDGET = 512


class Stage(enum.Enum):
    """The composable input modifications, in their fixed execution order."""

    BPR = "BPR"
    DRR = "DRR"
    KG_EXPLICIT = "KG_EXPLICIT"

    @classmethod
    def from_token(cls, token: str) -> "Stage":
        aliases = {
            "bpr": cls.BPR,
            "drr": cls.DRR,
            "kg": cls.KG_EXPLICIT,
            "kg_explicit": cls.KG_EXPLICIT,
            "kg-explicit": cls.KG_EXPLICIT,
        }
        try:
            return aliases[token.strip().lower()]
        except KeyError:
            raise ConfigError(f"unknown stage {token!r} (expected bpr, drr, or kg)") from None


# Fixed order stages execute in, and the order stages_applied is reported in.
_STAGE_ORDER = (Stage.BPR, Stage.DRR, Stage.KG_EXPLICIT)


class OutputFormat(enum.Enum):
    PARA = "PARA"
    STRUC = "STRUC"


@dataclass(frozen=True)
class PipelineConfig:
    """Everything one run depends on. `validate()` enforces the stage/resource
    coupling; `fingerprint()` hashes the semantic content for manifests and
    reproducibility checks."""

    stages: frozenset[Stage] = frozenset()
    k: int = 4
    token_budget: int = DEFAULT_TOKEN_BUDGET
    vectors: str | None = None
    stopwords: str | None = None
    registry: str | None = None
    inventory: str | None = None
    gateway_url: str | None = None
    gateway_cache: str | None = None
    output_format: OutputFormat = OutputFormat.PARA
    tidy_punct: bool = False
    workers: int = 1

    def validate(self) -> None:
        if self.k < 1:
            raise ConfigError("k must be >= 1")
        if self.token_budget < 1:
            raise ConfigError("token budget must be >= 1")
        if self.workers < 1:
            raise ConfigError("worker count must be >= 1")
        if Stage.KG_EXPLICIT in self.stages and not self.inventory:
            raise ConfigError("definition augmentation requires --inventory")
        if Stage.DRR in self.stages and not self.vectors:
            raise ConfigError("row pruning requires --vectors")
        if self.output_format is OutputFormat.STRUC:
            blocked = {Stage.BPR, Stage.KG_EXPLICIT} & self.stages
            if blocked:
                names = ", ".join(sorted(s.value for s in blocked))
                raise ConfigError(f"struc output excludes sentence stages: {names}")

    def stage_names(self) -> list[str]:
        return [s.value for s in _STAGE_ORDER if s in self.stages]

    def fingerprint(self) -> str:
        payload = {
            "stages": self.stage_names(),
            "k": self.k,
            "token_budget": self.token_budget,
            "vectors": self.vectors,
            "stopwords": self.stopwords,
            "registry": self.registry,
            "inventory": self.inventory,
            "gateway_url": self.gateway_url,
            "output_format": self.output_format.value,
            "tidy_punct": self.tidy_punct,
        }
        canonical = json.dumps(payload, sort_keys=True, ensure_ascii=False)
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def estimate_tokens(premise: str) -> int:
    """ceil(1.4 × whitespace-token count) + 2, in exact integer arithmetic.

    A deliberate heuristic for subword growth plus the two special tokens an
    encoder adds around a segment — close enough to flag premises that would
    overflow a downstream encoder, with no tokenizer dependency.
    """
    n = len(premise.split())
    return (7 * n + 4) // 5 + 2


@dataclass(frozen=True)
class PremiseRecord:
    """One output line: the premise built for one pair, plus provenance."""

    pair_id: str
    table_id: str
    premise: str
    retained_keys: list[str] = field(default_factory=list)
    scores: list[float] = field(default_factory=list)
    token_estimate: int = 0
    stages_applied: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "pair_id": self.pair_id,
            "table_id": self.table_id,
            "premise": self.premise,
            "retained_keys": list(self.retained_keys),
            "scores": list(self.scores),
            "token_estimate": self.token_estimate,
            "stages_applied": list(self.stages_applied),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)

    @classmethod
    def from_dict(cls, payload: dict) -> "PremiseRecord":
        return cls(
            pair_id=str(payload["pair_id"]),
            table_id=str(payload["table_id"]),
            premise=str(payload["premise"]),
            retained_keys=[str(k) for k in payload.get("retained_keys", [])],
            scores=[float(s) for s in payload.get("scores", [])],
            token_estimate=int(payload.get("token_estimate", 0)),
            stages_applied=[str(s) for s in payload.get("stages_applied", [])],
        )


@dataclass
class _Resources:
    """Read-only state shared by every worker."""

    registry: TemplateRegistry
    stopwords: set[str]
    embeddings: EmbeddingTable | None = None
    inventory: SenseInventory | None = None
    gateway: ContextualEmbeddingClient | None = None


def _load_resources(cfg: PipelineConfig) -> _Resources:
    registry = load_registry(cfg.registry) if cfg.registry else seed_registry()
    stopwords = load_stopwords(cfg.stopwords) if cfg.stopwords else default_stopwords()
    embeddings = load_vectors(cfg.vectors) if cfg.vectors else None
    inventory = load_inventory(cfg.inventory) if cfg.inventory else None
    gateway = None
    if Stage.KG_EXPLICIT in cfg.stages:
        gateway = ContextualEmbeddingClient(cfg.gateway_url, cache_path=cfg.gateway_cache)
    return _Resources(
        registry=registry,
        stopwords=stopwords,
        embeddings=embeddings,
        inventory=inventory,
        gateway=gateway,
    )


def _build_stages(cfg: PipelineConfig, res: _Resources) -> list:
    stages: list = [
        ParagraphRenderer(
            mode="bpr" if Stage.BPR in cfg.stages else "universal",
            registry=res.registry,
        )
    ]
    if Stage.DRR in cfg.stages:
        stages.append(
            DistractingRowRemover(embeddings=res.embeddings, stopwords=res.stopwords, k=cfg.k)
        )
    if Stage.KG_EXPLICIT in cfg.stages and cfg.output_format is OutputFormat.PARA:
        stages.append(
            KnowledgeAugmenter(
                inventory=res.inventory,
                gateway=res.gateway,
                tidy_punct=cfg.tidy_punct,
                fallback_vectors=res.embeddings,
            )
        )
    return stages


def _process_pair(
    pair: HypothesisPair,
    tables: dict[str, TableDocument],
    cfg: PipelineConfig,
    stages: list,
) -> tuple[PremiseRecord | None, dict | None, bool]:
    """Run one pair through the stage chain.

    Returns (record, error, fallback_used); exactly one of record/error is
    set. Only TabPremError subclasses are treated as per-pair failures —
    anything else is a bug and propagates.
    """
    try:
        table = tables.get(pair.table_id)
        if table is None:
            raise DanglingTableRef(pair.table_id, pair.pair_id)
        item = PipelineItem(pair=pair, table=table)
        for stage in stages:
            item = stage.transform_item(item)
        assert item.paragraph is not None
        retained = item.paragraph.row_sentences()
        if cfg.output_format is OutputFormat.STRUC:
            rows = [table.rows[r.source_index] for r in retained]
            premise = render_struc(table, rows=rows)
        else:
            premise = item.paragraph.text
        retained_keys = [r.key for r in retained if r.key is not None]
        scores: list[float] = []
        if item.ranking is not None:
            by_index = {entry.row_index: entry.score for entry in item.ranking.entries}
            scores = [by_index[r.source_index] for r in retained]
        record = PremiseRecord(
            pair_id=pair.pair_id,
            table_id=pair.table_id,
            premise=premise,
            retained_keys=retained_keys,
            scores=scores,
            token_estimate=estimate_tokens(premise),
            stages_applied=cfg.stage_names(),
        )
        return record, None, item.fallback_used
    except TabPremError as exc:
        error = {
            "pair_id": pair.pair_id,
            "table_id": pair.table_id,
            "error": type(exc).__name__,
            "message": str(exc),
        }
        return None, error, False


def errors_sidecar_path(out_path: str | Path) -> Path:
    return Path(str(out_path) + ".errors.jsonl")


def run_pipeline(
    cfg: PipelineConfig,
    tables_path: str | Path,
    pairs_path: str | Path,
    out_path: str | Path,
) -> dict[str, int]:
    """Process every pair and write records (input order) plus an errors
    sidecar. Returns the run summary counts."""
    cfg.validate()
    tables: dict[str, TableDocument] = {}
    for table in parse_table_file(tables_path):
        tables.setdefault(table.id, table)
    pairs = parse_pairs_file(pairs_path)
    res = _load_resources(cfg)
    stages = _build_stages(cfg, res)

    def work(pair: HypothesisPair) -> tuple[PremiseRecord | None, dict | None, bool]:
        return _process_pair(pair, tables, cfg, stages)

    if cfg.workers == 1:
        results = [work(pair) for pair in pairs]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(work, pairs))

    records = [record for record, _, _ in results if record is not None]
    errors = [error for _, error, _ in results if error is not None]
    fallbacks = sum(1 for _, _, used in results if used)

    with Path(out_path).open("w", encoding="utf-8") as fh:
        for record in records:
            fh.write(record.to_json() + "\n")
    with errors_sidecar_path(out_path).open("w", encoding="utf-8") as fh:
        for error in errors:
            fh.write(json.dumps(error, ensure_ascii=False) + "\n")
    if res.gateway is not None and cfg.gateway_cache:
        res.gateway.save_cache()

    return {
        "pairs_processed": len(records),
        "pairs_over_budget": sum(1 for r in records if r.token_estimate > cfg.token_budget),
        "gateway_fallbacks": fallbacks,
        "errors": len(errors),
    }


def emit_training_manifest(
    cfg: PipelineConfig,
    out_path: str | Path,
    premises_path: str | Path | None = None,
    pretraining: bool = True,
) -> dict:
    """Write the two-stage training schedule consumed by external trainers.

    Stage 1 is the broad-coverage sentence-pair corpus used for implicit
    knowledge transfer; stage 2 is the premise file this pipeline emitted.
    With pretraining disabled only stage 2 remains. Identical config and
    paths yield byte-identical manifests.
    """
    stages: list[dict] = []
    if pretraining:
        stages.append({"name": "multinli", "role": "pretraining", "source": "multinli-train"})
    stages.append(
        {
            "name": "infotabs-processed",
            "role": "fine-tuning",
            "premises": str(premises_path) if premises_path else None,
        }
    )
    manifest = {
        "config_fingerprint": cfg.fingerprint(),
        "stages": stages,
    }
    Path(out_path).write_text(
        json.dumps(manifest, sort_keys=True, indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    return manifest
