"""Deterministic contextual-embedding service and sense-inventory tools."""

from .encoder import (
    DEFAULT_MODEL_ID,
    DeterministicContextEncoder,
    EncoderError,
    SpanError,
)
from .inventory import ExtractionSpec, WikipediaLeads, build_inventory
from .service import DEFAULT_PORT, ServiceConfig, create_app
from .wndb import Synset, WordNetDb

__all__ = [
    "DEFAULT_MODEL_ID",
    "DEFAULT_PORT",
    "DeterministicContextEncoder",
    "EncoderError",
    "ExtractionSpec",
    "ServiceConfig",
    "SpanError",
    "Synset",
    "WikipediaLeads",
    "WordNetDb",
    "build_inventory",
    "create_app",
]
