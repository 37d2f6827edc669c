"""Shared fixtures: committed corpora, vector tables, and registries."""

from __future__ import annotations

from pathlib import Path

import pytest

from tabprem import (
    EmbeddingTable,
    TableDocument,
    TemplateRegistry,
    load_vectors,
    parse_pairs_file,
    parse_table_file,
    seed_registry,
)

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def registry() -> TemplateRegistry:
    return seed_registry()


@pytest.fixture(scope="session")
def nyse_table() -> TableDocument:
    return parse_table_file(DATA_DIR / "nyse.jsonl")[0]


@pytest.fixture(scope="session")
def fluorine_table() -> TableDocument:
    return parse_table_file(DATA_DIR / "fluorine.jsonl")[0]


@pytest.fixture(scope="session")
def caesar_table() -> TableDocument:
    return parse_table_file(DATA_DIR / "caesar.jsonl")[0]


@pytest.fixture(scope="session")
def fluorine_hypothesis() -> str:
    return parse_pairs_file(DATA_DIR / "fluorine_pairs.jsonl")[0].hypothesis


@pytest.fixture(scope="session")
def caesar_hypothesis() -> str:
    return parse_pairs_file(DATA_DIR / "caesar_pairs.jsonl")[0].hypothesis


@pytest.fixture(scope="session")
def trimmed_vectors() -> EmbeddingTable:
    return load_vectors(DATA_DIR / "vectors_100d_trimmed.vec")
