"""Shared fixtures: a live service instance and the committed fixture files.

Imports of the package under test happen inside fixtures so that test
collection still works (and the modules skip cleanly) when the sidecar
package is not installed.
"""

import json
import socket
import threading
import time
from pathlib import Path

import pytest

FIXTURES_DIR = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES_DIR


@pytest.fixture(scope="session")
def wndb_mini_dir() -> Path:
    return FIXTURES_DIR / "wndb_mini"


@pytest.fixture(scope="session")
def wikipedia_leads_path() -> Path:
    return FIXTURES_DIR / "wikipedia_leads.jsonl"


@pytest.fixture(scope="session")
def protocol_fixtures() -> dict:
    with (FIXTURES_DIR / "protocol_fixtures.json").open("r", encoding="utf-8") as fh:
        return json.load(fh)


def _free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


@pytest.fixture(scope="session")
def live_server():
    """Default-configuration service in a daemon thread; yields its base URL."""
    uvicorn = pytest.importorskip("uvicorn")
    service = pytest.importorskip("ctxsidecar.service")

    port = _free_port()
    config = uvicorn.Config(
        service.create_app(service.ServiceConfig(port=port)),
        host="127.0.0.1",
        port=port,
        log_level="error",
    )
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.monotonic() + 15
    while not server.started:
        if time.monotonic() > deadline or not thread.is_alive():
            raise RuntimeError("embedding service failed to start")
        time.sleep(0.02)
    yield f"http://127.0.0.1:{port}"
    server.should_exit = True
    thread.join(timeout=10)
