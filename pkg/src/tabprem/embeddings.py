"""Embedding access: static word vectors for row scoring, and an HTTP client
for contextual token-span embeddings (used by definition disambiguation).

Static vectors load once from a plain-text file (optional "<count> <dim>"
header, then "word v1 … vD" lines) and are immutable afterwards. The remote
client speaks a small JSON wire protocol:

    POST /embed {"sentence": str, "target_start": int, "target_end": int}
        → 200 {"vector": [...], "dim": int, "model": str}
    GET /health → 200 {"status": "ok", "dim": int, "model": str}

Target offsets are UTF-8 BYTE offsets landing on character boundaries;
(-1, -1) requests whole-sentence pooling. Responses are cached by
(sentence, start, end); the cache can be persisted and replayed so test runs
never need a live endpoint. Non-200 answers and schema violations raise
ProtocolError; transport failures retry with exponential backoff before
raising GatewayUnavailable.
"""

from __future__ import annotations

import json
import math
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np
import requests

from .errors import (
    DimensionMismatch,
    GatewayUnavailable,
    MalformedInput,
    ProtocolError,
    ZeroVector,
)

__all__ = [
    "EmbeddingVector",
    "EmbeddingTable",
    "EmbedRequest",
    "ContextualEmbeddingClient",
    "cosine",
    "load_vectors",
    "trim_vector_file",
]

# 1-D float64 array; finiteness is enforced at load/parse time.
EmbeddingVector = np.ndarray


def cosine(a: EmbeddingVector, b: EmbeddingVector) -> float:
    """dot(a,b) / (‖a‖‖b‖), accumulated in float64.

    Raises DimensionMismatch on shape disagreement and ZeroVector if either
    argument has zero norm (cosine undefined).
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cosine over dims {a.shape[0]} vs {b.shape[0]}")
    na = math.sqrt(float(np.dot(a, a)))
    nb = math.sqrt(float(np.dot(b, b)))
    if na == 0.0 or nb == 0.0:
        raise ZeroVector("cosine with an all-zero vector")
    return float(np.dot(a, b)) / (na * nb)


def _parse_vector(parts: list[str], path: str, line_no: int) -> np.ndarray:
    try:
        vec = np.array([float(p) for p in parts], dtype=np.float64)
    except ValueError:
        raise MalformedInput("non-numeric vector component", path, line_no) from None
    if not np.all(np.isfinite(vec)):
        raise MalformedInput("non-finite vector component", path, line_no)
    return vec


class EmbeddingTable:
    """word → vector map with exact lowercase lookup.

    Stored words keep their file form and order (so the vocabulary round-trips
    byte-exactly); queries are lowercased before the exact-match lookup. On
    duplicate lowercased words the first occurrence wins.
    """

    def __init__(self, words: Iterable[str], vectors: Iterable[np.ndarray]):
        self.words: tuple[str, ...] = tuple(words)
        vecs = [np.asarray(v, dtype=np.float64) for v in vectors]
        if len(vecs) != len(self.words):
            raise ValueError("words/vectors length mismatch")
        if not vecs:
            raise ValueError("embedding table is empty")
        self.dim: int = int(vecs[0].shape[0])
        for v in vecs:
            if v.shape != (self.dim,):
                raise DimensionMismatch("embedding table mixes dimensions")
        self._by_lower: dict[str, np.ndarray] = {}
        for word, vec in zip(self.words, vecs):
            self._by_lower.setdefault(word.lower(), vec)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word.lower() in self._by_lower

    def lookup(self, word: str) -> np.ndarray | None:
        """Vector for `word` (lowercased exact match); None when absent —
        absence is a value here, not an error."""
        return self._by_lower.get(word.lower())

    def vocabulary(self) -> tuple[str, ...]:
        return self.words


def _looks_like_header(line: str) -> bool:
    tokens = line.split()
    if len(tokens) != 2:
        return False
    try:
        int(tokens[0]), int(tokens[1])
    except ValueError:
        return False
    return True


def load_vectors(path: str | Path) -> EmbeddingTable:
    """Load the plain-text vector format (header line optional)."""
    spath = str(path)
    words: list[str] = []
    vectors: list[np.ndarray] = []
    declared_dim: int | None = None
    with Path(path).open("r", encoding="utf-8") as fh:
        first = True
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if first:
                first = False
                if _looks_like_header(line):
                    declared_dim = int(line.split()[1])
                    continue
            parts = line.split(" ")
            word, comps = parts[0], [p for p in parts[1:] if p]
            if not word or not comps:
                raise MalformedInput("vector line needs a word and components", spath, line_no)
            if declared_dim is not None and len(comps) != declared_dim:
                raise MalformedInput(
                    f"vector has {len(comps)} components, header declares {declared_dim}",
                    spath,
                    line_no,
                )
            vectors.append(_parse_vector(comps, spath, line_no))
            words.append(word)
    if not words:
        raise MalformedInput("vector file has no data lines", spath)
    return EmbeddingTable(words, vectors)


def trim_vector_file(src: str | Path, vocabulary: set[str], out: str | Path) -> tuple[int, int]:
    """Copy only lines whose word (lowercased) is in `vocabulary`; returns
    (kept, seen). Kept lines are copied byte-for-byte so component precision
    survives; the output gets a fresh "<count> <dim>" header."""
    wanted = {w.lower() for w in vocabulary}
    kept_lines: list[str] = []
    seen = 0
    dim: int | None = None
    with Path(src).open("r", encoding="utf-8") as fh:
        first = True
        for line in fh:
            stripped = line.rstrip("\n")
            if not stripped.strip():
                continue
            if first:
                first = False
                if _looks_like_header(stripped):
                    continue
            parts = stripped.split(" ")
            seen += 1
            if parts[0].lower() in wanted:
                if dim is None:
                    dim = len([p for p in parts[1:] if p])
                kept_lines.append(stripped)
    with Path(out).open("w", encoding="utf-8") as out_fh:
        out_fh.write(f"{len(kept_lines)} {dim or 0}\n")
        for line in kept_lines:
            out_fh.write(line + "\n")
    return len(kept_lines), seen


def _is_utf8_boundary(data: bytes, offset: int) -> bool:
    if offset == 0 or offset == len(data):
        return True
    return (data[offset] & 0xC0) != 0x80  # not a continuation byte


@dataclass(frozen=True)
class EmbedRequest:
    """One contextual-embedding request. Offsets are UTF-8 byte positions;
    (-1, -1) means whole-sentence pooling."""

    sentence: str
    target_start: int = -1
    target_end: int = -1

    def validate(self) -> None:
        if not self.sentence:
            raise ProtocolError("empty sentence in embed request")
        if self.target_start == -1 and self.target_end == -1:
            return
        data = self.sentence.encode("utf-8")
        if not (0 <= self.target_start < self.target_end <= len(data)):
            raise ProtocolError(
                f"target span [{self.target_start}, {self.target_end}) out of range "
                f"for a {len(data)}-byte sentence"
            )
        if not _is_utf8_boundary(data, self.target_start) or not _is_utf8_boundary(data, self.target_end):
            raise ProtocolError("target span does not land on UTF-8 character boundaries")

    def key(self) -> tuple[str, int, int]:
        return (self.sentence, self.target_start, self.target_end)


def _validate_embed_payload(payload: object) -> tuple[np.ndarray, int, str]:
    if not isinstance(payload, dict):
        raise ProtocolError("embed response is not a JSON object")
    vector = payload.get("vector")
    dim = payload.get("dim")
    model = payload.get("model")
    if not isinstance(vector, list) or not vector:
        raise ProtocolError("embed response missing 'vector'")
    if not all(isinstance(x, (int, float)) and math.isfinite(x) for x in vector):
        raise ProtocolError("embed response vector has non-finite or non-numeric entries")
    if not isinstance(dim, int) or dim != len(vector):
        raise ProtocolError("embed response 'dim' disagrees with vector length")
    if not isinstance(model, str) or not model:
        raise ProtocolError("embed response missing 'model'")
    return np.array(vector, dtype=np.float64), dim, model


class ContextualEmbeddingClient:
    """Caching client for the embedding wire protocol.

    With `base_url=None` the client is replay-only: requests must hit the
    cache (loaded from `cache_path`), otherwise GatewayUnavailable is raised.
    The cache allows concurrent readers; writes take an exclusive lock.
    """

    def __init__(
        self,
        base_url: str | None,
        cache_path: str | Path | None = None,
        timeout: float = 10.0,
        max_retries: int = 3,
        backoff: float = 0.25,
        session: requests.Session | None = None,
    ):
        self.base_url = base_url.rstrip("/") if base_url else None
        self.timeout = timeout
        self.max_retries = max_retries
        self.backoff = backoff
        self._session = session or requests.Session()
        self._lock = threading.Lock()
        self._cache: dict[tuple[str, int, int], tuple[tuple[float, ...], int, str]] = {}
        self._dim: int | None = None
        self.cache_path = Path(cache_path) if cache_path else None
        if self.cache_path and self.cache_path.exists():
            self._load_cache(self.cache_path)

    # -- cache persistence ------------------------------------------------

    def _load_cache(self, path: Path) -> None:
        payload = json.loads(path.read_text(encoding="utf-8"))
        entries = payload.get("entries", []) if isinstance(payload, dict) else []
        for entry in entries:
            req = EmbedRequest(
                sentence=entry["sentence"],
                target_start=int(entry["target_start"]),
                target_end=int(entry["target_end"]),
            )
            vector, dim, model = _validate_embed_payload(
                {"vector": entry["vector"], "dim": int(entry["dim"]), "model": entry["model"]}
            )
            self._cache[req.key()] = (tuple(float(x) for x in vector), dim, model)
            if self._dim is None:
                self._dim = dim

    def save_cache(self, path: str | Path | None = None) -> None:
        target = Path(path) if path else self.cache_path
        if target is None:
            raise ValueError("no cache path configured")
        with self._lock:
            entries = [
                {
                    "sentence": sentence,
                    "target_start": start,
                    "target_end": end,
                    "vector": list(vector),
                    "dim": dim,
                    "model": model,
                }
                for (sentence, start, end), (vector, dim, model) in self._cache.items()
            ]
        target.write_text(
            json.dumps({"entries": entries}, ensure_ascii=False, indent=1) + "\n",
            encoding="utf-8",
        )

    def cache_size(self) -> int:
        with self._lock:
            return len(self._cache)

    # -- protocol ----------------------------------------------------------

    def embed(self, req: EmbedRequest) -> np.ndarray:
        req.validate()  # offset violations fail here, before any network I/O
        key = req.key()
        with self._lock:
            hit = self._cache.get(key)
        if hit is not None:
            return np.array(hit[0], dtype=np.float64)
        if self.base_url is None:
            raise GatewayUnavailable(
                "no embedding endpoint configured and request not found in cache"
            )
        payload = self._post_with_retries(
            "/embed",
            {
                "sentence": req.sentence,
                "target_start": req.target_start,
                "target_end": req.target_end,
            },
        )
        vector, dim, model = _validate_embed_payload(payload)
        if self._dim is not None and dim != self._dim:
            raise DimensionMismatch(
                f"endpoint changed dimensionality mid-session: {self._dim} → {dim}"
            )
        self._dim = dim
        with self._lock:
            self._cache[key] = (tuple(float(x) for x in vector), dim, model)
        return vector

    def health(self) -> dict:
        if self.base_url is None:
            raise GatewayUnavailable("no embedding endpoint configured")
        payload = self._get_with_retries("/health")
        if (
            not isinstance(payload, dict)
            or payload.get("status") != "ok"
            or not isinstance(payload.get("dim"), int)
            or not isinstance(payload.get("model"), str)
        ):
            raise ProtocolError(f"malformed health response: {payload!r}")
        return payload

    # -- transport ----------------------------------------------------------

    def _attempts(self) -> Iterator[int]:
        return iter(range(self.max_retries + 1))

    def _request_with_retries(self, method: str, route: str, body: dict | None) -> object:
        url = f"{self.base_url}{route}"
        last_error: Exception | None = None
        for attempt in self._attempts():
            try:
                response = self._session.request(method, url, json=body, timeout=self.timeout)
            except (requests.ConnectionError, requests.Timeout) as exc:
                last_error = exc
                if attempt < self.max_retries:
                    time.sleep(self.backoff * (2**attempt))
                continue
            if response.status_code != 200:
                raise ProtocolError(f"{route} answered HTTP {response.status_code}")
            try:
                return response.json()
            except ValueError:
                raise ProtocolError(f"{route} answered non-JSON body") from None
        raise GatewayUnavailable(
            f"{url} unreachable after {self.max_retries + 1} attempts: {last_error}"
        )

    def _post_with_retries(self, route: str, body: dict) -> object:
        return self._request_with_retries("POST", route, body)

    def _get_with_retries(self, route: str) -> object:
        return self._request_with_retries("GET", route, None)
