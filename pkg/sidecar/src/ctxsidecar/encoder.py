"""Deterministic contextual token-span encoder.

Every token gets a base vector seeded from a cryptographic hash of the token
string, then a fixed number of attention-style mixing layers blend each
token's vector with its neighbours' — so the same word embeds differently in
different sentences (context sensitivity) while identical inputs always
produce identical outputs (no learned weights, no dropout, no global RNG).

This stands in for a pretrained transformer where none can be downloaded:
the wire contract, determinism, and context sensitivity are what downstream
components rely on, and all three hold here. The encoder family is
selectable by a model identifier of the form ``hashctx-<dim>-<layers>``;
the advertised model string also records the layer and pooling choices.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DEFAULT_MODEL_ID",
    "DeterministicContextEncoder",
    "EncoderError",
    "SpanError",
    "byte_length",
    "is_utf8_boundary",
]

DEFAULT_MODEL_ID = "hashctx-64-2"

_MODEL_ID = re.compile(r"^hashctx-(\d+)-(\d+)$")
_TOKEN = re.compile(r"\S+")

# Mixing strength of one attention layer; fixed, not learned.
_BLEND = 0.5
# Linear penalty on token distance inside the attention logits, so word
# order influences the mix (pure bag-of-words would miss reorderings).
_DISTANCE_PENALTY = 0.1


class EncoderError(ValueError):
    """Malformed encode request (empty sentence, bad model id)."""


class SpanError(EncoderError):
    """Target byte span out of range or off a character boundary."""


def byte_length(text: str) -> int:
    return len(text.encode("utf-8"))


def is_utf8_boundary(text: str, offset: int) -> bool:
    """True when `offset` lands on a character boundary of the UTF-8 bytes."""
    data = text.encode("utf-8")
    if offset < 0 or offset > len(data):
        return False
    # A continuation byte has the bit pattern 10xxxxxx.
    return offset == len(data) or (data[offset] & 0xC0) != 0x80


@dataclass(frozen=True)
class _Token:
    text: str
    start_byte: int
    end_byte: int


def _tokenize(sentence: str) -> list[_Token]:
    tokens = []
    for match in _TOKEN.finditer(sentence):
        start = byte_length(sentence[: match.start()])
        tokens.append(_Token(match.group(), start, start + byte_length(match.group())))
    return tokens


class DeterministicContextEncoder:
    """Hash-seeded token vectors + fixed attention-style mixing layers.

    `layer` selects which mixing layer's representations are pooled:
    -1 (default) is the last, 0 is the un-mixed token vectors.
    """

    def __init__(self, model_id: str = DEFAULT_MODEL_ID, layer: int = -1, seed: str = "ctxsidecar-v1"):
        match = _MODEL_ID.match(model_id)
        if not match:
            raise EncoderError(
                f"unknown model id {model_id!r}; expected hashctx-<dim>-<layers>"
            )
        self.model_id = model_id
        self.dim = int(match.group(1))
        self.layers = int(match.group(2))
        if self.dim < 2 or self.layers < 1:
            raise EncoderError(f"model id {model_id!r} needs dim >= 2 and layers >= 1")
        if not -1 <= layer <= self.layers:
            raise EncoderError(f"layer {layer} outside 0..{self.layers} (or -1 for last)")
        self.layer = layer
        self.seed = seed
        self._token_cache: dict[str, np.ndarray] = {}

    @property
    def model(self) -> str:
        """Provenance string advertised on the wire: family, layer, pooling."""
        layer_name = "last" if self.layer in (-1, self.layers) else str(self.layer)
        return f"{self.model_id}:layer={layer_name}:pool=mean"

    # -- token vectors -----------------------------------------------------

    def _token_vector(self, token: str) -> np.ndarray:
        cached = self._token_cache.get(token)
        if cached is not None:
            return cached
        digest = hashlib.sha256(f"{self.seed}\x00{token}".encode("utf-8")).digest()
        rng = np.random.Generator(np.random.PCG64(int.from_bytes(digest[:8], "big")))
        vector = rng.standard_normal(self.dim)
        vector /= np.linalg.norm(vector)
        self._token_cache[token] = vector
        return vector

    # -- context mixing ----------------------------------------------------

    def _mix_once(self, matrix: np.ndarray) -> np.ndarray:
        n = matrix.shape[0]
        logits = (matrix @ matrix.T) / np.sqrt(self.dim)
        positions = np.arange(n, dtype=float)
        logits -= _DISTANCE_PENALTY * np.abs(positions[:, None] - positions[None, :])
        logits -= logits.max(axis=1, keepdims=True)
        weights = np.exp(logits)
        weights /= weights.sum(axis=1, keepdims=True)
        mixed = matrix + _BLEND * (weights @ matrix)
        return mixed / np.linalg.norm(mixed, axis=1, keepdims=True)

    def _contextual_matrix(self, tokens: list[_Token]) -> np.ndarray:
        matrix = np.stack([self._token_vector(t.text) for t in tokens])
        target = self.layers if self.layer == -1 else self.layer
        for _ in range(target):
            matrix = self._mix_once(matrix)
        return matrix

    # -- public API ----------------------------------------------------------

    def embed(self, sentence: str, target_start: int = -1, target_end: int = -1) -> np.ndarray:
        """Mean of the contextual vectors of the tokens overlapping the byte
        span [target_start, target_end); (-1, -1) pools the whole sentence.
        A span that overlaps no token (all whitespace) also pools the whole
        sentence — the span is legal, it just selects nothing narrower.
        """
        if not isinstance(sentence, str) or not sentence.strip():
            raise EncoderError("sentence must be a non-empty string")
        whole = target_start == -1 and target_end == -1
        if not whole:
            total = byte_length(sentence)
            if not (0 <= target_start < target_end <= total):
                raise SpanError(
                    f"target span [{target_start}, {target_end}) outside 0..{total}"
                )
            if not is_utf8_boundary(sentence, target_start) or not is_utf8_boundary(
                sentence, target_end
            ):
                raise SpanError("target span does not land on character boundaries")
        tokens = _tokenize(sentence)
        matrix = self._contextual_matrix(tokens)
        if whole:
            selected = matrix
        else:
            mask = [
                i
                for i, tok in enumerate(tokens)
                if tok.start_byte < target_end and tok.end_byte > target_start
            ]
            selected = matrix[mask] if mask else matrix
        return selected.mean(axis=0)
