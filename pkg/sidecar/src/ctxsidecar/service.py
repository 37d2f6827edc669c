"""HTTP service exposing deterministic contextual token-span embeddings.

Wire contract (UTF-8 JSON):

    POST /embed   {"sentence": str, "target_start": int, "target_end": int}
                  -> 200 {"vector": [float × dim], "dim": int, "model": str}
    GET  /health  -> 200 {"status": "ok", "dim": int, "model": str}

`target_start`/`target_end` are byte offsets into the sentence's UTF-8
encoding and must land on character boundaries; (-1, -1) — or omitting
them — pools the whole sentence. Schema and offset violations return 400
with a structured body {"error": str}; unexpected failures return 500 with
the same shape, never a stack trace. The service is stateless: identical
requests always yield identical responses.
"""

from __future__ import annotations

import argparse
import sys
import threading
from dataclasses import dataclass

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .encoder import DEFAULT_MODEL_ID, DeterministicContextEncoder, EncoderError

__all__ = ["ServiceConfig", "create_app", "main"]

DEFAULT_PORT = 8811


@dataclass(frozen=True)
class ServiceConfig:
    model_id: str = DEFAULT_MODEL_ID
    layer: int = -1
    port: int = DEFAULT_PORT
    host: str = "127.0.0.1"


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message})


def _validate_payload(payload: object) -> tuple[str, int, int] | JSONResponse:
    if not isinstance(payload, dict):
        return _error(400, "request body must be a JSON object")
    sentence = payload.get("sentence")
    if not isinstance(sentence, str) or not sentence.strip():
        return _error(400, "field 'sentence' must be a non-empty string")
    start = payload.get("target_start", -1)
    end = payload.get("target_end", -1)
    if isinstance(start, bool) or isinstance(end, bool):
        return _error(400, "target offsets must be integers")
    if not isinstance(start, int) or not isinstance(end, int):
        return _error(400, "target offsets must be integers")
    return sentence, start, end


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    encoder = DeterministicContextEncoder(config.model_id, layer=config.layer)
    # Inference is serialized; handlers hold no per-client state.
    inference_lock = threading.Lock()
    app = FastAPI(title="ctxsidecar", docs_url=None, redoc_url=None)

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "dim": encoder.dim, "model": encoder.model}

    @app.post("/embed")
    async def embed(request: Request):
        try:
            payload = await request.json()
        except Exception:
            return _error(400, "request body is not valid JSON")
        validated = _validate_payload(payload)
        if isinstance(validated, JSONResponse):
            return validated
        sentence, start, end = validated
        try:
            with inference_lock:
                vector = encoder.embed(sentence, start, end)
        except EncoderError as exc:
            return _error(400, str(exc))
        except Exception as exc:  # structured 500, never a traceback
            return _error(500, f"internal error ({type(exc).__name__})")
        return {"vector": vector.tolist(), "dim": encoder.dim, "model": encoder.model}

    @app.exception_handler(Exception)
    async def unhandled(request: Request, exc: Exception) -> JSONResponse:
        return _error(500, f"internal error ({type(exc).__name__})")

    return app


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="ctx-sidecar",
        description="Serve deterministic contextual token-span embeddings over HTTP.",
    )
    parser.add_argument("--model", default=DEFAULT_MODEL_ID, help="model id (hashctx-<dim>-<layers>)")
    parser.add_argument("--layer", type=int, default=-1, help="mixing layer to pool (-1 = last)")
    parser.add_argument("--port", type=int, default=DEFAULT_PORT)
    parser.add_argument("--host", default="127.0.0.1")
    args = parser.parse_args(argv)

    import uvicorn

    config = ServiceConfig(model_id=args.model, layer=args.layer, port=args.port, host=args.host)
    try:
        app = create_app(config)
    except EncoderError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    return 0


if __name__ == "__main__":
    sys.exit(main())
