"""HTTP contract of the embedding service: schemas, status codes, determinism."""

import json

import pytest

pytest.importorskip("ctxsidecar")
requests = pytest.importorskip("requests")
import numpy as np

from ctxsidecar.encoder import DeterministicContextEncoder
from ctxsidecar.service import ServiceConfig, create_app

EMBED_BODY = {"sentence": "The volume of the box.", "target_start": 4, "target_end": 10}


def test_health_reports_model_and_dim(live_server):
    response = requests.get(live_server + "/health", timeout=10)
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "ok"
    assert body["dim"] == 64
    assert body["model"] == "hashctx-64-2:layer=last:pool=mean"


def test_embed_success_schema(live_server):
    response = requests.post(live_server + "/embed", json=EMBED_BODY, timeout=10)
    assert response.status_code == 200
    body = response.json()
    assert set(body) == {"vector", "dim", "model"}
    assert body["dim"] == 64 == len(body["vector"])
    assert all(isinstance(x, float) for x in body["vector"])


def test_embed_matches_in_process_encoder(live_server):
    served = requests.post(live_server + "/embed", json=EMBED_BODY, timeout=10).json()
    local = DeterministicContextEncoder().embed(
        EMBED_BODY["sentence"], EMBED_BODY["target_start"], EMBED_BODY["target_end"]
    )
    assert np.allclose(served["vector"], local, rtol=0, atol=1e-12)


def test_missing_offsets_default_to_whole_sentence(live_server):
    explicit = requests.post(
        live_server + "/embed",
        json={"sentence": "abc def", "target_start": -1, "target_end": -1},
        timeout=10,
    ).json()
    omitted = requests.post(live_server + "/embed", json={"sentence": "abc def"}, timeout=10).json()
    assert explicit == omitted


@pytest.mark.parametrize(
    "payload, fragment",
    [
        ({"sentence": ""}, "non-empty string"),
        ({"sentence": "   "}, "non-empty string"),
        ({"sentence": 7}, "non-empty string"),
        ({}, "non-empty string"),
        ({"sentence": "abc", "target_start": 2, "target_end": 1}, "span"),
        ({"sentence": "abc", "target_start": 0, "target_end": 9}, "span"),
        ({"sentence": "abc", "target_start": -3, "target_end": 1}, "span"),
        ({"sentence": "abc", "target_start": True, "target_end": 2}, "integers"),
        ({"sentence": "abc", "target_start": "0", "target_end": 2}, "integers"),
        ({"sentence": "abc", "target_start": 0.5, "target_end": 2}, "integers"),
        ({"sentence": "café", "target_start": 4, "target_end": 5}, "boundaries"),
    ],
)
def test_embed_rejects_bad_requests(live_server, payload, fragment):
    response = requests.post(live_server + "/embed", json=payload, timeout=10)
    assert response.status_code == 400
    body = response.json()
    assert set(body) == {"error"}
    assert fragment in body["error"]


def test_embed_rejects_non_object_and_non_json_bodies(live_server):
    headers = {"Content-Type": "application/json"}
    for raw in (b"{not json", b'"just a string"', b"[1, 2]", b""):
        response = requests.post(live_server + "/embed", data=raw, headers=headers, timeout=10)
        assert response.status_code == 400, raw
        assert "error" in response.json()


def test_repeated_request_is_byte_identical(live_server):
    responses = {
        requests.post(live_server + "/embed", json=EMBED_BODY, timeout=10).content
        for _ in range(10)
    }
    assert len(responses) == 1


def test_interleaved_requests_do_not_leak_state(live_server):
    other = {"sentence": "Completely different text with other tokens."}
    first = requests.post(live_server + "/embed", json=EMBED_BODY, timeout=10).content
    requests.post(live_server + "/embed", json=other, timeout=10)
    again = requests.post(live_server + "/embed", json=EMBED_BODY, timeout=10).content
    assert first == again


def test_target_word_is_context_sensitive_across_sentences(live_server):
    # The same word in a finance and a physics sentence must *not* embed
    # identically. The exact cosine is a frozen regression number for the
    # default model.
    finance = ("In capital markets, volume, is the total number of a security "
               "that was traded during a given period of time.")
    physics = ("In thermodynamics, the volume of a system is an extensive "
               "parameter for describing its thermodynamic state.")
    vectors = []
    for sentence in (finance, physics):
        start = sentence.encode("utf-8").index(b"volume")
        body = {"sentence": sentence, "target_start": start, "target_end": start + 6}
        vectors.append(np.asarray(
            requests.post(live_server + "/embed", json=body, timeout=10).json()["vector"]
        ))
    cosine = float(vectors[0] @ vectors[1]
                   / (np.linalg.norm(vectors[0]) * np.linalg.norm(vectors[1])))
    assert cosine < 1.0
    assert cosine == pytest.approx(0.10274502516791276, abs=1e-9)


def test_internal_errors_return_structured_500(monkeypatch):
    # In-process app so the failure can be injected without a backdoor.
    testclient = pytest.importorskip("fastapi.testclient")
    app = create_app(ServiceConfig())

    def explode(self, sentence, target_start=-1, target_end=-1):
        raise RuntimeError("synthetic failure with a secret path /etc/nope")

    monkeypatch.setattr(DeterministicContextEncoder, "embed", explode)
    client = testclient.TestClient(app, raise_server_exceptions=False)
    response = client.post("/embed", json=EMBED_BODY)
    assert response.status_code == 500
    body = response.json()
    assert set(body) == {"error"}
    assert body["error"] == "internal error (RuntimeError)"
    # No stack trace, exception message, or internals in the payload.
    text = response.text
    assert "Traceback" not in text and "secret path" not in text


def test_nondefault_model_config():
    testclient = pytest.importorskip("fastapi.testclient")
    client = testclient.TestClient(create_app(ServiceConfig(model_id="hashctx-8-1")))
    health = client.get("/health").json()
    assert health["dim"] == 8
    assert health["model"] == "hashctx-8-1:layer=last:pool=mean"
    body = client.post("/embed", json={"sentence": "small model"}).json()
    assert len(body["vector"]) == 8


def test_payload_is_strict_about_unknown_fields(live_server):
    # Unknown fields are ignored (lenient reads), required fields are not.
    response = requests.post(
        live_server + "/embed",
        json=dict(EMBED_BODY, extra_field=1),
        timeout=10,
    )
    assert response.status_code == 200
    base = requests.post(live_server + "/embed", json=EMBED_BODY, timeout=10)
    assert response.json() == base.json()


def test_concurrent_requests_all_succeed_identically(live_server):
    from concurrent.futures import ThreadPoolExecutor

    def fetch(_):
        return requests.post(live_server + "/embed", json=EMBED_BODY, timeout=30)

    with ThreadPoolExecutor(max_workers=8) as pool:
        responses = list(pool.map(fetch, range(16)))
    assert all(r.status_code == 200 for r in responses)
    assert len({r.content for r in responses}) == 1


def test_health_rejects_nothing_and_is_stable(live_server):
    first = requests.get(live_server + "/health", timeout=10).content
    second = requests.get(live_server + "/health", timeout=10).content
    assert first == second
    assert json.loads(first)["status"] == "ok"
