"""Regenerate tests/fixtures/protocol_fixtures.json.

Each fixture pairs an /embed request body with the exact response the
default-configuration service must return for it. Vectors are computed by
calling the encoder directly (no HTTP involved), so the fixture file is an
independent record of the wire contract: the conformance test replays the
requests against a live server and compares.

Run from the sidecar/ directory:
    python3 scripts/make_protocol_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

from ctxsidecar.encoder import DeterministicContextEncoder


def _span(sentence: str, phrase: str, occurrence: int = 0) -> tuple[int, int]:
    """UTF-8 byte span of the nth occurrence of `phrase`."""
    data = sentence.encode("utf-8")
    needle = phrase.encode("utf-8")
    start = -1
    for _ in range(occurrence + 1):
        start = data.index(needle, start + 1)
    return start, start + len(needle)


def build_cases() -> list[dict]:
    cases: list[dict] = []

    def add(name: str, sentence: str, span: tuple[int, int] | None = None,
            omit_offsets: bool = False) -> None:
        request: dict = {"sentence": sentence}
        if span is not None:
            request["target_start"], request["target_end"] = span
        elif not omit_offsets:
            request["target_start"] = -1
            request["target_end"] = -1
        cases.append({"name": name, "request": request})

    vol = "The volume of the box exceeds the volume of the bag."
    add("whole_sentence_explicit", vol)
    add("whole_sentence_omitted", vol, omit_offsets=True)
    add("volume_first_occurrence", vol, _span(vol, "volume", 0))
    add("volume_second_occurrence", vol, _span(vol, "volume", 1))
    add("span_with_punctuation", vol, _span(vol, "bag."))
    add("span_full_range", vol, (0, len(vol.encode("utf-8"))))

    single = "Fluorine"
    add("single_word_whole", single)
    add("single_word_span", single, (0, 8))

    accents = "Les Bergers d'Arcadie était exposé à côté."
    add("accented_whole", accents)
    add("accented_target", accents, _span(accents, "côté"))
    add("accented_multiword", accents, _span(accents, "Bergers d'Arcadie"))

    cjk = "東京 volume 試験 data"
    add("cjk_whole", cjk)
    add("cjk_ascii_target", cjk, _span(cjk, "volume"))
    add("cjk_target", cjk, _span(cjk, "試験"))

    spaces = "trailing   runs  of   spaces here"
    add("space_runs_whole", spaces)
    add("space_runs_target", spaces, _span(spaces, "runs"))
    add("whitespace_only_span", spaces, _span(spaces, "   ", 0))

    numeric = "Population was 435,114 in the 2017 census (estimated)."
    add("numeric_whole", numeric)
    add("numeric_target", numeric, _span(numeric, "435,114"))
    add("numeric_year", numeric, _span(numeric, "2017"))

    longish = ("The New York Stock Exchange is an American stock exchange "
               "located at 11 Wall Street, Lower Manhattan, New York City.")
    add("long_whole", longish)
    add("long_entity_target", longish, _span(longish, "New York Stock Exchange"))
    add("long_tail_target", longish, _span(longish, "New York City"))
    add("span_mid_token", longish, _span(longish, "xchange"))  # inside a token

    return cases


def main() -> None:
    encoder = DeterministicContextEncoder()
    for case in (cases := build_cases()):
        request = case["request"]
        vector = encoder.embed(
            request["sentence"],
            request.get("target_start", -1),
            request.get("target_end", -1),
        )
        case["response"] = {
            "vector": vector.tolist(),
            "dim": int(vector.shape[0]),
            "model": encoder.model,
        }
    out = Path("tests/fixtures/protocol_fixtures.json")
    payload = {"model": encoder.model, "dim": encoder.dim, "cases": cases}
    out.write_text(json.dumps(payload, ensure_ascii=False, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {len(cases)} cases to {out}")


if __name__ == "__main__":
    main()
