#!/usr/bin/env python3
"""Convert a JSON word-embedding bundle to the plain-text vector format.

Input: the JSON shipped by the npm package `wink-embeddings-sg-100d`
(PDDL-licensed 100-dimensional English vectors): one object whose "vectors"
member maps each word to an array of `dimensions` components followed by
bookkeeping entries (l2 norm, word index), which are dropped here.

Output: "<count> <dim>" header, then one "word v1 … vD" line per word —
the format `tabprem trim-vectors` and the static-vector loader consume.

The 300 MB input is scanned incrementally; nothing is held in memory beyond
one chunk. Words containing whitespace (none expected) are skipped.

Usage: export_vectors_json.py IN.json OUT.vec
"""

from __future__ import annotations

import json
import os
import re
import shutil
import sys

_HEADER = re.compile(rb'"dimensions"\s*:\s*(\d+)')
_VECTORS_KEY = re.compile(rb'"vectors"\s*:\s*\{')
_ENTRY = re.compile(rb'"((?:[^"\\]|\\.)*)"\s*:\s*\[([^\]]*)\]')

_CHUNK = 16_000_000


def main() -> int:
    if len(sys.argv) != 3:
        print(__doc__.strip().splitlines()[-1], file=sys.stderr)
        return 2
    src, out = sys.argv[1], sys.argv[2]

    with open(src, "rb") as fh:
        head = fh.read(_CHUNK)
        dim_match = _HEADER.search(head)
        if not dim_match:
            print("no 'dimensions' field found", file=sys.stderr)
            return 1
        dim = int(dim_match.group(1))

        # Skip ahead to the vectors object, then stream entries.
        start = _VECTORS_KEY.search(head)
        while start is None:
            more = fh.read(_CHUNK)
            if not more:
                print("no 'vectors' object found", file=sys.stderr)
                return 1
            head = head[-64:] + more
            start = _VECTORS_KEY.search(head)

        buf = head[start.end():]
        count = 0
        body = out + ".body"
        with open(body, "w", encoding="utf-8") as vec_fh:
            while True:
                last_end = 0
                for m in _ENTRY.finditer(buf):
                    word = json.loads(b'"' + m.group(1) + b'"')
                    comps = m.group(2).decode("ascii").split(",")[:dim]
                    last_end = m.end()
                    if re.search(r"\s", word) or len(comps) < dim:
                        continue
                    vec_fh.write(word + " " + " ".join(c.strip() for c in comps) + "\n")
                    count += 1
                more = fh.read(_CHUNK)
                if not more:
                    break
                buf = buf[last_end:] + more

    with open(out, "w", encoding="utf-8") as final_fh:
        final_fh.write(f"{count} {dim}\n")
        with open(body, "r", encoding="utf-8") as body_fh:
            shutil.copyfileobj(body_fh, final_fh)
    os.remove(body)
    print(f"wrote {count} x {dim} vectors to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
