#!/usr/bin/env python3
"""Write the canonical fixture tables and pairs files under tests/data/.

Three real-world infobox tables exercised throughout the test suite: a stock
exchange (6 rows), a chemical element (33 rows, long enough to overflow the
default token budget), and a historical person (4 rows, the definition-
augmentation fixture). Values are kept verbatim, including double spaces
inside some cells — the renderer must preserve them.
"""

from __future__ import annotations

import json
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"

NYSE_ROWS = [
    ("Type", ["Stock exchange"]),
    ("Location", ["New York City, New York, U.S."]),
    ("Founded", ["May 17, 1792; 226 years ago"]),
    ("Currency", ["United States dollar"]),
    ("No. of listings", ["2,400"]),
    ("Volume", ["US$20.161 trillion (2011)"]),
]

FLUORINE_ROWS = [
    ("pronunciation", ["(FLOOR-een, -in, -yn) and (FLOR-een, -in, -yn)"]),
    ("allotropes", ["alpha, beta"]),
    (
        "appearance",
        ["gas: very pale yellow , liquid: bright yellow , solid: alpha is opaque, beta is transparent"],
    ),
    ("standard atomic weight ar, std(f)", ["18.998403163(6)"]),
    ("atomic number (z)", ["9"]),
    ("group", ["group 17 (halogens)"]),
    ("period", ["period 2"]),
    ("block", ["p-block"]),
    ("element category", ["Reactive nonmetal"]),
    ("electron configuration", ["[He] 2s 2  2p 5"]),
    ("electrons per shell", ["2, 7"]),
    ("phase at stp", ["gas"]),
    ("melting point", ["(F-2) 53.48 K (-219.67 °C, -363.41 °F)"]),
    ("boiling point", ["(F 2 ) 85.03 K (-188.11 °C, -306.60 °F)"]),
    ("density (at stp)", ["1.696 g/L"]),
    ("when liquid (at b.p.)", ["1.505 g/cm 3"]),
    ("triple point", ["53.48 K, 90 kPa"]),
    ("critical point", ["144.41 K, 5.1724 MPa"]),
    ("heat of vaporization", ["6.51 kJ/mol"]),
    (
        "molar heat capacity",
        ["C p : 31 J/(mol·K) (at 21.1 °C) , C v : 23 J/(mol·K) (at 21.1 °C)"],
    ),
    ("oxidation states", ["-1  (oxidizes oxygen)"]),
    ("electronegativity", ["Pauling scale: 3.98"]),
    (
        "ionization energies",
        ["1st: 1681 kJ/mol, 2nd: 3374 kJ/mol, 3rd: 6147 kJ/mol, (more)"],
    ),
    ("covalent radius", ["64 pm"]),
    ("van der waals radius", ["135 pm"]),
    ("natural occurrence", ["primordial"]),
    ("thermal conductivity", ["0.02591 W/(m·K)"]),
    ("magnetic ordering", ["diamagnetic (-1.2×10 -4 )"]),
    ("cas number", ["7782-41-4"]),
    (
        "naming",
        ["after the mineral fluorite, itself named after Latin  fluo  (to flow, in smelting)"],
    ),
    ("discovery", ["André-Marie Ampère (1810)"]),
    ("first isolation", ["Henri Moissan (June 26, 1886)"]),
    ("named by", ["Humphry Davy"]),
]

CAESAR_ROWS = [
    ("Born", ["12 or 13 July 100 BC Rome"]),
    ("Died", ["15 March 44 BC (aged 55) Rome"]),
    ("Resting place", ["Temple of Caesar, Rome"]),
    (
        "Spouse(s)",
        [
            "Cornelia  (84-69 BC; her death)",
            "Pompeia  (67-61 BC; divorced)",
            "Calpurnia  (59-44 BC; his death)",
        ],
    ),
]


def table_line(table_id: str, title: str, category: str, rows) -> str:
    payload = {
        "id": table_id,
        "title": title,
        "category": category,
        "rows": [{"key": key, "values": values} for key, values in rows],
    }
    return json.dumps(payload, ensure_ascii=False)


def pair_line(pair_id: str, table_id: str, hypothesis: str, label: str | None) -> str:
    payload = {"pair_id": pair_id, "table_id": table_id, "hypothesis": hypothesis}
    if label is not None:
        payload["label"] = label
    return json.dumps(payload, ensure_ascii=False)


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    (DATA / "nyse.jsonl").write_text(
        table_line("nyse", "New York Stock Exchange", "Organization", NYSE_ROWS) + "\n",
        encoding="utf-8",
    )
    (DATA / "fluorine.jsonl").write_text(
        table_line("fluorine", "Fluorine", "Chemical element", FLUORINE_ROWS) + "\n",
        encoding="utf-8",
    )
    (DATA / "caesar.jsonl").write_text(
        table_line("caesar", "Julius Caesar", "Person", CAESAR_ROWS) + "\n",
        encoding="utf-8",
    )
    (DATA / "nyse_pairs.jsonl").write_text(
        pair_line("nyse-h1", "nyse", "NYSE has fewer than 3,000 stocks listed.", "E") + "\n",
        encoding="utf-8",
    )
    (DATA / "fluorine_pairs.jsonl").write_text(
        pair_line("fluorine-h1", "fluorine", "Flourine was discovered in the 18th century.", "C")
        + "\n",
        encoding="utf-8",
    )
    (DATA / "caesar_pairs.jsonl").write_text(
        pair_line("caesar-h1", "caesar", "Julius Caesar was buried in Rome.", "E") + "\n",
        encoding="utf-8",
    )
    print(f"fixtures written under {DATA}")


if __name__ == "__main__":
    main()
