"""Renderer: entity typing, template precedence, and golden sentences."""

from __future__ import annotations

import json
import random

import pytest

from tabprem import (
    EntityType,
    MissingCategory,
    RenderMode,
    RowEntry,
    StageTag,
    TableDocument,
    Template,
    TemplateRegistry,
    infer_entity_type,
    load_registry,
    render_category_sentence,
    render_paragraph,
    render_row,
    render_struc,
    resolve_template,
    seed_registry,
)

# (title, category, key, values, expected typed sentence) — each pairs a
# universal-template baseline with its typed rendering; expectations are
# frozen literals.
TYPED_GOLDENS = [
    (
        "Tukwila International Boulevard Station",
        "Bus/Train Lines",
        "Disabled access",
        ("Yes",),
        "Tukwila International Boulevard Station has Disabled access.",
    ),
    (
        "Brokeback Mountain",
        "Movie",
        "Box office",
        ("$178.1 million",),
        "In the Box office, Brokeback Mountain made $178.1 million.",
    ),
    (
        "Cusco",
        "City",
        "Total",
        ("435,114",),
        "The Total area of Cusco is 435,114.",
    ),
    (
        "Et in Arcadia ego",
        "Painting",
        "Also known as",
        ("Les Bergers d'Arcadie",),
        "Et in Arcadia ego is Also known as Les Bergers d'Arcadie.",
    ),
    (
        "Jesse Ramsden",
        "Person",
        "Died",
        ("5 November 1800 (1800-11-05)  (aged 65)  Brighton, Sussex",),
        "Jesse Ramsden Died on 5 November 1800 (1800-11-05)  (aged 65)  Brighton, Sussex.",
    ),
]


@pytest.mark.parametrize("title,category,key,values,expected", TYPED_GOLDENS)
def test_typed_template_goldens(registry, title, category, key, values, expected):
    table = TableDocument(
        id="t", title=title, category=category, rows=(RowEntry(key=key, values=values, index=0),)
    )
    rendered = render_row(table.rows[0], table, registry)
    assert rendered.sentence == expected
    assert rendered.stage_tag is StageTag.BPR
    assert rendered.key == key


@pytest.mark.parametrize("title,category,key,values,expected", TYPED_GOLDENS)
def test_universal_fallback_for_same_rows(title, category, key, values, expected):
    # With an empty registry every row falls back to the universal pattern.
    table = TableDocument(
        id="t", title=title, category=category, rows=(RowEntry(key=key, values=values, index=0),)
    )
    rendered = render_row(table.rows[0], table, TemplateRegistry(templates=()))
    assert rendered.sentence == f"The {key} of {title} are {', '.join(values)}."
    assert rendered.stage_tag is StageTag.UNIVERSAL


def _row(*values: str) -> RowEntry:
    return RowEntry(key="k", values=values, index=0)


def test_entity_type_cascade():
    assert infer_entity_type(_row("Yes")) is EntityType.BOOL
    assert infer_entity_type(_row("no")) is EntityType.BOOL
    assert infer_entity_type(_row("US$20.161 trillion (2011)")) is EntityType.MONEY
    assert infer_entity_type(_row("$178.1 million")) is EntityType.MONEY
    assert infer_entity_type(_row("May 17, 1792; 226 years ago")) is EntityType.DATE
    assert infer_entity_type(_row("15 March 44 BC (aged 55) Rome")) is EntityType.DATE
    assert infer_entity_type(_row("2,400")) is EntityType.CARDINAL
    assert infer_entity_type(_row("435,114")) is EntityType.CARDINAL
    assert infer_entity_type(_row("red, green, blue, cyan")) is EntityType.SEQUENCE
    assert infer_entity_type(_row("Stock exchange")) is EntityType.STRING


def test_entity_type_precedence_is_first_match():
    # BOOL beats everything; MONEY beats DATE even when a year is present.
    assert infer_entity_type(_row("true")) is EntityType.BOOL
    assert infer_entity_type(_row("$5 in 1999")) is EntityType.MONEY
    # Multiple values type as one comma-joined unit: three single items
    # become a SEQUENCE once joined.
    assert infer_entity_type(_row("red", "green", "blue")) is EntityType.SEQUENCE


def test_resolve_template_precedence_tiers():
    exact = Template(pattern="EXACT {t} {k} {v}.", category="Movie", key="Box office", etype="*", priority=0, order=0)
    cat_type = Template(pattern="CATTYPE {t} {k} {v}.", category="Movie", key="*", etype="MONEY", priority=5, order=1)
    type_only = Template(pattern="TYPE {t} {k} {v}.", category="*", key="*", etype="MONEY", priority=9, order=2)
    registry = TemplateRegistry(templates=(type_only, cat_type, exact))
    chosen = resolve_template(registry, "Movie", "Box office", EntityType.MONEY)
    assert chosen is exact
    # Remove the exact tier: (category, etype) must beat etype-only even at
    # lower priority, because tier dominates priority.
    registry2 = TemplateRegistry(templates=(type_only, cat_type))
    assert resolve_template(registry2, "Movie", "Box office", EntityType.MONEY) is cat_type


def test_resolve_template_priority_then_file_order():
    low = Template(pattern="LOW {k} {v}.", category="*", key="*", etype="DATE", priority=1, order=0)
    high = Template(pattern="HIGH {k} {v}.", category="*", key="*", etype="DATE", priority=7, order=1)
    tied = Template(pattern="TIED {k} {v}.", category="*", key="*", etype="DATE", priority=7, order=2)
    registry = TemplateRegistry(templates=(low, high, tied))
    assert resolve_template(registry, "X", "Y", EntityType.DATE) is high


def test_category_sentence_article_choice():
    org = TableDocument(
        id="t", title="New York Stock Exchange", category="Organization",
        rows=(RowEntry(key="k", values=("v",), index=0),),
    )
    person = TableDocument(
        id="t", title="Julius Caesar", category="Person",
        rows=(RowEntry(key="k", values=("v",), index=0),),
    )
    assert render_category_sentence(org).sentence == "New York Stock Exchange is an Organization."
    assert render_category_sentence(person).sentence == "Julius Caesar is a Person."
    assert render_category_sentence(org).stage_tag is StageTag.CATEGORY
    assert render_category_sentence(org).source_index == -1


def test_category_sentence_requires_category():
    table = TableDocument(id="t", title="T", category="", rows=(RowEntry(key="k", values=("v",), index=0),))
    with pytest.raises(MissingCategory):
        render_category_sentence(table)


def test_nyse_universal_paragraph_golden(nyse_table, registry):
    paragraph = render_paragraph(nyse_table, registry, RenderMode.UNIVERSAL)
    sentences = [s.sentence for s in paragraph.sentences]
    assert sentences[0] == "The Type of New York Stock Exchange are Stock exchange."
    assert sentences == [
        "The Type of New York Stock Exchange are Stock exchange.",
        "The Location of New York Stock Exchange are New York City, New York, U.S.",
        "The Founded of New York Stock Exchange are May 17, 1792; 226 years ago.",
        "The Currency of New York Stock Exchange are United States dollar.",
        "The No. of listings of New York Stock Exchange are 2,400.",
        "The Volume of New York Stock Exchange are US$20.161 trillion (2011).",
    ]
    assert len(paragraph.sentences) == len(nyse_table.rows)


def test_nyse_bpr_paragraph_golden(nyse_table, registry):
    paragraph = render_paragraph(nyse_table, registry, RenderMode.BPR)
    sentences = [s.sentence for s in paragraph.sentences]
    assert sentences == [
        "New York Stock Exchange is an Organization.",
        "The Type of New York Stock Exchange are Stock exchange.",
        "The Location of New York Stock Exchange are New York City, New York, U.S.",
        "New York Stock Exchange was Founded on May 17, 1792; 226 years ago.",
        "The Currency of New York Stock Exchange are United States dollar.",
        "The No. of listings of New York Stock Exchange are 2,400.",
        "The Volume of New York Stock Exchange are US$20.161 trillion (2011).",
    ]
    assert len(paragraph.sentences) == len(nyse_table.rows) + 1
    assert paragraph.sentences[0].stage_tag is StageTag.CATEGORY


def test_nyse_struc_golden(nyse_table):
    assert render_struc(nyse_table) == (
        "key Type : value Stock exchange ; "
        "key Location : value New York City, New York, U.S. ; "
        "key Founded : value May 17, 1792; 226 years ago ; "
        "key Currency : value United States dollar ; "
        "key No. of listings : value 2,400 ; "
        "key Volume : value US$20.161 trillion (2011)"
    )


def test_render_struc_row_subset(nyse_table):
    subset = [nyse_table.rows[0], nyse_table.rows[4]]
    assert render_struc(nyse_table, rows=subset) == (
        "key Type : value Stock exchange ; key No. of listings : value 2,400"
    )


def test_terminal_period_not_doubled(registry):
    # A value that already ends in "." must not yield "..".
    table = TableDocument(
        id="t", title="T", category="C",
        rows=(RowEntry(key="Location", values=("New York City, New York, U.S.",), index=0),),
    )
    sentence = render_row(table.rows[0], table, registry).sentence
    assert sentence.endswith("U.S.")
    assert not sentence.endswith("..")


def test_placeholder_hygiene_random_tables(registry):
    rng = random.Random(2024)
    values_pool = ["Yes", "$3 million", "May 17, 1792", "1,234", "a, b, c, d", "plain text"]
    categories = ["Organization", "Movie", "City", "Person", "Painting", "Elephant"]
    for i in range(100):
        rows = tuple(
            RowEntry(key=f"Key {j}", values=(rng.choice(values_pool),), index=j)
            for j in range(rng.randint(1, 8))
        )
        table = TableDocument(id=f"t{i}", title=f"Title {i}", category=rng.choice(categories), rows=rows)
        for mode in (RenderMode.UNIVERSAL, RenderMode.BPR):
            paragraph = render_paragraph(table, registry, mode)
            for rendered in paragraph.sentences:
                assert "{t}" not in rendered.sentence
                assert "{k}" not in rendered.sentence
                assert "{v}" not in rendered.sentence
                assert rendered.sentence.endswith(".")
            expected = len(rows) + (1 if mode is RenderMode.BPR else 0)
            assert len(paragraph.sentences) == expected


def test_render_determinism(nyse_table, fluorine_table, registry):
    for table in (nyse_table, fluorine_table):
        a = render_paragraph(table, registry, RenderMode.BPR).text
        b = render_paragraph(table, registry, RenderMode.BPR).text
        assert a == b


def test_paragraph_text_joins_with_single_space(nyse_table, registry):
    paragraph = render_paragraph(nyse_table, registry, RenderMode.UNIVERSAL)
    assert paragraph.text == " ".join(s.sentence for s in paragraph.sentences)


def test_load_registry_round_trips_seed(tmp_path):
    # Re-writing the seed templates to a file and loading them back must
    # reproduce the same registry contents in the same order.
    seed = seed_registry()
    lines = [
        json.dumps(
            {
                "category": template.category,
                "key": template.key,
                "etype": template.etype,
                "pattern": template.pattern,
                "priority": template.priority,
            }
        )
        for template in seed.templates
    ]
    path = tmp_path / "registry.jsonl"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    loaded = load_registry(path)
    assert [t.pattern for t in loaded.templates] == [t.pattern for t in seed.templates]
    assert [t.tier() for t in loaded.templates] == [t.tier() for t in seed.templates]
