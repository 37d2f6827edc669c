"""Parsing of WordNet index/data files, gloss splitting, and base forms.

Runs against tests/fixtures/wndb_mini/, a verbatim excerpt of the real
WordNet 3.1 noun database (see scripts/make_wndb_mini.py).
"""

import pytest

pytest.importorskip("ctxsidecar")

from ctxsidecar.wndb import WordNetDb, split_gloss


@pytest.fixture()
def wndb(wndb_mini_dir):
    return WordNetDb(wndb_mini_dir)


def test_volume_has_six_noun_senses(wndb):
    synsets = wndb.synsets("volume")
    assert len(synsets) == 6
    definitions = [s.definition for s in synsets]
    assert "the amount of 3-dimensional space occupied by an object" in definitions
    # Sense order is the file's order: the spatial sense is listed first.
    assert definitions[0] == "the amount of 3-dimensional space occupied by an object"
    assert all(s.pos == "n" for s in synsets)


def test_examples_are_separated_from_definitions(wndb):
    spatial = wndb.synsets("volume")[0]
    assert spatial.examples == ("the gas expanded to twice its original volume",)
    assert '"' not in spatial.definition


def test_multi_segment_definition_survives(wndb):
    first = wndb.synsets("object")[0]
    assert first.definition == "a tangible and visible entity; an entity that can cast a shadow"


def test_synset_words_use_spaces(wndb):
    words = [w for s in wndb.synsets("stock exchange") for w in s.words]
    assert "stock exchange" in words
    assert not any("_" in w for w in words)


def test_morphy_detaches_plural_suffix(wndb):
    assert wndb.morphy("volumes") == ["volume"]
    assert wndb.morphy("Volumes") == ["volume"]  # case-folded
    assert [s.definition for s in wndb.synsets("volumes")] == [
        s.definition for s in wndb.synsets("volume")
    ]


def test_morphy_exact_match_comes_first(wndb):
    assert wndb.morphy("volume") == ["volume"]
    assert wndb.morphy("books")[0] == "book"


def test_multiword_lookup_uses_underscores(wndb):
    assert wndb.synsets("stock exchange")
    assert wndb.synsets("  Stock   Exchange  ") == []  # inner runs are not collapsed
    assert wndb.synsets("stock exchange") == wndb.synsets("stock exchange")


def test_absent_lemma_returns_empty(wndb):
    assert wndb.synsets("resting place") == []
    assert wndb.synsets("zzqqxyzzy") == []
    assert wndb.morphy("zzqqxyzzy") == []


def test_missing_directory_raises():
    with pytest.raises(FileNotFoundError):
        WordNetDb("does/not/exist")


def test_unknown_pos_rejected(wndb):
    with pytest.raises(ValueError):
        wndb.synsets("volume", pos="x")


def test_split_gloss_variants():
    assert split_gloss("a simple one") == ("a simple one", ())
    assert split_gloss('a def; "an example"') == ("a def", ("an example",))
    assert split_gloss('part one; part two; "ex one"; "ex two"') == (
        "part one; part two",
        ("ex one", "ex two"),
    )
    assert split_gloss('"only an example"') == ("", ("only an example",))
    assert split_gloss("") == ("", ())
