from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

import fixtures
from sesqui.cellstruct import materialize
from sesqui.constructions import codiscrete, discrete
from sesqui.errors import ParseError, ResolveError
from sesqui.naturalize import naturalize
from sesqui.specio import loads, parse, read, serialize

CORPUS = sorted((Path(__file__).parent / "corpus").glob("*.sesq"))

CLASH = """category {
  object A
  morphism f : A -> A
  morphism i : A -> A
  id A = i
  compose i . i = i
  compose f . i = f
  compose i . f = f
  compose f . f = f
}
cells {
  cell x : i => f
  cell y : i => i
  plus x + y = x
  plus y + x = x
}
"""


def test_corpus_present():
    assert len(CORPUS) >= 10


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_round_trip_is_bit_exact(path):
    text = path.read_text()
    assert serialize(parse(text)) == text
    read(path)


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_reformatting_is_canonical(path):
    # shuffled whitespace and a comment must not change the canonical form
    text = path.read_text()
    noisy = "# header\n" + text.replace("\n  ", "\n\t  ").replace(" {", "   {")
    assert serialize(parse(noisy)) == text


def table_structures():
    yield fixtures.z2_cells()
    yield fixtures.s3_table()
    yield materialize(discrete(fixtures.diamond()))
    yield materialize(codiscrete(fixtures.poset(3)))
    yield naturalize(fixtures.s3_table())[0]


@pytest.mark.parametrize("T", list(table_structures()))
def test_structure_round_trip_keeps_ids(T):
    back = loads(serialize(T)).structure
    assert back.cell_types == T.cell_types
    assert back.zeros == T.zeros
    assert back.vsums == T.vsums
    assert back.lwhisks == T.lwhisks
    assert back.rwhisks == T.rwhisks
    assert serialize(back) == serialize(T)


def test_naturalized_s3_has_two_cells():
    text = serialize(naturalize(fixtures.s3_table())[0])
    assert sum(line.strip().startswith("cell ") for line in text.splitlines()) == 2


def test_discrete_structure_emits_cells_block():
    text = serialize(discrete(fixtures.terminal()))
    assert "cells {" in text
    assert "cell z_idA : idA => idA" in text


def test_empty_block():
    assert serialize(parse("category{}")) == "category { }\n"


def test_typing_clash_names_both_sides():
    with pytest.raises(ResolveError) as err:
        loads(CLASH)
    (diag,) = err.value.diagnostics
    assert (diag.span.line, diag.span.col) == (15, 3)
    assert "dom(y) = i" in diag.message and "cod(x) = f" in diag.message


@pytest.mark.parametrize("text, where", [
    ("category {\n object A\n morphism f : A -> B\n}\n", "3:"),
    ("categ", "1:1"),
    ("category {\n object A\n", "3:"),
    (b"category { \xff }", "1:12"),
])
def test_diagnostics_carry_position(text, where):
    with pytest.raises(ParseError) as err:
        loads(text)
    assert str(err.value).startswith(where)


@settings(max_examples=300)
@given(st.binary(max_size=200))
def test_random_bytes_only_raise_parse_errors(data):
    try:
        loads(data)
    except ParseError as exc:
        assert exc.diagnostics


@settings(max_examples=200)
@given(st.sampled_from(CORPUS), st.integers(0, 10_000), st.integers(1, 8), st.text(max_size=4))
def test_mangled_corpus_only_raises_parse_errors(path, at, cut, junk):
    text = path.read_text()
    at %= len(text)
    try:
        loads(text[:at] + junk + text[at + cut:])
    except ParseError as exc:
        assert exc.diagnostics
