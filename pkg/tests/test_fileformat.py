import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from endoalg.algebra import Algebra
from endoalg.catalog import fixture_algebras, lower_triangular, one_sided_order
from endoalg.errors import BadScalar, NonAssociative, ParseError
from endoalg.fileformat import (
    FamilySpec, load_document, parse_algebra_document, parse_algebra_file, parse_algebra_text, render_algebra,
)
from endoalg.scalars import ScalarRegime

from conftest import fixture_path


def test_shipped_lower_triangular_fixture():
    alg = parse_algebra_file(fixture_path("lower_triangular_2"))
    assert alg.dim == 3 and alg.is_unital
    assert alg == lower_triangular(2)


@pytest.mark.parametrize("stem", sorted(fixture_algebras()))
def test_every_fixture_parses_to_its_builtin(stem):
    assert parse_algebra_file(fixture_path(stem)) == fixture_algebras()[stem]


def test_literal_reading_fixture_is_rejected():
    with pytest.raises(NonAssociative) as info:
        parse_algebra_file(fixture_path("zemanek_literal"))
    assert "E12" in str(info.value)


def test_fixture_families_verify_on_demand():
    doc = load_document(fixture_path("lower_triangular_2"))
    assert [f.name for f in doc.families] == ["left_family", "right_family"]
    assert doc.verify_families("L") == ["right_family"]
    assert doc.verify_families("R") == ["left_family"]


def text_of(alg, **extra):
    doc = json.loads(render_algebra(alg))
    doc.update(extra)
    return json.dumps(doc, indent=2)


def test_unknown_label_is_a_parse_error_with_position():
    text = render_algebra(lower_triangular(2)).replace('"right": "E21"', '"right": "X"', 1)
    with pytest.raises(ParseError) as info:
        parse_algebra_text(text)
    assert info.value.line is not None and info.value.column is not None
    assert "'X'" in str(info.value)


def test_malformed_json_reports_position():
    with pytest.raises(ParseError) as info:
        parse_algebra_text('{"dim": 2,\n "scalar": }')
    assert info.value.line == 2


def test_non_associative_table():
    text = render_algebra(lower_triangular(2)).replace('[["E21", "1"]]', '[["E21", "2"]]', 1)
    with pytest.raises(NonAssociative):
        parse_algebra_text(text)


@pytest.mark.parametrize("bad, exc", [
    ({"scalar": "real"}, BadScalar),
    ({"scalar": {"prime_field": 4}}, BadScalar),
    ({"dim": 0}, ParseError),
    ({"basis": ["E11", "E11", "E22"]}, ParseError),
    ({"colour": "blue"}, ParseError),
])
def test_bad_headers(bad, exc):
    with pytest.raises((exc, ParseError)):
        parse_algebra_text(text_of(lower_triangular(2), **bad))


def test_bad_scalar_string():
    text = render_algebra(lower_triangular(2)).replace('[["E21", "1"]]', '[["E21", "1/0"]]', 1)
    with pytest.raises(ParseError):
        parse_algebra_text(text)


def test_missing_products_are_zero():
    doc = {"name": "z", "dim": 2, "scalar": "rational", "basis": ["a", "b"], "products": []}
    alg = parse_algebra_text(json.dumps(doc))
    assert alg.cube_is_zero() and alg.constants == ()


def test_prime_field_round_trip():
    alg = lower_triangular(2, ScalarRegime.prime_field(5))
    assert parse_algebra_text(render_algebra(alg)) == alg


def test_families_round_trip():
    fams = (FamilySpec("f", (1, 0, 0), (0, 1, 0), "ray"),)
    doc = parse_algebra_document(render_algebra(lower_triangular(2), fams))
    assert doc.families[0].domain == "ray"
    assert doc.family("f").domain == ("ray",)


@given(st.sampled_from(sorted(fixture_algebras()) + ["one_sided_order"]),
       st.fractions(min_value=-9, max_value=9, max_denominator=7).filter(lambda x: x != 0))
def test_render_parse_round_trip(stem, scale):
    alg = fixture_algebras().get(stem) or one_sided_order()
    # rescaling the basis keeps associativity and exercises p/q strings
    scaled = Algebra(alg.dim, tuple((i, j, k, v * scale) for i, j, k, v in alg.constants), alg.regime, alg.name,
                     alg.labels)
    assert parse_algebra_text(render_algebra(scaled)) == scaled
    assert render_algebra(parse_algebra_text(render_algebra(scaled))) == render_algebra(scaled)
