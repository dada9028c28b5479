import pytest
from sympy import Rational

from utils import corpus
from utils.errors import (InvalidField, NonQuadraticRelation, PresentationSyntaxError,
                          UnknownGenerator)
from utils.exactlin import FieldSpec
from utils.freetensor import NCPoly
from utils.presentation import parse_presentation, render_poly, render_presentation

QQ_ = FieldSpec.rationals()

EX0 = """\
# k[x,y,z]/(x^2, xy, y^2)
field: QQ
generators: x, y, z
commutative: true
relations: x*x, x*y   # continued below
relations: y*y
"""


def test_parse_matches_builder():
    pres = parse_presentation(EX0)
    assert pres == corpus.example_zero()
    assert pres.commutative
    assert pres.generator_names == ("x", "y", "z")


def test_unicode_minus_is_accepted():
    ascii_ = parse_presentation("generators: x, y\nrelations: x*y - y*x\n")
    unicode_ = parse_presentation("generators: x, y\nrelations: x*y − y*x\n")
    assert ascii_ == unicode_
    assert len(ascii_.relations) == 1


def test_coefficients_and_zero_relations():
    pres = parse_presentation("generators: x, y\nrelations: 2*x*y + 3*y*y, x*x - x*x\n")
    assert len(pres.relations) == 1
    assert pres.relations[0].terms.keys() == {(0, 1), (1, 1)}


def test_field_line_and_override():
    text = "field: GF 7\ngenerators: x, y\nrelations: x*y\n"
    assert str(parse_presentation(text).field) == "GF 7"
    assert parse_presentation(text, FieldSpec.rationals()).field == QQ_
    assert parse_presentation("generators: x\n").field == QQ_


@pytest.mark.parametrize("text,error", [
    ("generators: x, y\nrelations: x*w\n", UnknownGenerator),
    ("generators: x\nrelations: x*x*x\n", NonQuadraticRelation),
    ("generators: x\nrelations: x\n", NonQuadraticRelation),
    ("field: GF x\ngenerators: x\n", InvalidField),
    ("relations: x*x\n", PresentationSyntaxError),
    ("generators: x, x\n", PresentationSyntaxError),
    ("generators: x\ngenerators: y\n", PresentationSyntaxError),
    ("generators: x\ncolour: red\n", PresentationSyntaxError),
    ("generators: x\ncommutative: maybe\n", PresentationSyntaxError),
    ("generators: x\njust text\n", PresentationSyntaxError),
])
def test_rejects_bad_input(text, error):
    with pytest.raises(error):
        parse_presentation(text)


def test_syntax_error_reports_position():
    with pytest.raises(PresentationSyntaxError) as info:
        parse_presentation("generators: x, y\nrelations: x*y x*x\n")
    assert info.value.line == 2
    assert info.value.column > len("relations:")


def test_non_quadratic_degree_is_reported():
    with pytest.raises(NonQuadraticRelation) as info:
        parse_presentation("generators: x\nrelations: x*x*x\n")
    assert info.value.degree == 3
    assert info.value.line == 2


def test_render_poly_clears_denominators():
    p = NCPoly(2, {(0, 0): QQ_.one, (0, 1): QQ_.scalar(Rational(2, 3))})
    assert render_poly(p, "xy", QQ_) == "3*x*x + 2*x*y"
    q = NCPoly(2, {(0, 1): QQ_.one, (1, 0): -QQ_.one})
    assert render_poly(q, "xy", QQ_) == "x*y - y*x"
    assert render_poly(NCPoly(2, {}), "xy", QQ_) == "0"


def test_render_poly_over_prime_field():
    gf7 = FieldSpec.prime_field(7)
    q = NCPoly(2, {(0, 1): gf7.one, (1, 0): -gf7.one})
    assert render_poly(q, "xy", gf7) == "x*y + 6*y*x"


@pytest.mark.parametrize("name", ["example_zero", "fibonacci", "exterior2", "noncommutative_xy"])
def test_render_round_trip(name):
    pres = corpus.load(name)
    again = parse_presentation(render_presentation(pres))
    assert again.fingerprint() == pres.fingerprint()
    assert again.commutative == pres.commutative
