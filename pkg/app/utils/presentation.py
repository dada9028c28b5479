# -------------------------------------------------------------
# utils/presentation.py  ·  presentation files ⇄ QuadraticPresentation
# -------------------------------------------------------------
"""
Key–value text format, one key per line, ``#`` starts a comment::

    field: QQ                 # or GF 32003
    generators: x, y, z
    commutative: true
    relations: x*x, x*y, y*y  # may repeat over several lines

Relations are integer-coefficient polynomials in the generators with
products written as ``*``.
"""
import functools
import logging

import pyparsing as pp
from sympy import Rational, ilcm

from utils.algebra import QuadraticPresentation
from utils.errors import (InvalidField, NonQuadraticRelation, PresentationSyntaxError,
                          UnknownGenerator)
from utils.exactlin import FieldSpec
from utils.freetensor import NCPoly

log = logging.getLogger(__name__)

# ── grammar ------------------------------------------------------
_IDENT = pp.Word(pp.alphas, pp.alphanums + "_")
_INT = pp.Word(pp.nums)
_MINUS = pp.Literal("-") | pp.Literal(chr(0x2212))
_MINUS.set_parse_action(lambda t: ["-"])
_PRODUCT = pp.Group(pp.DelimitedList(_INT | _IDENT, delim="*"))
_FIRST = pp.Group(pp.Optional(_MINUS, "+") + _PRODUCT)
_OTHER = pp.Group((pp.Literal("+") | _MINUS) + _PRODUCT)
_POLY = pp.Group(_FIRST + pp.ZeroOrMore(_OTHER))
_RELATIONS = pp.Optional(pp.DelimitedList(_POLY, delim=","))
_NAMES = pp.DelimitedList(_IDENT, delim=",")
_BOOL = pp.CaselessKeyword("true") | pp.CaselessKeyword("false")

_KEYS = ("field", "generators", "commutative", "relations")


def _parse_value(expr: pp.ParserElement, text: str, line: int, offset: int) -> pp.ParseResults:
    try:
        return expr.parse_string(text, parse_all=True)
    except pp.ParseException as exc:
        raise PresentationSyntaxError(exc.msg, line, offset + exc.col) from None


def parse_presentation(text: str, field: FieldSpec | None = None) -> QuadraticPresentation:
    """Parse a presentation file; ``field`` overrides the file's ``field:`` line."""
    values: dict[str, tuple[str, int, int]] = {}
    relation_lines: list[tuple[str, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if ":" not in body:
            raise PresentationSyntaxError("expected 'key: value'", lineno, len(body) - len(body.lstrip()) + 1)
        key, value = body.split(":", 1)
        key = key.strip().lower()
        offset = len(body.split(":", 1)[0]) + 1
        if key not in _KEYS:
            raise PresentationSyntaxError(f"unknown key {key!r}", lineno, 1)
        if key == "relations":
            relation_lines.append((value, lineno, offset))
        elif key in values:
            raise PresentationSyntaxError(f"duplicate key {key!r}", lineno, 1)
        else:
            values[key] = (value, lineno, offset)

    if "generators" not in values:
        raise PresentationSyntaxError("missing 'generators:' line", 1, 1)
    names = list(_parse_value(_NAMES, *values["generators"]))
    if len(set(names)) != len(names):
        raise PresentationSyntaxError(f"generator names are not distinct: {names}", values["generators"][1], 1)
    index = {n: i for i, n in enumerate(names)}

    if field is None:
        text_field, lineno, _ = values.get("field", ("QQ", 0, 0))
        try:
            field = FieldSpec.parse(text_field)
        except InvalidField as exc:
            raise InvalidField(f"line {lineno}: {exc}") from None

    commutative = False
    if "commutative" in values:
        commutative = _parse_value(_BOOL, *values["commutative"])[0].lower() == "true"

    relations = []
    for value, lineno, offset in relation_lines:
        for poly in _parse_value(_RELATIONS, value, lineno, offset):
            rel = _relation(poly, index, field, lineno)
            if rel is not None:
                relations.append(rel)
    pres = QuadraticPresentation.create(field, names, relations, commutative)
    log.info("[parse] %d generators, %d relations read, %d after normalization",
             len(names), len(relations), len(pres.relations))
    return pres


def _relation(poly: pp.ParseResults, index: dict[str, int], field: FieldSpec, line: int) -> NCPoly | None:
    terms: dict[tuple[int, ...], object] = {}
    for sign, factors in poly:
        coeff, word = 1, []
        for f in factors:
            if f.isdigit():
                coeff *= int(f)
            elif f in index:
                word.append(index[f])
            else:
                raise UnknownGenerator(f, line)
        if len(word) != 2:
            raise NonQuadraticRelation("*".join(factors), len(word), line)
        w = tuple(word)
        terms[w] = terms.get(w, field.zero) + field.scalar(-coeff if sign == "-" else coeff)
    rel = NCPoly(2, terms)
    return None if rel.is_zero() else rel


# ── rendering ----------------------------------------------------
def render_poly(p: NCPoly, names, field: FieldSpec, sep: str = "*") -> str:
    """Integer-coefficient text of p (denominators cleared over QQ)."""
    if p.is_zero():
        return "0"
    coeffs = {w: field.to_python(c) for w, c in p.terms.items()}
    if field.kind == "QQ":
        fracs = {w: Rational(c) for w, c in coeffs.items()}
        lcm = functools.reduce(ilcm, (f.q for f in fracs.values()), 1)
        coeffs = {w: int(f * lcm) for w, f in fracs.items()}
    out = []
    for w in sorted(coeffs):
        c = coeffs[w]
        word = sep.join(names[i] for i in w)
        mag = abs(c) if field.kind == "QQ" else c
        body = word if mag == 1 else f"{mag}*{word}"
        if not out:
            out.append(f"-{body}" if c < 0 and field.kind == "QQ" else body)
        else:
            out.append(f"- {body}" if c < 0 and field.kind == "QQ" else f"+ {body}")
    return " ".join(out)


def render_presentation(pres: QuadraticPresentation) -> str:
    names = pres.generator_names
    lines = [
        f"field: {pres.field}",
        f"generators: {', '.join(names)}",
        f"commutative: {'true' if pres.commutative else 'false'}",
    ]
    if pres.relations:
        lines.append("relations: " + ", ".join(render_poly(q, names, pres.field) for q in pres.relations))
    return "\n".join(lines) + "\n"
