# -------------------------------------------------------------
# utils/corpus.py  ·  named presentations used by the checks and tests
# -------------------------------------------------------------
import itertools
import logging

import numpy as np

from config import CORPUS_DIR
from utils.algebra import QuadraticPresentation
from utils.exactlin import FieldSpec
from utils.freetensor import NCPoly
from utils.presentation import parse_presentation

log = logging.getLogger(__name__)


def names(d: int) -> list[str]:
    return list("xyzw"[:d]) if d <= 4 else [f"x{i}" for i in range(1, d + 1)]


def _monomials(pairs, field: FieldSpec) -> list[NCPoly]:
    return [NCPoly(2, {(i, j): field.one}) for i, j in pairs]


def load(name: str, field: FieldSpec | None = None) -> QuadraticPresentation:
    path = CORPUS_DIR / f"{name}.pres"
    log.info("[corpus] loading %s", path.name)
    return parse_presentation(path.read_text(encoding="utf-8"), field)


def available() -> list[str]:
    return sorted(p.stem for p in CORPUS_DIR.glob("*.pres"))


# ── builders -----------------------------------------------------
def example_zero(field: FieldSpec | None = None) -> QuadraticPresentation:
    """k[x,y,z]/(x², xy, y²)."""
    field = field or FieldSpec.rationals()
    return QuadraticPresentation.create(field, names(3), _monomials([(0, 0), (0, 1), (1, 1)], field), True)


def fibonacci(field: FieldSpec | None = None) -> QuadraticPresentation:
    """k[x,y,z]/(xy, xz)."""
    field = field or FieldSpec.rationals()
    return QuadraticPresentation.create(field, names(3), _monomials([(0, 1), (0, 2)], field), True)


def squarefree(d: int, field: FieldSpec | None = None) -> QuadraticPresentation:
    """k[x_1..x_d]/(x_i²)."""
    field = field or FieldSpec.rationals()
    return QuadraticPresentation.create(field, names(d), _monomials([(i, i) for i in range(d)], field), True)


def polynomial(d: int, field: FieldSpec | None = None) -> QuadraticPresentation:
    field = field or FieldSpec.rationals()
    return QuadraticPresentation.create(field, names(d), [], True)


def free(d: int, field: FieldSpec | None = None) -> QuadraticPresentation:
    field = field or FieldSpec.rationals()
    return QuadraticPresentation.create(field, names(d), [], False)


def exterior(d: int, field: FieldSpec | None = None) -> QuadraticPresentation:
    """k⟨x_1..x_d⟩/(x_i², x_i x_j + x_j x_i)."""
    field = field or FieldSpec.rationals()
    one = field.one
    rels = [NCPoly(2, {(i, i): one}) for i in range(d)]
    rels += [NCPoly(2, {(i, j): one, (j, i): one}) for i, j in itertools.combinations(range(d), 2)]
    return QuadraticPresentation.create(field, names(d), rels, False)


def noncommutative_monomial(field: FieldSpec | None = None) -> QuadraticPresentation:
    """k⟨x,y⟩/(xy)."""
    field = field or FieldSpec.rationals()
    return QuadraticPresentation.create(field, names(2), _monomials([(0, 1)], field), False)


def random_monomial(rng: np.random.Generator, d: int,
                    field: FieldSpec | None = None) -> QuadraticPresentation:
    """Commutative quotient by a random nonempty set of quadratic monomials x_i x_j (i ≤ j)."""
    field = field or FieldSpec.rationals()
    pool = list(itertools.combinations_with_replacement(range(d), 2))
    mask = rng.random(len(pool)) < 0.5
    if not mask.any():
        mask[rng.integers(len(pool))] = True
    chosen = [p for p, keep in zip(pool, mask) if keep]
    return QuadraticPresentation.create(field, names(d), _monomials(chosen, field), True)
