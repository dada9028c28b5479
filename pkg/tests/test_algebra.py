from math import comb

import pytest

from utils import corpus
from utils.algebra import GradedAlgebra, QuadraticPresentation
from utils.errors import DegreeCapExceeded, NonQuadraticRelation
from utils.exactlin import FieldSpec
from utils.freetensor import NCPoly

QQ_ = FieldSpec.rationals()
ONE = QQ_.one


@pytest.mark.parametrize("pres,dims", [
    (corpus.example_zero(), [1, 3, 3, 3, 3, 3, 3]),
    (corpus.fibonacci(), [1, 3, 4, 5, 6, 7, 8]),
    (corpus.polynomial(3), [comb(n + 2, 2) for n in range(7)]),
    (corpus.free(2), [2 ** n for n in range(7)]),
    (corpus.exterior(3), [1, 3, 3, 1, 0, 0, 0]),
    (corpus.squarefree(4), [1, 4, 6, 4, 1, 0, 0]),
    (corpus.noncommutative_monomial(), [1, 2, 3, 4, 5, 6, 7]),
])
def test_hilbert_function(pres, dims):
    assert GradedAlgebra.build(pres, 6).dims() == dims


@pytest.mark.parametrize("pres", [
    corpus.example_zero(),
    corpus.fibonacci(),
    corpus.exterior(3),
    corpus.noncommutative_monomial(),
    QuadraticPresentation.create(QQ_, "xy", [NCPoly(2, {(0, 1): ONE, (1, 0): 2 * ONE, (1, 1): -ONE})]),
], ids=["ex0", "fibonacci", "exterior3", "nc_xy", "mixed"])
def test_incremental_build_matches_direct(pres):
    inc = GradedAlgebra.build(pres, 5, "incremental")
    direct = GradedAlgebra.build(pres, 5, "direct")
    for n in range(6):
        assert inc.basis(n) == direct.basis(n)
        assert inc.reduction_map(n) == direct.reduction_map(n)


def test_relation_rank_matches_subspace():
    A = GradedAlgebra.build(corpus.fibonacci(), 4)
    for n in range(5):
        assert A.relation_subspace(n).rows == A.relation_rank(n)


def test_commutative_flag_adds_commutators():
    assert len(corpus.polynomial(3).relations) == 3
    assert len(corpus.example_zero().relations) == 6


def test_dependent_relations_are_dropped():
    xx = NCPoly(2, {(0, 0): ONE})
    xy = NCPoly(2, {(0, 1): ONE})
    a = QuadraticPresentation.create(QQ_, "xy", [xx, xy, xx + xy])
    b = QuadraticPresentation.create(QQ_, "xy", [xy, xx + xy])
    assert len(a.relations) == 2
    assert a == b
    assert a.fingerprint() == b.fingerprint()


def test_fingerprint_depends_on_field():
    assert corpus.fibonacci().fingerprint() != corpus.fibonacci(FieldSpec.prime_field(7)).fingerprint()


def test_rejects_non_quadratic():
    with pytest.raises(NonQuadraticRelation):
        QuadraticPresentation.create(QQ_, "x", [NCPoly(3, {(0, 0, 0): ONE})])


def test_rejects_repeated_names():
    with pytest.raises(ValueError):
        QuadraticPresentation.create(QQ_, ["x", "x"], [])


def test_degree_cap():
    A = GradedAlgebra.build(corpus.example_zero(), 3)
    with pytest.raises(DegreeCapExceeded):
        A.hilbert(4)


def test_structure_constants_ex0():
    A = GradedAlgebra.build(corpus.example_zero(), 4)
    x, y, z = 0, 1, 2
    assert A.multiply(1, x, 1, x) == {}
    assert A.multiply(1, x, 1, y) == {}
    assert A.multiply(1, z, 1, x) == A.multiply(1, x, 1, z)
    assert A.multiply(1, z, 1, x) != {}


def test_reduce_uses_commutativity():
    A = GradedAlgebra.build(corpus.polynomial(2), 3)
    yx = NCPoly(2, {(1, 0): ONE})
    xy = NCPoly(2, {(0, 1): ONE})
    assert A.reduce(yx) == A.reduce(xy)
    assert A.reduce(yx + xy.scale(-1)) == {}


def test_multiplication_is_associative():
    A = GradedAlgebra.build(corpus.fibonacci(), 5)
    for u in range(A.hilbert(1)):
        for v in range(A.hilbert(2)):
            for w in range(A.hilbert(1)):
                left = A.multiply_vec(3, A.multiply(1, u, 2, v), 1, {w: 1})
                right = A.multiply_vec(1, {u: 1}, 3, A.multiply(2, v, 1, w))
                assert left == right


def test_word_str():
    A = GradedAlgebra.build(corpus.example_zero(), 2)
    assert A.word_str(0, 0) == "1"
    assert A.word_str(2, 0) == "z*x"
