from math import comb

import pytest

from utils import corpus
from utils.errors import DegreeCapExceeded
from utils.exactlin import Matrix, same_row_space
from utils.dual import double_dual_check, dual_action_matrices, dual_dims, quadratic_dual
from utils.presentation import render_poly

CORPUS = {
    "ex0": corpus.example_zero(),
    "fibonacci": corpus.fibonacci(),
    "squarefree3": corpus.squarefree(3),
    "polynomial2": corpus.polynomial(2),
    "free2": corpus.free(2),
    "exterior2": corpus.exterior(2),
    "nc_xy": corpus.noncommutative_monomial(),
}


def test_example_zero_dual(ex0):
    dA = ex0.dA
    names = dA.presentation.generator_names
    assert names == ("x*", "y*", "z*")
    rendered = [render_poly(q, names, dA.presentation.field, sep=" ") for q in dA.presentation.relations]
    assert rendered == ["x* z* + z* x*", "y* z* + z* y*", "z* z*"]
    assert [dual_dims(dA, i) for i in range(7)] == [1, 3, 6, 12, 24, 48, 96]


def test_fibonacci_dual_dims(fib):
    assert [dual_dims(fib.dA, i) for i in range(1, 6)] == [3, 5, 8, 13, 21]


@pytest.mark.parametrize("d", [2, 3])
def test_polynomial_dual_is_exterior(d):
    dA = quadratic_dual(corpus.polynomial(d), d + 2)
    assert [dual_dims(dA, i) for i in range(d + 3)] == [comb(d, i) for i in range(d + 3)]


def test_free_dual_stops_in_degree_one():
    dA = quadratic_dual(corpus.free(3), 3)
    assert [dual_dims(dA, i) for i in range(4)] == [1, 3, 0, 0]


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_relation_dimensions_complement(name):
    pres = CORPUS[name]
    dA = quadratic_dual(pres, 2)
    assert len(pres.relations) + len(dA.presentation.relations) == pres.d ** 2


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_double_dual(name):
    pres = CORPUS[name]
    assert double_dual_check(pres)
    again = quadratic_dual(quadratic_dual(pres, 2).presentation, 2).presentation
    if pres.relations:
        assert same_row_space(again.relation_matrix(), pres.relation_matrix())
    else:
        assert again.relations == ()


def test_action_shapes(ex0):
    left, right = dual_action_matrices(ex0.dA, 2, 3)
    assert left.shape == right.shape == (6, 12)


def test_left_and_right_actions_differ(ncxy):
    # A^! = k<x*,y*>/(x*x*, y*x*, y*y*): only x* y* survives in degree 2
    left, right = dual_action_matrices(ncxy.dA, 0, 2)
    assert left != right


def test_action_validation(ex0):
    with pytest.raises(ValueError):
        ex0.dA.action("middle", 0, 1)
    with pytest.raises(DegreeCapExceeded):
        ex0.dA.action("left", 0, ex0.dA.cap + 1)


@pytest.mark.parametrize("side", ["left", "right"])
@pytest.mark.parametrize("name", ["ex0", "ncxy"])
def test_composite_actions_match_products(request, name, side):
    dA = request.getfixturevalue(name).dA
    B = dA.carrier
    one = B.field.one
    for i in range(2, 5):
        for s in range(B.d):
            for t in range(B.d):
                composite = dA.action(side, s, i - 1) @ dA.action(side, t, i)
                if side == "left":
                    u = B.multiply(1, t, 1, s)
                    dod = {b: B.multiply_vec(2, u, i - 2, {b: one}) for b in range(B.hilbert(i - 2))}
                else:
                    u = B.multiply(1, s, 1, t)
                    dod = {b: B.multiply_vec(i - 2, {b: one}, 2, u) for b in range(B.hilbert(i - 2))}
                assert composite == Matrix.from_dod(dod, (B.hilbert(i - 2), B.hilbert(i)), B.field), (s, t, i)
