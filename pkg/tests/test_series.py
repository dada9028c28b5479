import pytest

from utils.series import (SeriesPoly, hilbert_series, poincare_series, quotient_hilbert_series,
                          substitute_yz)


def test_truncation_drops_high_terms():
    s = SeriesPoly.from_coeffs([1, 2, 3, 4], order=2)
    assert s.coeffs() == [1, 2, 3]
    square = hilbert_series([1, 1, 1, 1]) * hilbert_series([1, 1, 1])
    assert square.order == 2
    assert square.coeffs() == [1, 2, 3]


def test_negation_and_equality():
    s = hilbert_series([1, 3, 3, 3])
    assert (-s).coeffs() == [-1, -3, -3, -3]
    assert -(-s) == s
    assert s != hilbert_series([1, 3, 3])


def test_quotient_series(ex0):
    assert quotient_hilbert_series(ex0.A, 2, 4).coeffs() == [1, 3, 0, 0, 0]


def test_substitution_signs():
    s = substitute_yz(hilbert_series([1, 2, 5]), -1)
    assert s.coeff((1, 1)) == -2
    assert s.coeff((2, 2)) == 5
    assert s.coeff((1, 0)) == 0
    with pytest.raises(ValueError):
        substitute_yz(s)


def test_poincare_series_example_zero(ex0):
    P = poincare_series(ex0.A, ex0.dA, 2, 3)
    assert P.order == 3
    assert [P.coefficient(n) for n in range(4)] == [3, 6, 12, 24]
    with pytest.raises(ValueError):
        P.coefficient(4)
