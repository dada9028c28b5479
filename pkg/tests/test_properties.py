"""Seeded random monomial algebras: commutative monomial quotients are Koszul, so every check must pass."""
import numpy as np
import pytest

from utils import corpus
from utils.complexes import koszul_check
from utils.dual import double_dual_check
from utils.lcomplex import betti_formula, betti_oracle, poincare_coeffs

SEEDS = range(25)
D = 6


@pytest.fixture(params=SEEDS, ids=lambda s: f"seed{s}")
def random_algebra(request, build):
    rng = np.random.default_rng(request.param)
    d = int(rng.choice([2, 3]))
    return build(corpus.random_monomial(rng, d), D)


def test_certificate(random_algebra):
    cert = koszul_check(random_algebra.A, random_algebra.dA, D)
    assert cert.passed, cert.witness


def test_formula_matches_oracle(random_algebra):
    A, dA, F = random_algebra.A, random_algebra.dA, random_algebra.F
    for a in (1, 2):
        formula = [betti_formula(A, dA, n, a) for n in range(4)]
        assert formula == [betti_oracle(F, n, a) for n in range(4)]
        assert poincare_coeffs(A, dA, a, 3) == formula


def test_double_dual(random_algebra):
    assert double_dual_check(random_algebra.presentation)


def test_differentials_commute(random_algebra):
    F = random_algebra.F
    for i in range(2, D + 1):
        for j in range(D + 1 - i):
            for q in range(i + j, D + 1):
                left = F.dprime(i - 1, j + 1).strand(q).matrix @ F.dsecond(i, j).strand(q).matrix
                right = F.dsecond(i - 1, j).strand(q).matrix @ F.dprime(i, j).strand(q).matrix
                assert left == right, (i, j, q)
