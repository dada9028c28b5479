from dataclasses import dataclass

import pytest

from utils import corpus
from utils.algebra import GradedAlgebra, QuadraticPresentation
from utils.complexes import DoubleComplex, enveloping_double_complex
from utils.dual import DualAlgebra, quadratic_dual


@dataclass
class Built:
    presentation: QuadraticPresentation
    A: GradedAlgebra
    dA: DualAlgebra
    F: DoubleComplex

    @property
    def D(self) -> int:
        return self.F.D


@pytest.fixture(scope="session")
def build():
    """A, A^! and 𝔽 for a presentation, built once per (algebra, D) for the whole session."""
    cache: dict = {}

    def _build(pres: QuadraticPresentation, D: int) -> Built:
        key = (pres.fingerprint(), D)
        if key not in cache:
            A = GradedAlgebra.build(pres, D)
            dA = quadratic_dual(pres, D)
            cache[key] = Built(pres, A, dA, enveloping_double_complex(A, dA, D))
        return cache[key]

    return _build


@pytest.fixture(scope="session")
def ex0(build):
    return build(corpus.example_zero(), 7)


@pytest.fixture(scope="session")
def fib(build):
    return build(corpus.fibonacci(), 8)


@pytest.fixture(scope="session")
def ncxy(build):
    return build(corpus.noncommutative_monomial(), 5)


@pytest.fixture(scope="session")
def sq2(build):
    return build(corpus.squarefree(2), 6)


@pytest.fixture(scope="session")
def sq3(build):
    return build(corpus.squarefree(3), 6)


@pytest.fixture(scope="session")
def sq4(build):
    return build(corpus.squarefree(4), 9)
