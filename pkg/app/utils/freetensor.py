# -------------------------------------------------------------
# utils/freetensor.py  ·  words and homogeneous polynomials in T(V)
# -------------------------------------------------------------
"""
A word is a tuple of generator indices (0-based).  Words of one degree are
ordered lexicographically; that order is the tensor index of V^{⊗n}, i.e.
the base-d numeral of the letters.
"""
import itertools
from typing import Iterator

from config import WORD_CAP
from utils.errors import WordCapExceeded

Word = tuple[int, ...]


def _check_cap(d: int, n: int, cap: int) -> None:
    size = d ** n
    if size > cap:
        raise WordCapExceeded(n, size, cap)


def enumerate_words(d: int, n: int, cap: int = WORD_CAP) -> list[Word]:
    if d < 1:
        raise ValueError("need at least one generator")
    _check_cap(d, n, cap)
    return list(itertools.product(range(d), repeat=n))


def tensor_index(w: Word, d: int) -> int:
    idx = 0
    for letter in w:
        if not 0 <= letter < d:
            raise ValueError(f"letter {letter} out of range for {d} generators")
        idx = idx * d + letter
    return idx


def concat(u: Word, v: Word) -> Word:
    return u + v


class NCPoly:
    """Homogeneous element of T(V): a map word -> nonzero scalar."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict | None = None):
        self.degree = degree
        self.terms: dict[Word, object] = {}
        for w, c in (terms or {}).items():
            if len(w) != degree:
                raise ValueError(f"word {w} does not have degree {degree}")
            if c:
                self.terms[w] = c

    @classmethod
    def word(cls, w: Word, one) -> "NCPoly":
        return cls(len(w), {w: one})

    def __mul__(self, other: "NCPoly") -> "NCPoly":
        out: dict[Word, object] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u + v
                out[w] = out.get(w, 0) + a * b
        return NCPoly(self.degree + other.degree, out)

    def __add__(self, other: "NCPoly") -> "NCPoly":
        if self.degree != other.degree:
            raise ValueError("sum of polynomials of different degree")
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return NCPoly(self.degree, out)

    def scale(self, c) -> "NCPoly":
        return NCPoly(self.degree, {w: c * v for w, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def vector(self, d: int) -> dict[int, object]:
        return {tensor_index(w, d): c for w, c in self.terms.items()}

    @classmethod
    def from_vector(cls, vec: dict[int, object], d: int, degree: int) -> "NCPoly":
        terms = {}
        for idx, c in vec.items():
            letters = []
            for _ in range(degree):
                idx, r = divmod(idx, d)
                letters.append(r)
            terms[tuple(reversed(letters))] = c
        return cls(degree, terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, NCPoly) and self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"NCPoly({self.degree}, {self.terms})"


def embed_relation(q: NCPoly, left: int, n: int, d: int,
                   cap: int = WORD_CAP) -> Iterator[dict[int, object]]:
    """Stream u ⊗ q ⊗ v for every padding pair (deg u = left, deg v = n - left - 2)."""
    if q.degree != 2:
        raise ValueError("relations are quadratic")
    if left < 0 or left + 2 > n:
        raise ValueError(f"position {left} does not fit degree {n}")
    _check_cap(d, n, cap)
    right = n - left - 2
    qvec = {tensor_index(w, d): c for w, c in q.terms.items()}
    for u in itertools.product(range(d), repeat=left):
        hi = tensor_index(u, d) * d ** (2 + right)
        for v in itertools.product(range(d), repeat=right):
            lo = tensor_index(v, d)
            yield {hi + qi * d ** right + lo: c for qi, c in qvec.items()}


def ideal_generators(relations: list[NCPoly], n: int, d: int,
                     cap: int = WORD_CAP) -> Iterator[dict[int, object]]:
    for left in range(n - 1):
        for q in relations:
            yield from embed_relation(q, left, n, d, cap)
