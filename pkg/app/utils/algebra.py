# -------------------------------------------------------------
# utils/algebra.py  ·  A = T(V)/Q computed degree by degree
# -------------------------------------------------------------
"""
Quadratic presentations and the graded algebras they define.

Normal words of degree n are the non-pivot columns of the echelon form of
the degree-n relation subspace (pivot = leftmost = lex-smallest word).  The
lex order on words of one length is compatible with concatenation on both
sides, so every normal word of degree n is a normal word of degree n-1
followed by a letter.  The incremental build uses this: it only reduces the
span of ``A_{n-2} ⊗ Q`` inside ``A_{n-1} ⊗ V`` and gets the same normal words
and the same normal forms as the direct build over all of ``V^{⊗n}``.
"""
import hashlib
import logging
from dataclasses import dataclass

from config import ALGEBRA_BUILD, WORD_CAP
from utils.errors import DegreeCapExceeded, NonQuadraticRelation
from utils.exactlin import FieldSpec, Matrix, rref
from utils.freetensor import NCPoly, Word, enumerate_words, ideal_generators, tensor_index

log = logging.getLogger(__name__)


# ── presentations ----------------------------------------------
@dataclass(frozen=True)
class QuadraticPresentation:
    field: FieldSpec
    generator_names: tuple[str, ...]
    relations: tuple[NCPoly, ...]
    commutative: bool = False

    @classmethod
    def create(cls, field: FieldSpec, names, relations, commutative: bool = False):
        """Validate, add commutators when flagged, and normalize the relation basis.

        Dependent relations are dropped; the stored basis is the nonzero rows
        of the reduced echelon form, so equal spans give equal presentations.
        """
        names = tuple(names)
        d = len(names)
        if d < 1:
            raise ValueError("a presentation needs at least one generator")
        if len(set(names)) != d:
            raise ValueError(f"generator names are not distinct: {names}")
        rels = []
        for q in relations:
            if q.degree != 2:
                term = next(iter(q.terms), ())
                raise NonQuadraticRelation("*".join(names[i] for i in term) or "1", q.degree)
            rels.append(q)
        one = field.one
        if commutative:
            for i in range(d):
                for j in range(i + 1, d):
                    rels.append(NCPoly(2, {(j, i): one, (i, j): -one}))
        return cls(field, names, _normalize(rels, d, field), commutative)

    @property
    def d(self) -> int:
        return len(self.generator_names)

    def relation_matrix(self) -> Matrix:
        dod = {i: q.vector(self.d) for i, q in enumerate(self.relations)}
        return Matrix.from_dod(dod, (len(self.relations), self.d ** 2), self.field)

    def word_str(self, w: Word, sep: str = "*") -> str:
        return sep.join(self.generator_names[i] for i in w) if w else "1"

    def fingerprint(self) -> str:
        """sha256 of the canonical relation basis; stable across runs."""
        h = hashlib.sha256()
        h.update(f"{self.field}|{','.join(self.generator_names)}|".encode())
        for q in self.relations:
            for w in sorted(q.terms):
                h.update(f"{w}:{self.field.to_python(q.terms[w])};".encode())
            h.update(b"|")
        return h.hexdigest()


def _normalize(relations: list[NCPoly], d: int, field: FieldSpec) -> tuple[NCPoly, ...]:
    if not relations:
        return ()
    dod = {i: q.vector(d) for i, q in enumerate(relations)}
    r, pivots = rref(Matrix.from_dod(dod, (len(relations), d * d), field))
    rows = r.dod()
    return tuple(NCPoly.from_vector(dict(rows[i]), d, 2) for i in range(len(pivots)))


# ── graded algebra ---------------------------------------------
class GradedAlgebra:
    """Normal bases, normal forms and structure constants of T(V)/Q up to a cap."""

    def __init__(self, presentation: QuadraticPresentation, cap: int, method: str = ALGEBRA_BUILD):
        if cap < 0:
            raise ValueError("degree cap must be non-negative")
        if method not in ("incremental", "direct"):
            raise ValueError(f"unknown build method {method!r}")
        self.presentation = presentation
        self.cap = cap
        self.method = method
        self.field = presentation.field
        self.d = presentation.d
        self._normal: list[list[Word]] = []
        self._index: list[dict[Word, int]] = []
        self._rules: list[dict[Word, dict]] = []
        self._reduced: dict[Word, dict] = {}
        self._products: dict[tuple, dict] = {}
        self._build()

    @classmethod
    def build(cls, presentation: QuadraticPresentation, cap: int,
              method: str | None = None) -> "GradedAlgebra":
        return cls(presentation, cap, method or ALGEBRA_BUILD)

    # ── construction ---------------------------------------------
    def _build(self) -> None:
        d = self.d
        self._absorb_trivial([()])
        if self.cap >= 1:
            self._absorb_trivial([(t,) for t in range(d)])
        for n in range(2, self.cap + 1):
            if self.method == "direct":
                words, matrix = self._direct_system(n)
            else:
                words, matrix = self._incremental_system(n)
            r, pivots = rref(matrix)
            self._absorb(words, r, pivots)
            log.debug("[algebra] degree %d: %d candidates, dim %d", n, len(words), len(self._normal[n]))
        log.info("[algebra] %s built to degree %d (%s): dims %s", self.presentation.generator_names,
                 self.cap, self.method, self.dims())

    def _absorb_trivial(self, words: list[Word]) -> None:
        self._normal.append(words)
        self._index.append({w: i for i, w in enumerate(words)})
        self._rules.append({})

    def _absorb(self, words: list[Word], r: Matrix, pivots: list[int]) -> None:
        pivset = set(pivots)
        normal = [w for k, w in enumerate(words) if k not in pivset]
        index = {w: i for i, w in enumerate(normal)}
        rows = r.dod()
        rules = {}
        for i, p in enumerate(pivots):
            rules[words[p]] = {index[words[j]]: -v for j, v in rows[i].items() if j != p}
        self._normal.append(normal)
        self._index.append(index)
        self._rules.append(rules)

    def _direct_system(self, n: int) -> tuple[list[Word], Matrix]:
        d = self.d
        words = enumerate_words(d, n, WORD_CAP)
        rels = list(self.presentation.relations)
        dod = dict(enumerate(ideal_generators(rels, n, d, WORD_CAP)))
        return words, Matrix.from_dod(dod, (len(dod), len(words)), self.field)

    def _incremental_system(self, n: int) -> tuple[list[Word], Matrix]:
        d = self.d
        prev = self._normal[n - 1]
        words = [u + (x,) for u in prev for x in range(d)]
        col = {w: k for k, w in enumerate(words)}
        dod = {}
        for u in self._normal[n - 2]:
            for q in self.presentation.relations:
                row: dict[int, object] = {}
                for (a, b), c in q.terms.items():
                    for pos, coef in self._reduce_word(u + (a,)).items():
                        k = col[prev[pos] + (b,)]
                        row[k] = row.get(k, 0) + c * coef
                dod[len(dod)] = row
        return words, Matrix.from_dod(dod, (len(dod), len(words)), self.field)

    # ── queries ------------------------------------------------------
    def _check(self, n: int) -> None:
        if n < 0 or n > self.cap:
            raise DegreeCapExceeded(n, self.cap)

    def hilbert(self, n: int) -> int:
        self._check(n)
        return len(self._normal[n])

    def dims(self, upto: int | None = None) -> list[int]:
        top = self.cap if upto is None else upto
        return [self.hilbert(n) for n in range(top + 1)]

    def basis(self, n: int) -> list[Word]:
        self._check(n)
        return self._normal[n]

    def index_of(self, w: Word) -> int | None:
        self._check(len(w))
        return self._index[len(w)].get(w)

    def _reduce_word(self, w: Word) -> dict:
        n = len(w)
        pos = self._index[n].get(w)
        if pos is not None:
            return {pos: self.field.one}
        cached = self._reduced.get(w)
        if cached is not None:
            return cached
        out = self._rules[n].get(w)
        if out is None:
            acc: dict[int, object] = {}
            for p, c in self._reduce_word(w[:-1]).items():
                for p2, c2 in self._reduce_word(self._normal[n - 1][p] + w[-1:]).items():
                    acc[p2] = acc.get(p2, 0) + c * c2
            out = {k: v for k, v in acc.items() if v}
        self._reduced[w] = out
        return out

    def reduce(self, p: NCPoly) -> dict[int, object]:
        """Normal-basis coordinates (sparse) of a homogeneous element of T(V)."""
        self._check(p.degree)
        acc: dict[int, object] = {}
        for w, c in p.terms.items():
            for k, v in self._reduce_word(w).items():
                acc[k] = acc.get(k, 0) + c * v
        return {k: v for k, v in acc.items() if v}

    def multiply(self, m: int, u: int, n: int, v: int) -> dict[int, object]:
        self._check(m + n)
        key = (m, u, n, v)
        out = self._products.get(key)
        if out is None:
            out = self._reduce_word(self._normal[m][u] + self._normal[n][v])
            self._products[key] = out
        return out

    def multiply_vec(self, m: int, x: dict, n: int, y: dict) -> dict[int, object]:
        acc: dict[int, object] = {}
        for u, a in x.items():
            for v, b in y.items():
                for k, c in self.multiply(m, u, n, v).items():
                    acc[k] = acc.get(k, 0) + a * b * c
        return {k: v for k, v in acc.items() if v}

    # ── matrices over the word basis (checks and reporting) ----------
    def relation_subspace(self, n: int) -> Matrix:
        """Echelon basis (rows) of the degree-n component of the ideal, in k^(d^n)."""
        self._check(n)
        if n < 2:
            return Matrix.zeros(0, self.d ** n, self.field)
        _, matrix = self._direct_system(n)
        r, pivots = rref(matrix)
        rows = r.dod()
        return Matrix.from_dod({i: dict(rows[i]) for i in range(len(pivots))},
                               (len(pivots), self.d ** n), self.field)

    def relation_rank(self, n: int) -> int:
        return self.d ** n - self.hilbert(n)

    def reduction_map(self, n: int) -> Matrix:
        """dim A_n × d^n matrix sending each word to its normal coordinates."""
        self._check(n)
        words = enumerate_words(self.d, n, WORD_CAP)
        columns = [self._reduce_word(w) for w in words]
        return Matrix.from_columns(columns, self.hilbert(n), self.field)

    def normal_indices(self, n: int) -> list[int]:
        return [tensor_index(w, self.d) for w in self.basis(n)]

    def word_str(self, n: int, i: int, sep: str = "*") -> str:
        return self.presentation.word_str(self.basis(n)[i], sep)
