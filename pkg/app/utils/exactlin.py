# -------------------------------------------------------------
# utils/exactlin.py  ·  exact linear algebra over QQ and GF(p)
# -------------------------------------------------------------
"""
Thin layer over sympy's ``DomainMatrix``: every rank, kernel and image the
engine needs goes through the four functions below.

Pivots are the leftmost nonzero column of each row of the reduced echelon
form.  Over a field the reduced echelon form is unique, so kernel and image
bases are deterministic functions of the input matrix.
"""
import functools
from dataclasses import dataclass

from sympy import GF, QQ, isprime
from sympy.polys.matrices import DomainMatrix

from config import DEFAULT_PRIME, DENSE_FILL
from utils.errors import InvalidField, NotInSpan


@functools.lru_cache(maxsize=None)
def _domain(kind: str, p: int | None):
    return QQ if kind == "QQ" else GF(p, symmetric=False)


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: ``QQ`` or a prime field ``GF p``."""

    kind: str = "QQ"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "QQ":
            if self.p is not None:
                raise InvalidField("QQ takes no characteristic")
        elif self.kind == "GF":
            if not isinstance(self.p, int) or not 2 <= self.p < 2 ** 63 or not isprime(self.p):
                raise InvalidField(f"GF needs a prime below 2^63, got {self.p!r}")
        else:
            raise InvalidField(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("QQ")

    @classmethod
    def prime_field(cls, p: int = DEFAULT_PRIME) -> "FieldSpec":
        return cls("GF", p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        t = text.strip().replace("(", " ").replace(")", " ").split()
        if t == ["QQ"]:
            return cls.rationals()
        if len(t) == 2 and t[0] == "GF" and t[1].isdigit():
            return cls.prime_field(int(t[1]))
        raise InvalidField(f"cannot read field {text!r} (QQ | GF <p>)")

    @property
    def domain(self):
        return _domain(self.kind, self.p)

    @property
    def one(self):
        return self.domain.one

    @property
    def zero(self):
        return self.domain.zero

    def scalar(self, value):
        return self.domain.convert(value)

    def to_python(self, x) -> int | str:
        """JSON-friendly scalar: ints stay ints, rationals become ``"p/q"``."""
        if self.kind == "GF":
            return int(x)
        num, den = int(x.numerator), int(x.denominator)
        return num if den == 1 else f"{num}/{den}"

    def __str__(self) -> str:
        return "QQ" if self.kind == "QQ" else f"GF {self.p}"


class Matrix:
    """Sparse matrix over a FieldSpec; zeros are never stored."""

    __slots__ = ("dm", "field")

    def __init__(self, dm: DomainMatrix, field: FieldSpec):
        self.dm = dm
        self.field = field

    # ── construction ---------------------------------------------
    @classmethod
    def from_dod(cls, dod: dict, shape: tuple[int, int], field: FieldSpec) -> "Matrix":
        rows, cols = shape
        clean = {}
        for i, row in dod.items():
            kept = {j: v for j, v in row.items() if v}
            if not kept:
                continue
            if not 0 <= i < rows or not all(0 <= j < cols for j in kept):
                raise IndexError(f"entry outside a {rows}x{cols} matrix in row {i}")
            clean[i] = kept
        return cls(DomainMatrix(clean, shape, field.domain), field)

    @classmethod
    def from_rows(cls, rows: list[list], field: FieldSpec) -> "Matrix":
        ncols = len(rows[0]) if rows else 0
        dod = {i: {j: field.scalar(v) for j, v in enumerate(r) if v}
               for i, r in enumerate(rows)}
        return cls.from_dod(dod, (len(rows), ncols), field)

    @classmethod
    def from_columns(cls, columns: list[dict], nrows: int, field: FieldSpec) -> "Matrix":
        dod: dict[int, dict] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    dod.setdefault(i, {})[j] = v
        return cls.from_dod(dod, (nrows, len(columns)), field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec) -> "Matrix":
        return cls(DomainMatrix({}, (rows, cols), field.domain), field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> "Matrix":
        one = field.one
        return cls(DomainMatrix({i: {i: one} for i in range(n)}, (n, n), field.domain), field)

    # ── views ----------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.dm.shape

    @property
    def rows(self) -> int:
        return self.dm.shape[0]

    @property
    def cols(self) -> int:
        return self.dm.shape[1]

    def dod(self):
        return self.dm.to_sparse().rep

    def entries(self) -> dict:
        return {(i, j): v for i, row in self.dod().items() for j, v in row.items()}

    def column(self, j: int) -> dict:
        return {i: row[j] for i, row in self.dod().items() if j in row}

    def columns(self) -> list[dict]:
        out: list[dict] = [{} for _ in range(self.cols)]
        for i, row in self.dod().items():
            for j, v in row.items():
                out[j][i] = v
        return out

    def nnz(self) -> int:
        return sum(len(r) for r in self.dod().values())

    def fill(self) -> float:
        size = self.rows * self.cols
        return self.nnz() / size if size else 0.0

    def is_zero(self) -> bool:
        return self.nnz() == 0

    # ── arithmetic -----------------------------------------------
    def transpose(self) -> "Matrix":
        return Matrix(self.dm.to_sparse().transpose(), self.field)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.dm.to_sparse().matmul(other.dm.to_sparse()), self.field)

    def hstack(self, other: "Matrix") -> "Matrix":
        return Matrix(self.dm.to_sparse().hstack(other.dm.to_sparse()), self.field)

    def _working(self) -> DomainMatrix:
        return self.dm.to_dense() if self.fill() > DENSE_FILL else self.dm.to_sparse()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.shape == other.shape and self.field == other.field
                and dict(self.dod()) == dict(other.dod()))

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols} over {self.field}, nnz={self.nnz()})"


# ── operations ---------------------------------------------------
def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    if m.rows == 0 or m.cols == 0:
        return Matrix.zeros(m.rows, m.cols, m.field), []
    r, pivots = m._working().rref()
    return Matrix(r.to_sparse(), m.field), list(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> Matrix:
    """Columns span the right null space; one column per non-pivot column."""
    r, pivots = rref(m)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    slot = {f: k for k, f in enumerate(free)}
    one = m.field.one
    dod: dict[int, dict] = {f: {slot[f]: one} for f in free}
    rows = r.dod()
    for i, p in enumerate(pivots):
        for j, v in rows.get(i, {}).items():
            if j in slot:
                dod.setdefault(p, {})[slot[j]] = -v
    return Matrix.from_dod(dod, (m.cols, len(free)), m.field)


def image_basis(m: Matrix) -> tuple[Matrix, list[int]]:
    _, pivots = rref(m)
    if not pivots:
        return Matrix.zeros(m.rows, 0, m.field), []
    return Matrix(m.dm.to_sparse().extract(list(range(m.rows)), pivots), m.field), pivots


def solve_columns(basis: Matrix, targets: Matrix) -> Matrix:
    """Coordinates C with ``basis @ C == targets``; raises NotInSpan otherwise."""
    k = basis.cols
    if targets.cols == 0:
        return Matrix.zeros(k, 0, basis.field)
    r, pivots = rref(basis.hstack(targets))
    if pivots[:k] != list(range(k)):
        raise ValueError("basis columns are linearly dependent")
    if len(pivots) > k:
        raise NotInSpan(f"target column {pivots[k] - k} is not in the span of the basis")
    rows = r.dod()
    dod = {i: {j - k: v for j, v in rows.get(i, {}).items() if j >= k} for i in range(k)}
    return Matrix.from_dod(dod, (k, targets.cols), basis.field)


def solve_in_span(basis: Matrix, v) -> list:
    items = v.items() if isinstance(v, dict) else enumerate(v)
    column = {i: basis.field.scalar(x) for i, x in items if x}
    target = Matrix.from_columns([column], basis.rows, basis.field)
    coords = solve_columns(basis, target).column(0)
    zero = basis.field.zero
    return [coords.get(i, zero) for i in range(basis.cols)]


def same_row_space(a: Matrix, b: Matrix) -> bool:
    if a.cols != b.cols:
        return False
    ra, pa = rref(a)
    rb, pb = rref(b)
    if pa != pb:
        return False
    da, db = ra.dod(), rb.dod()
    return all(dict(da.get(i, {})) == dict(db.get(i, {})) for i in range(len(pa)))
