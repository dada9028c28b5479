# -------------------------------------------------------------
# utils/complexes.py  ·  free A-modules, strands, Priddy and 𝔽 complexes
# -------------------------------------------------------------
"""
Graded free left A-modules are lists of generator degrees.  A map between
them is stored at generator level: the image of generator g is
Σ_h α_{h,g} ⊗ h with α_{h,g} ∈ A_{deg g - deg h}, and ``c ⊗ g ↦ Σ c·α ⊗ h``.
Strand matrices (one internal degree q at a time) are expanded from that
on demand and memoized.

Double-complex maps ∂′ (vertical) and ∂″ (horizontal) are stored unsigned;
the sign rule is applied only when totalizing.
"""
import logging
import threading
from dataclasses import dataclass
from typing import Callable, Literal

from cachetools import cachedmethod
from joblib import Parallel, delayed
from pydantic import BaseModel

from config import DPRIME_SIDE, DSECOND_SIDE
from utils.algebra import GradedAlgebra
from utils.dual import DualAlgebra, dual_dims
from utils.errors import DegreeCapExceeded, NotAComplex, NotInSpan, SignRuleViolation
from utils.exactlin import Matrix, image_basis, kernel_basis, rank, solve_columns

log = logging.getLogger(__name__)

Vec = dict  # sparse coordinates in the normal basis of one A_k


# ── modules and maps ---------------------------------------------
@dataclass(frozen=True)
class GradedFreeModule:
    degrees: tuple[int, ...]
    labels: tuple = ()

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def offsets(self, A: GradedAlgebra, q: int) -> tuple[list[int], int]:
        """Start of each generator's block in strand q, and the strand dimension."""
        out, pos = [], 0
        for g in self.degrees:
            out.append(pos)
            if g <= q:
                pos += A.hilbert(q - g)
        return out, pos

    def strand_dim(self, A: GradedAlgebra, q: int) -> int:
        return self.offsets(A, q)[1]


ZERO_MODULE = GradedFreeModule(())


@dataclass(frozen=True)
class StrandMatrix:
    source: GradedFreeModule
    target: GradedFreeModule
    q: int
    matrix: Matrix


class FreeMap:
    """Degree-preserving A-linear map between graded free modules."""

    def __init__(self, A: GradedAlgebra, source: GradedFreeModule, target: GradedFreeModule,
                 images: list[dict[int, Vec]], name: str = ""):
        if len(images) != source.rank:
            raise ValueError(f"{name}: {len(images)} images for {source.rank} generators")
        self.A = A
        self.source = source
        self.target = target
        self.images = images
        self.name = name
        self._cache: dict = {}
        self._lock = threading.Lock()

    @cachedmethod(lambda self: self._cache, lock=lambda self: self._lock)
    def strand(self, q: int) -> StrandMatrix:
        A = self.A
        if q > A.cap:
            raise DegreeCapExceeded(q, A.cap)
        src_off, ncols = self.source.offsets(A, q)
        tgt_off, nrows = self.target.offsets(A, q)
        dod: dict[int, dict] = {}
        for g, image in enumerate(self.images):
            dg = self.source.degrees[g]
            if dg > q:
                continue
            for c in range(A.hilbert(q - dg)):
                col = src_off[g] + c
                for h, alpha in image.items():
                    dh = self.target.degrees[h]
                    for k, v in A.multiply_vec(q - dg, {c: A.field.one}, dg - dh, alpha).items():
                        dod.setdefault(tgt_off[h] + k, {})[col] = v
        log.debug("[strand] %s q=%d: %dx%d", self.name, q, nrows, ncols)
        return StrandMatrix(self.source, self.target, q,
                            Matrix.from_dod(dod, (nrows, ncols), A.field))

    def is_minimal(self) -> bool:
        """Every nonzero coefficient α lies in 𝔪."""
        for g, image in enumerate(self.images):
            for h, alpha in image.items():
                support = [k for k, v in alpha.items() if v]
                if not support:
                    continue
                e = self.source.degrees[g] - self.target.degrees[h]
                if e < 1 or max(support) >= self.A.hilbert(e):
                    return False
        return True

    def generator_matrix(self) -> Matrix:
        """Coefficient-degree-0 block: the map on generators of equal degree."""
        dod: dict[int, dict] = {}
        for g, image in enumerate(self.images):
            for h, alpha in image.items():
                if self.source.degrees[g] == self.target.degrees[h] and alpha.get(0):
                    dod.setdefault(h, {})[g] = alpha[0]
        return Matrix.from_dod(dod, (self.target.rank, self.source.rank), self.A.field)


def _scale_vec(v: Vec, s) -> Vec:
    return {k: s * c for k, c in v.items()}


# ── chain complexes ----------------------------------------------
class ChainComplex:
    """terms[n] with differentials[n]: terms[n] → terms[n-1] for n ≥ 1."""

    def __init__(self, A: GradedAlgebra, terms: list[GradedFreeModule],
                 differentials: dict[int, FreeMap], name: str = ""):
        self.A = A
        self.terms = terms
        self.differentials = differentials
        self.name = name
        self._cache: dict = {}
        self._lock = threading.Lock()

    @property
    def length(self) -> int:
        return len(self.terms)

    def term(self, n: int) -> GradedFreeModule:
        return self.terms[n] if 0 <= n < len(self.terms) else ZERO_MODULE

    def strand_dim(self, n: int, q: int) -> int:
        return self.term(n).strand_dim(self.A, q)

    def strand_matrix(self, n: int, q: int) -> Matrix:
        if q > self.A.cap:
            raise DegreeCapExceeded(q, self.A.cap)
        d = self.differentials.get(n)
        if d is None:
            return Matrix.zeros(self.strand_dim(n - 1, q), self.strand_dim(n, q), self.A.field)
        return d.strand(q).matrix

    @cachedmethod(lambda self: self._cache, lock=lambda self: self._lock)
    def strand_rank(self, n: int, q: int) -> int:
        return rank(self.strand_matrix(n, q))

    def strand_homology(self, n: int, q: int) -> int:
        if q > self.A.cap:
            raise DegreeCapExceeded(q, self.A.cap)
        return self.strand_dim(n, q) - self.strand_rank(n, q) - self.strand_rank(n + 1, q)

    def homology_witness(self, n: int, q: int) -> dict | None:
        """A cycle of strand q not hit by ∂_{n+1}, or None when the homology vanishes."""
        cycles = kernel_basis(self.strand_matrix(n, q))
        boundaries, _ = image_basis(self.strand_matrix(n + 1, q))
        if cycles.cols == 0:
            return None
        for z in cycles.columns():
            candidate = Matrix.from_columns([z], cycles.rows, self.A.field)
            try:
                solve_columns(boundaries, candidate)
            except NotInSpan:
                return {i: self.A.field.to_python(v) for i, v in sorted(z.items())}
        return None

    def check_squares(self, qmax: int | None = None, error: Callable = NotAComplex) -> None:
        top = self.A.cap if qmax is None else qmax
        for n in range(2, self.length):
            for q in range(top + 1):
                prod = self.strand_matrix(n - 1, q) @ self.strand_matrix(n, q)
                if not prod.is_zero():
                    raise error(n, q)


# ── Priddy complex and certificate -------------------------------
def _trace_images(dA: DualAlgebra, side: str, i: int, d: int) -> list[dict[int, Vec]]:
    """Images of the generators of A ⊗ (A^!)*_i under Σ_t x_t ⊗ (x_t^* acting on one side)."""
    images: list[dict[int, Vec]] = [{} for _ in range(dual_dims(dA, i))]
    for t in range(d):
        for phi, col in dA.action_columns(side, t, i).items():
            for phi2, v in col.items():
                images[phi].setdefault(phi2, {})[t] = v
    return images


def priddy_complex(A: GradedAlgebra, dA: DualAlgebra, D: int) -> ChainComplex:
    if D > A.cap or D > dA.cap:
        raise DegreeCapExceeded(D, min(A.cap, dA.cap))
    terms = [GradedFreeModule((i,) * dual_dims(dA, i), tuple(range(dual_dims(dA, i))))
             for i in range(D + 1)]
    diffs = {i: FreeMap(A, terms[i], terms[i - 1], _trace_images(dA, DPRIME_SIDE, i, A.d),
                        name=f"priddy d{i}")
             for i in range(1, D + 1)}
    log.info("[priddy] ranks %s", [t.rank for t in terms])
    return ChainComplex(A, terms, diffs, name="priddy")


class Witness(BaseModel):
    homological_degree: int
    internal_degree: int
    homology_dim: int
    cycle: dict[int, int | str] | None = None


class KoszulCertificate(BaseModel):
    algebra_hash: str
    D: int
    verdict: Literal["koszul_up_to", "failed"]
    witness: Witness | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == "koszul_up_to"

    def label(self) -> str:
        return f"koszul_up_to({self.D})" if self.passed else "failed"


def koszul_check(A: GradedAlgebra, dA: DualAlgebra, D: int, workers: int = 1) -> KoszulCertificate:
    """Strand homology of the Priddy complex: 1 at (0, 0), 0 everywhere else up to D."""
    P = priddy_complex(A, dA, D)
    cells = [(i, q) for q in range(D + 1) for i in range(q + 1)]
    dims = Parallel(n_jobs=workers, prefer="threads")(
        delayed(P.strand_homology)(i, q) for i, q in cells)
    fingerprint = A.presentation.fingerprint()
    for (i, q), h in zip(cells, dims):
        expected = 1 if (i, q) == (0, 0) else 0
        if h != expected:
            log.warning("[priddy] H_%d strand %d has dimension %d", i, q, h)
            witness = Witness(homological_degree=i, internal_degree=q, homology_dim=h,
                              cycle=P.homology_witness(i, q))
            return KoszulCertificate(algebra_hash=fingerprint, D=D, verdict="failed", witness=witness)
    log.info("[priddy] acyclic through strand %d", D)
    return KoszulCertificate(algebra_hash=fingerprint, D=D, verdict="koszul_up_to")


# ── the double complex 𝔽 over the enveloping algebra -------------
SIGN_RULES: dict[str, Callable[[int, int], int]] = {
    "i": lambda i, j: (-1) ** i,
    "i+j": lambda i, j: (-1) ** (i + j),
    "j": lambda i, j: (-1) ** j,
}


class DoubleComplex:
    """F_{ij} = A ⊗ (A^!)*_i ⊗ A_j, generators (φ, b) φ-major, all in degree i + j."""

    def __init__(self, A: GradedAlgebra, dA: DualAlgebra, D: int,
                 dprime_side: str = DPRIME_SIDE, dsecond_side: str = DSECOND_SIDE,
                 max_column: int | None = None):
        if D > A.cap or D > dA.cap:
            raise DegreeCapExceeded(D, min(A.cap, dA.cap))
        self.A = A
        self.dA = dA
        self.D = D
        self.dprime_side = dprime_side
        self.dsecond_side = dsecond_side
        self.max_column = D if max_column is None else max_column
        self._maps: dict = {}

    def truncate_columns(self, a: int) -> "DoubleComplex":
        if a < 1:
            raise ValueError("truncation needs a ≥ 1")
        if a > self.D:
            raise DegreeCapExceeded(a, self.D, hint="truncation index exceeds the degree cap")
        out = DoubleComplex(self.A, self.dA, self.D, self.dprime_side, self.dsecond_side, a - 1)
        out._maps = self._maps
        return out

    def contains(self, i: int, j: int) -> bool:
        return 0 <= i <= self.D and 0 <= j <= self.max_column

    def module(self, i: int, j: int) -> GradedFreeModule:
        if not (0 <= i <= self.dA.cap and 0 <= j <= self.A.cap):
            return ZERO_MODULE
        key = ("F", i, j)
        mod = self._maps.get(key)
        if mod is None:
            na, nb = dual_dims(self.dA, i), self.A.hilbert(j)
            mod = GradedFreeModule((i + j,) * (na * nb),
                                   tuple((phi, b) for phi in range(na) for b in range(nb)))
            self._maps[key] = mod
        return mod

    def dprime(self, i: int, j: int) -> FreeMap:
        """F_{ij} → F_{i-1,j}: Σ_t x_t ⊗ (x_t^* on the dual factor) ⊗ 1."""
        key = ("dprime", self.dprime_side, i, j)
        fmap = self._maps.get(key)
        if fmap is None:
            nb = self.A.hilbert(j)
            images: list[dict[int, Vec]] = [{} for _ in range(self.module(i, j).rank)]
            for phi, image in enumerate(_trace_images(self.dA, self.dprime_side, i, self.A.d)):
                for b in range(nb):
                    images[phi * nb + b] = {phi2 * nb + b: alpha for phi2, alpha in image.items()}
            fmap = FreeMap(self.A, self.module(i, j), self.module(i - 1, j), images,
                           name=f"d'({i},{j})")
            self._maps[key] = fmap
        return fmap

    def dsecond(self, i: int, j: int) -> FreeMap:
        """F_{ij} → F_{i-1,j+1}: Σ_t 1 ⊗ (x_t^* on the dual factor) ⊗ x_t·(−)."""
        key = ("dsecond", self.dsecond_side, i, j)
        fmap = self._maps.get(key)
        if fmap is None:
            A = self.A
            nb, nb2 = A.hilbert(j), A.hilbert(j + 1)
            images: list[dict[int, Vec]] = [{} for _ in range(self.module(i, j).rank)]
            for t in range(A.d):
                for phi, col in self.dA.action_columns(self.dsecond_side, t, i).items():
                    for phi2, v in col.items():
                        for b in range(nb):
                            image = images[phi * nb + b]
                            for b2, c in A.multiply(1, t, j, b).items():
                                h = phi2 * nb2 + b2
                                s = image.get(h, {}).get(0, 0) + v * c
                                if s:
                                    image[h] = {0: s}
                                else:
                                    image.pop(h, None)
            fmap = FreeMap(A, self.module(i, j), self.module(i - 1, j + 1), images,
                           name=f"d''({i},{j})")
            self._maps[key] = fmap
        return fmap

    # ── assembled complexes -------------------------------------------
    def totalize(self, sign: str = "i", top: int | None = None) -> ChainComplex:
        """Tot_n = ⊕_j F_{n,j} (the n-th antidiagonal), ∂ = ∂′ + sign(i, j)·∂″.

        Both ∂′ and ∂″ lower i by one, so i is the homological degree.  F_{n,j}
        is generated in degree n + j and only meets strands q ≥ n + j, so the
        columns j ≤ D − n carry every strand up to D.
        """
        rule = SIGN_RULES[sign]
        top = self.D if top is None else top
        blocks: list[list[tuple[int, int, int]]] = []
        terms: list[GradedFreeModule] = []
        for n in range(top + 1):
            layout, degrees, labels, pos = [], [], [], 0
            for j in range(min(self.max_column, self.D - n) + 1):
                mod = self.module(n, j)
                layout.append((n, j, pos))
                degrees.extend(mod.degrees)
                labels.extend((n, j) + lab for lab in mod.labels)
                pos += mod.rank
            blocks.append(layout)
            terms.append(GradedFreeModule(tuple(degrees), tuple(labels)))
        diffs = {}
        for n in range(1, top + 1):
            start = {(i, j): p for i, j, p in blocks[n - 1]}
            images: list[dict[int, Vec]] = []
            for i, j, _ in blocks[n]:
                s = rule(i, j)
                dp = self.dprime(i, j).images
                ds = self.dsecond(i, j).images if (i - 1, j + 1) in start else None
                for g in range(self.module(i, j).rank):
                    image: dict[int, Vec] = {}
                    for h, alpha in dp[g].items():
                        image[start[(i - 1, j)] + h] = alpha
                    if ds is not None:
                        for h, alpha in ds[g].items():
                            image[start[(i - 1, j + 1)] + h] = _scale_vec(alpha, s)
                    images.append(image)
            diffs[n] = FreeMap(self.A, terms[n], terms[n - 1], images, name=f"tot d{n}")
        tot = ChainComplex(self.A, terms, diffs, name=f"tot[j<={self.max_column}]")
        tot.check_squares(self.D, error=SignRuleViolation)
        log.info("[F] totalized columns j <= %d with sign rule %s: ranks %s",
                 self.max_column, sign, [t.rank for t in terms])
        return tot

    def row_complex(self, r: int) -> ChainComplex:
        """F_{r,0} → F_{r-1,1} → … → F_{0,r} under ∂″, indexed by i."""
        terms = [self.module(i, r - i) for i in range(r + 1)]
        diffs = {i: self.dsecond(i, r - i) for i in range(1, r + 1)}
        return ChainComplex(self.A, terms, diffs, name=f"row {r}")

    def enveloping_augmentation(self, tot: ChainComplex) -> FreeMap:
        """Tot_0 = ⊕_j F_{0,j} → A, r ⊗ 1 ⊗ s ↦ rs."""
        one = self.A.field.one
        images = [{0: {b: one}} for (_, _, _, b) in tot.term(0).labels]
        return FreeMap(self.A, tot.term(0), GradedFreeModule((0,)), images, name="mult")


def enveloping_double_complex(A: GradedAlgebra, dA: DualAlgebra, D: int) -> DoubleComplex:
    return DoubleComplex(A, dA, D)


def side_assignment_passes(A: GradedAlgebra, dA: DualAlgebra, D: int,
                           dprime_side: str, dsecond_side: str) -> bool:
    """∂′² = 0, ∂″² = 0 and ∂′∂″ = ∂″∂′ on every strand up to D."""
    F = DoubleComplex(A, dA, D, dprime_side, dsecond_side)
    for i in range(1, D + 1):
        for j in range(D + 1 - i):
            for q in range(i + j, D + 1):
                if i >= 2:
                    if not (F.dprime(i - 1, j).strand(q).matrix @ F.dprime(i, j).strand(q).matrix).is_zero():
                        log.info("[F] sides %s/%s: d'd' != 0 at (%d,%d,q=%d)", dprime_side, dsecond_side, i, j, q)
                        return False
                    if not (F.dsecond(i - 1, j + 1).strand(q).matrix
                            @ F.dsecond(i, j).strand(q).matrix).is_zero():
                        log.info("[F] sides %s/%s: d''d'' != 0 at (%d,%d,q=%d)", dprime_side, dsecond_side, i, j, q)
                        return False
                    left = F.dprime(i - 1, j + 1).strand(q).matrix @ F.dsecond(i, j).strand(q).matrix
                    right = F.dsecond(i - 1, j).strand(q).matrix @ F.dprime(i, j).strand(q).matrix
                    if left != right:
                        log.info("[F] sides %s/%s: squares do not commute at (%d,%d,q=%d)",
                                 dprime_side, dsecond_side, i, j, q)
                        return False
    return True
