# -------------------------------------------------------------
# utils/lcomplex.py  ·  minimal resolutions 𝕃_a of 𝔪^a and Betti numbers
# -------------------------------------------------------------
"""
L_{n,a} is the kernel of ∂″ out of the generator strand of F_{n,a}; its basis
vectors live in (A^!)*_n ⊗ A_a (φ-major).  The vertical map ∂′ = Σ_t x_t ⊗ T_t
sends kernels to kernels, so on L-bases it is Σ_t x_t ⊗ C_t with C_t the
coordinates of (T_t ⊗ 1)·K_n in K_{n-1}.
"""
import logging
from dataclasses import dataclass

import pandas as pd
from joblib import Parallel, delayed
from pydantic import BaseModel, Field
from sympy import binomial

from utils.algebra import GradedAlgebra
from utils.complexes import (ChainComplex, DoubleComplex, FreeMap, GradedFreeModule,
                             KoszulCertificate)
from utils.dual import DualAlgebra, dual_dims
from utils.errors import DegreeCapExceeded, NotKoszul
from utils.exactlin import Matrix, kernel_basis, rank, solve_columns
from utils.series import poincare_series

log = logging.getLogger(__name__)


# ── L-modules ----------------------------------------------------
@dataclass(frozen=True)
class LModule:
    n: int
    a: int
    basis: Matrix

    @property
    def rank(self) -> int:
        return self.basis.cols

    @property
    def degree(self) -> int:
        return self.n + self.a

    def module(self) -> GradedFreeModule:
        return GradedFreeModule((self.degree,) * self.rank, tuple(range(self.rank)))


def l_module(F: DoubleComplex, n: int, a: int) -> LModule:
    if n < 0 or a < 1:
        raise ValueError(f"L_{{{n},{a}}} needs n >= 0 and a >= 1")
    if n + a + 1 > F.D:
        raise DegreeCapExceeded(n + a + 1, F.D, hint="L-modules need n + a + 1 <= D")
    if F.A.hilbert(a) == 0:
        basis = Matrix.zeros(0, 0, F.A.field)
    elif n == 0:
        basis = Matrix.identity(F.A.hilbert(a), F.A.field)
    else:
        basis = kernel_basis(F.dsecond(n, a).generator_matrix())
    log.debug("[L] rank L_{%d,%d} = %d", n, a, basis.cols)
    return LModule(n, a, basis)


def image_matches_kernel(F: DoubleComplex, n: int, a: int) -> bool:
    incoming = F.dsecond(n + 1, a - 1).generator_matrix()
    return rank(incoming) == l_module(F, n, a).rank


def _lift(F: DoubleComplex, t: int, n: int, a: int) -> Matrix:
    nb = F.A.hilbert(a)
    dod: dict[int, dict] = {}
    for phi, col in F.dA.action_columns(F.dprime_side, t, n).items():
        for phi2, v in col.items():
            for b in range(nb):
                dod.setdefault(phi2 * nb + b, {})[phi * nb + b] = v
    return Matrix.from_dod(dod, (dual_dims(F.dA, n - 1) * nb, dual_dims(F.dA, n) * nb), F.A.field)


def coordinate_matrices(F: DoubleComplex, source: LModule, target: LModule) -> dict[int, Matrix]:
    """C_t with (T_t ⊗ 1)·K_n = K_{n-1}·C_t; NotInSpan if the image leaves L_{n-1,a}."""
    n, a = source.n, source.a
    return {t: solve_columns(target.basis, _lift(F, t, n, a) @ source.basis) for t in range(F.A.d)}


def l_differential(F: DoubleComplex, source: LModule, target: LModule) -> FreeMap:
    if source.n < 1 or target.n != source.n - 1 or target.a != source.a:
        raise ValueError("l_differential maps L_{n,a} to L_{n-1,a}")
    images: list[dict] = [{} for _ in range(source.rank)]
    for t, C in coordinate_matrices(F, source, target).items():
        for k2, row in C.dod().items():
            for k, v in row.items():
                images[k].setdefault(k2, {})[t] = v
    return FreeMap(F.A, source.module(), target.module(), images,
                   name=f"L d({source.n},{source.a})")


def augmentation(A: GradedAlgebra, a: int) -> FreeMap:
    """ε_a: L_{0,a} → A, restriction of the multiplication map (target generated in degree 0)."""
    one = A.field.one
    dim = A.hilbert(a)
    return FreeMap(A, GradedFreeModule((a,) * dim, tuple(range(dim))), GradedFreeModule((0,)),
                   [{0: {b: one}} for b in range(dim)], name=f"eps_{a}")


# ── Betti numbers ------------------------------------------------
def betti_formula(A: GradedAlgebra, dA: DualAlgebra, n: int, a: int) -> int:
    """β_{n,n+a}(𝔪^a) = Σ_{i=1}^{a} (−1)^{i+1} dim (A^!)*_{n+i} · dim A_{a−i}."""
    return sum((-1) ** (i + 1) * dual_dims(dA, n + i) * A.hilbert(a - i) for i in range(1, a + 1))


def betti_oracle(F: DoubleComplex, n: int, a: int) -> int:
    return l_module(F, n, a).rank


def betti_quotient(A: GradedAlgebra, dA: DualAlgebra, n: int, a: int) -> int:
    return 1 if n == 0 else betti_formula(A, dA, n - 1, a)


class BettiEntry(BaseModel):
    n: int
    j: int
    beta: int


class BettiTable(BaseModel):
    power: int
    module: str = "m^a"
    entries: list[BettiEntry] = Field(default_factory=list)

    def get(self, n: int, j: int) -> int:
        return next((e.beta for e in self.entries if e.n == n and e.j == j), 0)

    def column(self, n: int) -> int:
        return sum(e.beta for e in self.entries if e.n == n)

    def values(self) -> list[int]:
        return [self.column(n) for n in sorted({e.n for e in self.entries})]

    @property
    def linear(self) -> bool:
        shift = self.power if self.module == "m^a" else self.power - 1
        return all(e.j == e.n + shift for e in self.entries if e.beta and (e.n, e.j) != (0, 0))

    def to_json(self) -> dict:
        return {"power": self.power, "module": self.module, "linear": self.linear,
                "entries": [e.model_dump() for e in self.entries]}

    def to_frame(self) -> pd.DataFrame:
        """Standard layout: columns n, rows j − n, a trailing total row."""
        cols = sorted({e.n for e in self.entries})
        rows = sorted({e.j - e.n for e in self.entries}) or [0]
        df = pd.DataFrame(0, index=rows, columns=cols)
        for e in self.entries:
            df.loc[e.j - e.n, e.n] += e.beta
        df.loc["total:"] = df.sum()
        df.index = [f"{r}:" if r != "total:" else r for r in df.index]
        return df

    def to_text(self) -> str:
        return self.to_frame().to_string()


def betti_table(A: GradedAlgebra, dA: DualAlgebra, a: int, n_max: int,
                source: str = "formula", F: DoubleComplex | None = None, workers: int = 1) -> BettiTable:
    if source == "formula":
        values = [betti_formula(A, dA, n, a) for n in range(n_max + 1)]
    elif source == "oracle":
        F = F or DoubleComplex(A, dA, min(A.cap, dA.cap))
        values = Parallel(n_jobs=workers, prefer="threads")(
            delayed(betti_oracle)(F, n, a) for n in range(n_max + 1))
    else:
        raise ValueError(f"unknown Betti source {source!r}")
    return BettiTable(power=a, entries=[BettiEntry(n=n, j=n + a, beta=b) for n, b in enumerate(values)])


def quotient_betti_table(A: GradedAlgebra, dA: DualAlgebra, a: int, n_max: int) -> BettiTable:
    entries = [BettiEntry(n=0, j=0, beta=1)]
    entries += [BettiEntry(n=n, j=n + a - 1, beta=betti_quotient(A, dA, n, a)) for n in range(1, n_max + 1)]
    return BettiTable(power=a, module="A/m^a", entries=entries)


def poincare_coeffs(A: GradedAlgebra, dA: DualAlgebra, a: int, n_max: int) -> list[int]:
    """Coefficients of z^n y^{n+a}, n ≤ n_max, read off the truncated Poincaré series."""
    P = poincare_series(A, dA, a, n_max)
    return [P.coefficient(n) for n in range(n_max + 1)]


# ── identities --------------------------------------------------
def _sign(i: int) -> int:
    return -1 if i % 2 else 1


def squarefree_identity_check(d: int, a: int, n: int) -> bool:
    if not 1 <= a <= d:
        raise ValueError("need 1 <= a <= d")
    lhs = sum(_sign(i + 1) * binomial(n + i + d - 1, d - 1) * binomial(d, a - i) for i in range(1, a + 1))
    # the lower limit a - d is negative whenever a < d
    rhs = sum(_sign(i) * binomial(n + i + d - 1, d - 1) * binomial(d, a - i) for i in range(a - d, 1))
    return lhs == rhs


def exact_sequence_check(F: DoubleComplex, n: int, a: int) -> bool:
    """dim A^!_{n+1}·dim A_{a−1} = rank L_{n+1,a−1} + rank L_{n,a} for a ≥ 2."""
    if a < 2:
        raise ValueError("the column sequence needs a >= 2")
    middle = dual_dims(F.dA, n + 1) * F.A.hilbert(a - 1)
    return middle == l_module(F, n + 1, a - 1).rank + l_module(F, n, a).rank


def priddy_shift_check(F: DoubleComplex, n_max: int) -> bool:
    """𝕃_1 ≅ (𝕏_1)_{≥1}[−1]: ∂″ carries P_{n+1} onto L_{n,1} and intertwines the differentials."""
    shifts, modules = [], []
    for n in range(n_max + 1):
        L = l_module(F, n, 1)
        if L.rank != dual_dims(F.dA, n + 1):
            return False
        modules.append(L)
        shifts.append(solve_columns(L.basis, F.dsecond(n + 1, 0).generator_matrix()))
    for n in range(1, n_max + 1):
        coords = coordinate_matrices(F, modules[n], modules[n - 1])
        for t, C in coords.items():
            priddy = F.dA.action(F.dprime_side, t, n + 1)
            if C @ shifts[n] != shifts[n - 1] @ priddy:
                log.warning("[L] shift check failed at n=%d, t=%d", n, t)
                return False
    return True


def is_a_linear(L: ChainComplex, a: int) -> bool:
    return all(set(L.term(n).degrees) <= {n + a} and not any(L.strand_dim(n, q) for q in range(n + a))
               for n in range(L.length))


# ── resolve ------------------------------------------------------
class HomologyFailure(BaseModel):
    n: int
    q: int
    dim: int


class AugmentationStrand(BaseModel):
    q: int
    image_dim: int
    h0_dim: int
    expected: int


class ResolutionReport(BaseModel):
    algebra_hash: str
    power: int
    n_max: int
    D: int
    ranks: list[int]
    zero_ideal: bool = False
    koszul_certified: bool = True
    diagnostics_only: bool = False
    complex_ok: bool = True
    minimal: bool = True
    a_linear: bool = True
    exact: bool = True
    homology_failures: list[HomologyFailure] = Field(default_factory=list)
    augmentation: list[AugmentationStrand] = Field(default_factory=list)
    augmentation_ok: bool = True
    augmentation_composes: bool = True
    notes: list[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all((self.complex_ok, self.minimal, self.a_linear, self.exact,
                    self.augmentation_ok, self.augmentation_composes))


@dataclass
class Resolution:
    complex: ChainComplex
    augmentation: FreeMap | None
    modules: list[LModule]
    report: ResolutionReport


def resolve(F: DoubleComplex, a: int, n_max: int, certificate: KoszulCertificate | None = None,
            allow_non_koszul: bool = False, workers: int = 1) -> Resolution:
    """Build 𝕃_a up to n_max with ε_a and verify it; failures land in the report."""
    A, D = F.A, F.D
    certified = certificate is not None and certificate.passed
    if not certified and not allow_non_koszul:
        if certificate is None:
            raise ValueError("resolve needs a Koszul certificate or allow_non_koszul")
        raise NotKoszul(certificate)
    base = dict(algebra_hash=A.presentation.fingerprint(), power=a, n_max=n_max, D=D,
                koszul_certified=certified, diagnostics_only=not certified)

    if A.hilbert(a) == 0:
        log.info("[L] m^%d = 0: zero complex", a)
        report = ResolutionReport(ranks=[0] * (n_max + 1), zero_ideal=True,
                                  notes=[f"m^{a} = 0"], **base)
        return Resolution(ChainComplex(A, [], {}, name=f"L_{a}"), None, [], report)

    if D < n_max + a + 1:
        raise DegreeCapExceeded(n_max + a + 1, D, hint="resolve needs D >= n_max + a + 1")

    modules = [l_module(F, n, a) for n in range(n_max + 1)]
    terms = [L.module() for L in modules]
    diffs = {n: l_differential(F, modules[n], modules[n - 1]) for n in range(1, n_max + 1)}
    L = ChainComplex(A, terms, diffs, name=f"L_{a}")
    eps = augmentation(A, a)
    report = ResolutionReport(ranks=[M.rank for M in modules], **base)
    log.info("[L] a=%d ranks %s", a, report.ranks)

    for n in range(2, n_max + 1):
        for q in range(D + 1):
            if not (L.strand_matrix(n - 1, q) @ L.strand_matrix(n, q)).is_zero():
                report.complex_ok = False
    report.minimal = all(d.is_minimal() for d in diffs.values())
    report.a_linear = is_a_linear(L, a)

    cells = [(n, q) for n in range(1, n_max) for q in range(D + 1)]
    dims = Parallel(n_jobs=workers, prefer="threads")(delayed(L.strand_homology)(n, q) for n, q in cells)
    report.homology_failures = [HomologyFailure(n=n, q=q, dim=h) for (n, q), h in zip(cells, dims) if h]
    report.exact = not report.homology_failures

    for q in range(D + 1):
        image = rank(eps.strand(q).matrix) if q >= a else 0
        h0 = L.strand_dim(0, q) - L.strand_rank(1, q)
        expected = A.hilbert(q) if q >= a else 0
        report.augmentation.append(AugmentationStrand(q=q, image_dim=image, h0_dim=h0, expected=expected))
        if n_max >= 1 and q >= a and not (eps.strand(q).matrix @ L.strand_matrix(1, q)).is_zero():
            report.augmentation_composes = False
    report.augmentation_ok = all(s.image_dim == s.expected == s.h0_dim for s in report.augmentation)

    if not report.passed:
        log.warning("[L] resolution checks failed for a=%d", a)
    return Resolution(L, eps, modules, report)
