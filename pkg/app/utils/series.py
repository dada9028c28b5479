# -------------------------------------------------------------
# utils/series.py  ·  truncated Hilbert and Poincaré series
# -------------------------------------------------------------
from sympy import ZZ
from sympy.polys.rings import PolyElement, ring

from utils.algebra import GradedAlgebra
from utils.dual import DualAlgebra, dual_dims

T_RING, _t = ring("t", ZZ)
YZ_RING, _y, _z = ring("y,z", ZZ)


class SeriesPoly:
    """A power series known up to ``order``: no exponent above it is ever formed."""

    __slots__ = ("poly", "order")

    def __init__(self, poly: PolyElement, order: int):
        self.poly = _truncate(poly, order)
        self.order = order

    @classmethod
    def from_coeffs(cls, coeffs: list[int], order: int | None = None) -> "SeriesPoly":
        order = len(coeffs) - 1 if order is None else order
        return cls(T_RING.from_dict({(m,): c for m, c in enumerate(coeffs[:order + 1]) if c}), order)

    @property
    def ring(self):
        return self.poly.ring

    def coeffs(self) -> list[int]:
        return [int(self.poly.get((m,), 0)) for m in range(self.order + 1)]

    def coeff(self, monom: tuple[int, ...]) -> int:
        return int(self.poly.get(monom, 0))

    def __mul__(self, other: "SeriesPoly") -> "SeriesPoly":
        order = min(self.order, other.order)
        return SeriesPoly(_truncate(self.poly, order) * _truncate(other.poly, order), order)

    def __neg__(self) -> "SeriesPoly":
        return SeriesPoly(-self.poly, self.order)

    def __eq__(self, other) -> bool:
        return isinstance(other, SeriesPoly) and self.order == other.order and self.poly == other.poly

    def __repr__(self) -> str:
        return f"SeriesPoly({self.poly.as_expr()} + O({self.order + 1}))"


def _truncate(p: PolyElement, order: int) -> PolyElement:
    return p.ring.from_dict({m: c for m, c in p.items() if max(m, default=0) <= order})


# ── Hilbert series -----------------------------------------------
def hilbert_series(dims: list[int]) -> SeriesPoly:
    return SeriesPoly.from_coeffs(list(dims))


def quotient_hilbert_series(A: GradedAlgebra, a: int, order: int) -> SeriesPoly:
    """H_{A/𝔪^a}(t) = Σ_{j<a} dim A_j t^j."""
    return SeriesPoly.from_coeffs([A.hilbert(j) if j < a else 0 for j in range(order + 1)], order)


def substitute_yz(s: SeriesPoly, sign: int = 1) -> SeriesPoly:
    if s.ring != T_RING:
        raise ValueError("substitute_yz takes a series in t")
    terms = {(m, m): c * sign ** m for (m,), c in s.poly.items()}
    return SeriesPoly(YZ_RING.from_dict(terms), s.order)


# ── Poincaré series of 𝔪^a ---------------------------------------
class PoincareSeries:
    """P(y, z) = −(−z)^{−a} H_{(A^!)*}(yz) H_{A/𝔪^a}(−yz), held as G = −H(yz)·H_q(−yz).

    The z^{−a} shift stays symbolic: the coefficient of z^n y^{n+a} in P is
    (−1)^a times the coefficient of (yz)^{n+a} in G.
    """

    def __init__(self, G: SeriesPoly, a: int):
        self.G = G
        self.a = a

    @property
    def order(self) -> int:
        return self.G.order - self.a

    def coefficient(self, n: int) -> int:
        if n > self.order:
            raise ValueError(f"coefficient z^{n} lies beyond the truncation order {self.order}")
        m = n + self.a
        return (-1) ** self.a * self.G.coeff((m, m))


def poincare_series(A: GradedAlgebra, dA: DualAlgebra, a: int, n_max: int) -> PoincareSeries:
    order = n_max + a
    H_dual = hilbert_series([dual_dims(dA, i) for i in range(order + 1)])
    H_quot = quotient_hilbert_series(A, a, order)
    G = -(substitute_yz(H_dual) * substitute_yz(H_quot, -1))
    return PoincareSeries(G, a)


def hilbert_consistency(A: GradedAlgebra, betti: list[int], a: int) -> bool:
    """H_A(t)·Σ_n (−1)^n β_n t^{n+a} = H_{𝔪^a}(t) through the degrees the table reaches."""
    order = min(A.cap, len(betti) - 1 + a)
    H_A = hilbert_series(A.dims(order))
    chi = SeriesPoly.from_coeffs([(-1) ** (m - a) * betti[m - a] if m >= a else 0
                                  for m in range(order + 1)], order)
    H_ideal = SeriesPoly.from_coeffs([A.hilbert(m) if m >= a else 0 for m in range(order + 1)], order)
    return H_A * chi == H_ideal
