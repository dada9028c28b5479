# -------------------------------------------------------------
# utils/dual.py  ·  quadratic dual A^! = T(V*)/Q^⊥
# -------------------------------------------------------------
"""
The pairing between V⊗V and V*⊗V* is the identity on word bases, so Q^⊥ is
the right null space of the relation matrix.  A^! is stored with positive
internal degrees: degree i here is the component (A^!)_{-i}.
"""
import logging
from dataclasses import dataclass, field

from utils.algebra import GradedAlgebra, QuadraticPresentation
from utils.errors import DegreeCapExceeded
from utils.exactlin import Matrix, kernel_basis, same_row_space
from utils.freetensor import NCPoly

log = logging.getLogger(__name__)

SIDES = ("left", "right")


@dataclass
class DualAlgebra:
    source: QuadraticPresentation
    presentation: QuadraticPresentation
    carrier: GradedAlgebra
    _actions: dict = field(default_factory=dict, repr=False)

    @property
    def cap(self) -> int:
        return self.carrier.cap

    def action(self, side: str, t: int, i: int) -> Matrix:
        """Transpose of multiplication by x_t^* on one side, (A^!)*_i → (A^!)*_{i-1}.

        Shape dim A^!_{i-1} × dim A^!_i: entry [b', b] is the coefficient of b
        in x_t^*·b' (left) or b'·x_t^* (right).
        """
        if side not in SIDES:
            raise ValueError(f"unknown side {side!r}")
        if not 1 <= i <= self.cap:
            raise DegreeCapExceeded(i, self.cap)
        key = (side, t, i)
        m = self._actions.get(key)
        if m is None:
            B = self.carrier
            rows = B.hilbert(i - 1)
            if side == "left":
                dod = {b: dict(B.multiply(1, t, i - 1, b)) for b in range(rows)}
            else:
                dod = {b: dict(B.multiply(i - 1, b, 1, t)) for b in range(rows)}
            m = Matrix.from_dod(dod, (rows, B.hilbert(i)), B.field)
            self._actions[key] = m
        return m

    def action_columns(self, side: str, t: int, i: int) -> dict:
        """For each φ ∈ basis of (A^!)*_i, the sparse column {φ': coefficient}."""
        return self.action(side, t, i).transpose().dod()


def quadratic_dual(pres: QuadraticPresentation, cap: int, method: str | None = None) -> DualAlgebra:
    d = pres.d
    perp = kernel_basis(pres.relation_matrix())
    relations = [NCPoly.from_vector(col, d, 2) for col in perp.columns()]
    names = [f"{n}*" for n in pres.generator_names]
    dual_pres = QuadraticPresentation.create(pres.field, names, relations, commutative=False)
    log.info("[dual] dim Q = %d, dim Q^perp = %d (d^2 = %d)", len(pres.relations), len(relations), d * d)
    return DualAlgebra(pres, dual_pres, GradedAlgebra.build(dual_pres, cap, method))


def dual_dims(dA: DualAlgebra, i: int) -> int:
    return dA.carrier.hilbert(i)


def dual_action_matrices(dA: DualAlgebra, t: int, i: int) -> tuple[Matrix, Matrix]:
    return dA.action("left", t, i), dA.action("right", t, i)


def double_dual_check(pres: QuadraticPresentation) -> bool:
    """Q^⊥⊥ == Q as subspaces of V⊗V."""
    R = pres.relation_matrix()
    perp = kernel_basis(R)
    perp_perp = kernel_basis(perp.transpose())
    ok = same_row_space(perp_perp.transpose(), R)
    if not ok:
        log.warning("[dual] double dual differs from Q for %s", pres.generator_names)
    return ok
