# -------------------------------------------------------------
# commands/common.py  ·  shared state and output checks for the commands
# -------------------------------------------------------------
import json
import logging
from dataclasses import dataclass, field

import jsonschema

from config import SCHEMA_DIR, RunConfig
from utils.algebra import GradedAlgebra, QuadraticPresentation
from utils.complexes import DoubleComplex, KoszulCertificate, enveloping_double_complex, koszul_check
from utils.dual import DualAlgebra, quadratic_dual
from utils.errors import InvariantViolation, NotKoszul

log = logging.getLogger(__name__)


@dataclass
class Workspace:
    """A, A^! and 𝔽 built once per run, all to the run's degree cap."""

    presentation: QuadraticPresentation
    config: RunConfig
    A: GradedAlgebra
    dA: DualAlgebra
    family: DoubleComplex
    _certificate: KoszulCertificate | None = field(default=None, repr=False)

    @classmethod
    def open(cls, pres: QuadraticPresentation, config: RunConfig) -> "Workspace":
        D = config.max_degree
        A = GradedAlgebra.build(pres, D)
        dA = quadratic_dual(pres, D)
        return cls(pres, config, A, dA, enveloping_double_complex(A, dA, D))

    def certificate(self) -> KoszulCertificate:
        if self._certificate is None:
            self._certificate = koszul_check(self.A, self.dA, self.config.max_degree,
                                             workers=self.config.parallel)
        return self._certificate

    def require_koszul(self) -> KoszulCertificate:
        """The certificate; raises NotKoszul unless the run allows diagnostics on failure."""
        cert = self.certificate()
        if not cert.passed and not self.config.allow_non_koszul:
            raise NotKoszul(cert)
        if not cert.passed:
            log.warning("[run] not Koszul up to %d; continuing with diagnostics only", cert.D)
        return cert


def load_schema(name: str) -> dict:
    return json.loads((SCHEMA_DIR / f"{name}.json").read_text(encoding="utf-8"))


def validate(name: str, document: dict) -> None:
    try:
        jsonschema.validate(instance=document, schema=load_schema(name))
    except jsonschema.ValidationError as exc:
        raise InvariantViolation(f"{name} document does not match its schema: {exc.message}") from None


def dump(document: dict) -> str:
    return json.dumps(document, indent=2, sort_keys=True)
