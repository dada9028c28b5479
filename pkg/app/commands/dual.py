# -------------------------------------------------------------
# commands/dual.py  ·  “dual” command: the quadratic dual presentation
# -------------------------------------------------------------
import logging

from config import EXIT_INVARIANT, EXIT_OK, RunConfig
from utils.algebra import QuadraticPresentation
from utils.dual import double_dual_check, dual_dims, quadratic_dual
from utils.presentation import render_poly

SCHEMA = "dual"
log = logging.getLogger(__name__)


def render(pres: QuadraticPresentation, config: RunConfig) -> tuple[dict, int]:
    D = config.max_degree
    dA = quadratic_dual(pres, D)
    names = dA.presentation.generator_names
    doc = {
        "command": "dual",
        "algebra_hash": pres.fingerprint(),
        "field": str(pres.field),
        "D": D,
        "generators": list(names),
        "relations": [render_poly(q, names, pres.field, sep=" ") for q in dA.presentation.relations],
        "dims": [dual_dims(dA, i) for i in range(D + 1)],
        "relation_dims": {"Q": len(pres.relations), "Q_perp": len(dA.presentation.relations)},
        "double_dual": double_dual_check(pres),
    }
    log.info("[dual] %d relations, dims %s", len(doc["relations"]), doc["dims"])
    return doc, EXIT_OK if doc["double_dual"] else EXIT_INVARIANT


def to_text(doc: dict) -> str:
    lines = [
        f"dual over {doc['field']}  (hash {doc['algebra_hash'][:12]})",
        f"generators: {', '.join(doc['generators'])}",
        "relations:",
        *(f"  {r}" for r in doc["relations"]),
        f"dims (i = 0..{doc['D']}): {' '.join(map(str, doc['dims']))}",
        f"double dual recovers Q: {'yes' if doc['double_dual'] else 'NO'}",
    ]
    return "\n".join(lines)
