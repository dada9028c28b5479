# -------------------------------------------------------------
# commands/koszul_check.py  ·  “koszul-check” command
# -------------------------------------------------------------
from config import EXIT_NOT_KOSZUL, EXIT_OK, RunConfig
from commands.common import Workspace
from utils.algebra import QuadraticPresentation

SCHEMA = "koszul_check"


def render(pres: QuadraticPresentation, config: RunConfig) -> tuple[dict, int]:
    cert = Workspace.open(pres, config).certificate()
    doc = {"command": "koszul-check", "label": cert.label(), **cert.model_dump(mode="json")}
    return doc, EXIT_OK if cert.passed else EXIT_NOT_KOSZUL


def to_text(doc: dict) -> str:
    out = f"{doc['label']}  (hash {doc['algebra_hash'][:12]}, D = {doc['D']})"
    w = doc.get("witness")
    if w:
        out += (f"\nwitness: H_{w['homological_degree']} in strand {w['internal_degree']}"
                f" has dimension {w['homology_dim']}")
    return out
