# -------------------------------------------------------------
# commands/resolve.py  ·  “resolve” command: build and verify 𝕃_a
# -------------------------------------------------------------
from config import EXIT_INVARIANT, EXIT_OK, RunConfig
from commands.common import Workspace
from utils.algebra import QuadraticPresentation
from utils.lcomplex import resolve

SCHEMA = "resolve"


def render(pres: QuadraticPresentation, config: RunConfig) -> tuple[dict, int]:
    ws = Workspace.open(pres, config)
    if config.power > config.max_degree or ws.A.hilbert(config.power) > 0:
        config.require_cap()
    cert = ws.require_koszul()
    res = resolve(ws.family, config.power, config.nmax, certificate=cert,
                  allow_non_koszul=config.allow_non_koszul, workers=config.parallel)
    report = res.report
    doc = {"command": "resolve", "koszul": cert.label(), "passed": report.passed,
           **report.model_dump(mode="json")}
    return doc, EXIT_OK if report.passed else EXIT_INVARIANT


def to_text(doc: dict) -> str:
    flags = ("complex_ok", "minimal", "a_linear", "exact", "augmentation_ok", "augmentation_composes")
    lines = [f"L-complex for m^{doc['power']}, n <= {doc['n_max']}, D = {doc['D']}  ({doc['koszul']})",
             f"ranks: {doc['ranks']}"]
    lines += [f"  {f:<22} {'ok' if doc[f] else 'FAILED'}" for f in flags]
    lines += [f"  {h['n']}:{h['q']} homology {h['dim']}" for h in doc["homology_failures"]]
    lines += [f"note: {n}" for n in doc["notes"]]
    lines.append("passed" if doc["passed"] else "FAILED")
    return "\n".join(lines)
