# -------------------------------------------------------------
# commands/betti.py  ·  “betti” command: formula against kernel-rank oracle
# -------------------------------------------------------------
import logging

from config import EXIT_INVARIANT, EXIT_OK, RunConfig
from commands.common import Workspace
from utils.algebra import QuadraticPresentation
from utils.lcomplex import BettiTable, betti_table, quotient_betti_table

SCHEMA = "betti"
log = logging.getLogger(__name__)


def render(pres: QuadraticPresentation, config: RunConfig) -> tuple[dict, int]:
    config.require_cap()
    ws = Workspace.open(pres, config)
    cert = ws.require_koszul()
    a, nmax = config.power, config.nmax
    formula = betti_table(ws.A, ws.dA, a, nmax, "formula")
    oracle = betti_table(ws.A, ws.dA, a, nmax, "oracle", F=ws.family, workers=config.parallel)
    agree = formula.values() == oracle.values()
    if not agree:
        log.error("[betti] formula %s != oracle %s", formula.values(), oracle.values())
    doc = {
        "command": "betti",
        "algebra_hash": pres.fingerprint(),
        "power": a,
        "nmax": nmax,
        "D": config.max_degree,
        "koszul": cert.label(),
        "diagnostics_only": not cert.passed,
        "formula": formula.values(),
        "oracle": oracle.values(),
        "agree": agree,
        "table": oracle.to_json(),
    }
    if config.quotient:
        doc["quotient"] = quotient_betti_table(ws.A, ws.dA, a, nmax).to_json()
    return doc, EXIT_OK if agree else EXIT_INVARIANT


def to_text(doc: dict) -> str:
    lines = [f"Betti numbers of m^{doc['power']}  ({doc['koszul']})",
             BettiTable.model_validate(doc["table"]).to_text(),
             f"formula: {doc['formula']}",
             f"oracle:  {doc['oracle']}",
             "agree" if doc["agree"] else "DISAGREE"]
    if "quotient" in doc:
        lines += [f"Betti numbers of A/m^{doc['power']}",
                  BettiTable.model_validate(doc["quotient"]).to_text()]
    return "\n".join(lines)
