# -------------------------------------------------------------
# commands/verify.py  ·  “verify” command: every cross-check in one report
# -------------------------------------------------------------
import logging

from config import EXIT_INVARIANT, EXIT_NOT_KOSZUL, EXIT_OK, RunConfig
from commands.common import Workspace
from utils.algebra import QuadraticPresentation
from utils.dual import double_dual_check
from utils.lcomplex import betti_formula, betti_oracle, poincare_coeffs, resolve
from utils.series import hilbert_consistency

SCHEMA = "verify"
SECTIONS = ("dual", "koszul", "betti", "poincare", "resolution", "hilbert")
log = logging.getLogger(__name__)


def render(pres: QuadraticPresentation, config: RunConfig) -> tuple[dict, int]:
    config.require_cap()
    ws = Workspace.open(pres, config)
    A, dA, F = ws.A, ws.dA, ws.family
    nmax, powers = config.nmax, range(1, config.power + 1)
    sections: dict[str, dict] = {}

    d = pres.d
    sections["dual"] = {
        "passed": double_dual_check(pres) and len(pres.relations) + len(dA.presentation.relations) == d * d,
        "Q": len(pres.relations),
        "Q_perp": len(dA.presentation.relations),
    }

    cert = ws.certificate()
    sections["koszul"] = {"passed": cert.passed, "label": cert.label(),
                          "witness": cert.witness.model_dump(mode="json") if cert.witness else None}
    if not cert.passed and not config.allow_non_koszul:
        for name in SECTIONS[2:]:
            sections[name] = {"passed": False, "skipped": True}
        return _document(pres, config, sections), EXIT_NOT_KOSZUL

    rows = []
    for a in powers:
        formula = [betti_formula(A, dA, n, a) for n in range(nmax + 1)]
        oracle = [betti_oracle(F, n, a) for n in range(nmax + 1)]
        rows.append({"power": a, "formula": formula, "oracle": oracle, "agree": formula == oracle})
    sections["betti"] = {"passed": all(r["agree"] for r in rows), "rows": rows}

    series = [{"power": r["power"], "coefficients": poincare_coeffs(A, dA, r["power"], nmax)} for r in rows]
    sections["poincare"] = {"passed": all(s["coefficients"] == r["formula"] for s, r in zip(series, rows)),
                            "rows": series}

    report = resolve(F, config.power, nmax, certificate=cert,
                     allow_non_koszul=config.allow_non_koszul, workers=config.parallel).report
    sections["resolution"] = {"passed": report.passed, "ranks": report.ranks,
                              "zero_ideal": report.zero_ideal}

    sections["hilbert"] = {"passed": all(hilbert_consistency(A, r["formula"], r["power"]) for r in rows)}

    failed = [name for name in SECTIONS if not sections[name]["passed"]]
    if failed:
        log.error("[verify] failed sections: %s", failed)
    return _document(pres, config, sections), EXIT_INVARIANT if failed else EXIT_OK


def _document(pres: QuadraticPresentation, config: RunConfig, sections: dict) -> dict:
    return {
        "command": "verify",
        "algebra_hash": pres.fingerprint(),
        "D": config.max_degree,
        "power": config.power,
        "nmax": config.nmax,
        "passed": all(s["passed"] for s in sections.values()),
        "sections": sections,
    }


def to_text(doc: dict) -> str:
    lines = [f"verify  (hash {doc['algebra_hash'][:12]}, D = {doc['D']}, a <= {doc['power']}, n <= {doc['nmax']})"]
    for name in SECTIONS:
        s = doc["sections"][name]
        state = "skipped" if s.get("skipped") else ("ok" if s["passed"] else "FAILED")
        lines.append(f"  {name:<12} {state}")
    return "\n".join(lines)
