import json

import pytest
from click.testing import CliRunner

from app import cli
from commands import common
from config import CORPUS_DIR, EXIT_CAP, EXIT_INPUT, EXIT_NOT_KOSZUL, EXIT_OK
from utils.complexes import KoszulCertificate, Witness


def _pres(name: str) -> str:
    return str(CORPUS_DIR / f"{name}.pres")


@pytest.fixture
def run():
    runner = CliRunner(mix_stderr=False)

    def _run(*args):
        return runner.invoke(cli, [str(a) for a in args])

    return _run


@pytest.fixture
def not_koszul(monkeypatch):
    """Every certificate fails with a fixed witness."""
    def fake(A, dA, D, workers=1):
        return KoszulCertificate(algebra_hash=A.presentation.fingerprint(), D=D, verdict="failed",
                                 witness=Witness(homological_degree=1, internal_degree=2, homology_dim=1,
                                                 cycle={0: 1}))
    monkeypatch.setattr(common, "koszul_check", fake)


# ── successful runs ----------------------------------------------
def test_dual(run):
    result = run("dual", _pres("example_zero"), "--max-degree", 6)
    assert result.exit_code == EXIT_OK, result.stderr
    doc = json.loads(result.stdout)
    common.validate("dual", doc)
    assert doc["dims"] == [1, 3, 6, 12, 24, 48, 96]
    assert doc["relations"] == ["x* z* + z* x*", "y* z* + z* y*", "z* z*"]
    assert doc["relation_dims"] == {"Q": 6, "Q_perp": 3}
    assert doc["double_dual"]


def test_dual_over_prime_field(run):
    result = run("dual", _pres("example_zero"), "--max-degree", 3, "--field", "GF 7")
    assert result.exit_code == EXIT_OK
    doc = json.loads(result.stdout)
    assert doc["field"] == "GF 7"
    assert doc["dims"] == [1, 3, 6, 12]


def test_koszul_check(run):
    result = run("koszul-check", _pres("fibonacci"), "--max-degree", 5)
    assert result.exit_code == EXIT_OK
    doc = json.loads(result.stdout)
    assert doc["label"] == "koszul_up_to(5)"
    assert doc["witness"] is None


def test_betti(run):
    result = run("betti", _pres("fibonacci"), "--power", 2, "--nmax", 3, "--max-degree", 6)
    assert result.exit_code == EXIT_OK, result.stderr
    doc = json.loads(result.stdout)
    assert doc["formula"] == doc["oracle"] == [4, 7, 11, 18]
    assert doc["agree"]
    assert doc["table"]["linear"]
    assert "quotient" not in doc


def test_betti_quotient_table(run):
    result = run("betti", _pres("fibonacci"), "--power", 2, "--nmax", 3, "--max-degree", 6,
                 "--quotient", "--format", "table")
    assert result.exit_code == EXIT_OK
    assert "total:" in result.stdout
    assert "A/m^2" in result.stdout


def test_betti_quotient_json(run):
    result = run("betti", _pres("example_zero"), "--power", 1, "--nmax", 2, "--max-degree", 4, "--quotient")
    doc = json.loads(result.stdout)
    assert doc["quotient"]["module"] == "A/m^a"
    assert [e["beta"] for e in doc["quotient"]["entries"]] == [1, 3, 6]


def test_resolve_zero_ideal(run):
    result = run("resolve", _pres("squarefree2"), "--power", 3, "--nmax", 2, "--max-degree", 6)
    assert result.exit_code == EXIT_OK
    doc = json.loads(result.stdout)
    assert doc["zero_ideal"]
    assert doc["ranks"] == [0, 0, 0]
    assert doc["passed"]


def test_resolve_vanishing_power_skips_the_cap(run):
    result = run("resolve", _pres("squarefree3"), "--power", 5)
    assert result.exit_code == EXIT_OK, result.stderr
    doc = json.loads(result.stdout)
    assert doc["zero_ideal"] and doc["passed"]
    assert doc["notes"] == ["m^5 = 0"]
    assert doc["ranks"] == [0] * 6


def test_resolve_table(run):
    result = run("resolve", _pres("example_zero"), "--power", 2, "--nmax", 2, "--max-degree", 5,
                 "--format", "table", "--parallel", 2)
    assert result.exit_code == EXIT_OK
    assert "ranks: [3, 6, 12]" in result.stdout
    assert result.stdout.rstrip().endswith("passed")


def test_verify(run):
    result = run("verify", _pres("example_zero"), "--power", 2, "--nmax", 2, "--max-degree", 5)
    assert result.exit_code == EXIT_OK, result.stderr
    doc = json.loads(result.stdout)
    assert doc["passed"]
    assert all(s["passed"] for s in doc["sections"].values())
    assert doc["sections"]["resolution"]["ranks"] == [3, 6, 12]


def test_out_file(run, tmp_path):
    out = tmp_path / "dual.json"
    result = run("dual", _pres("fibonacci"), "--max-degree", 4, "--out", out)
    assert result.exit_code == EXIT_OK
    assert result.stdout == ""
    assert json.loads(out.read_text())["dims"] == [1, 3, 5, 8, 13]


def test_output_is_deterministic(run):
    args = ("betti", _pres("fibonacci"), "--power", 2, "--nmax", 2, "--max-degree", 5)
    assert run(*args).stdout == run(*args).stdout


# ── failures and exit codes ----------------------------------------
def test_degree_cap(run):
    result = run("betti", _pres("example_zero"), "--power", 3, "--nmax", 5, "--max-degree", 6)
    assert result.exit_code == EXIT_CAP
    assert "--max-degree" in result.stderr


def test_resolve_degree_cap_for_nonzero_power(run):
    result = run("resolve", _pres("squarefree3"), "--power", 3, "--nmax", 5, "--max-degree", 8)
    assert result.exit_code == EXIT_CAP
    assert "--max-degree" in result.stderr


def test_presentation_that_is_not_utf8(run, tmp_path):
    path = tmp_path / "latin1.pres"
    path.write_bytes(b"generators: x\nrelations: x*x \xff\n")
    result = run("dual", path)
    assert result.exit_code == EXIT_INPUT
    assert result.stderr.startswith("error:")
    assert "not UTF-8" in result.stderr
    assert result.stdout == ""


@pytest.mark.parametrize("args", [
    ("dual", _pres("cubic")),
    ("dual", "no/such/file.pres"),
    ("dual", _pres("example_zero"), "--field", "GF 8"),
    ("betti", _pres("example_zero"), "--power", 0),
    ("dual", _pres("example_zero"), "--format", "xml"),
])
def test_input_errors(run, args):
    result = run(*args)
    assert result.exit_code == EXIT_INPUT
    assert result.stderr.startswith("error:")
    assert result.stdout == ""


def test_not_koszul(run, not_koszul):
    result = run("koszul-check", _pres("example_zero"), "--max-degree", 4)
    assert result.exit_code == EXIT_NOT_KOSZUL
    doc = json.loads(result.stdout)
    assert doc["label"] == "failed"
    assert doc["witness"]["homology_dim"] == 1

    result = run("betti", _pres("example_zero"), "--max-degree", 4, "--nmax", 2)
    assert result.exit_code == EXIT_NOT_KOSZUL
    assert "not acyclic" in result.stderr


def test_allow_non_koszul(run, not_koszul):
    result = run("betti", _pres("example_zero"), "--max-degree", 4, "--nmax", 2, "--allow-non-koszul")
    assert result.exit_code == EXIT_OK
    doc = json.loads(result.stdout)
    assert doc["diagnostics_only"]
    assert doc["koszul"] == "failed"


def test_verify_skips_after_failed_certificate(run, not_koszul):
    result = run("verify", _pres("example_zero"), "--max-degree", 4, "--nmax", 2)
    assert result.exit_code == EXIT_NOT_KOSZUL
    sections = json.loads(result.stdout)["sections"]
    assert sections["betti"] == {"passed": False, "skipped": True}
    assert sections["dual"]["passed"]
