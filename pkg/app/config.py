# ------------- config.py -----------------
import logging
import pathlib

from pydantic import BaseModel, ConfigDict, Field, field_validator

ROOT       = pathlib.Path(__file__).resolve().parent
LOG_DIR    = ROOT / "logs"
SCHEMA_DIR = ROOT / "schemas"
CORPUS_DIR = ROOT / "corpus"

LOG_FILE      = "engine.log"
LOG_LEVEL     = logging.INFO
LOG_MAX_BYTES = 2_000_000
LOG_BACKUPS   = 5

DEFAULT_MAX_DEGREE = 8
DEFAULT_NMAX       = 5
DEFAULT_POWER      = 1
DEFAULT_PRIME      = 32003          # GF(p) speed option
WORD_CAP           = 2 ** 22        # basis words of V^{⊗n} per degree
DENSE_FILL         = 0.5            # switch echelon to the dense backend above this fill

# which transpose of multiplication on A^! drives each differential
DPRIME_SIDE  = "left"
DSECOND_SIDE = "right"

ALGEBRA_BUILD = "incremental"       # or "direct"

EXIT_OK        = 0
EXIT_INPUT     = 1
EXIT_NOT_KOSZUL = 2
EXIT_CAP       = 3
EXIT_INVARIANT = 4


class RunConfig(BaseModel):
    """Options shared by every CLI command."""

    model_config = ConfigDict(frozen=True)

    max_degree: int = Field(DEFAULT_MAX_DEGREE, ge=0)
    power: int = Field(DEFAULT_POWER, ge=1)
    nmax: int = Field(DEFAULT_NMAX, ge=0)
    fmt: str = "json"
    field: str | None = None
    parallel: int = Field(1, ge=1)
    allow_non_koszul: bool = False
    quotient: bool = False

    @field_validator("fmt")
    @classmethod
    def _known_format(cls, v: str) -> str:
        if v not in ("json", "table"):
            raise ValueError(f"unknown format {v!r} (json | table)")
        return v

    def require_cap(self) -> None:
        """Fail fast when the degree cap cannot hold every strand a run touches."""
        from utils.errors import DegreeCapExceeded

        need = self.power + self.nmax + 1
        if self.max_degree < need:
            raise DegreeCapExceeded(need, self.max_degree,
                                    hint="--max-degree must be at least power + nmax + 1")
