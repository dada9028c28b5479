# -------------------------------------------------------------
# utils/logger.py  ·  root logging for the engine and the CLI
# -------------------------------------------------------------
import logging
import sys
from logging.handlers import RotatingFileHandler

from config import LOG_BACKUPS, LOG_DIR, LOG_FILE, LOG_LEVEL, LOG_MAX_BYTES

_FORMAT = logging.Formatter("%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
                            datefmt="%Y-%m-%d %H:%M:%S")

root = logging.getLogger()
root.setLevel(LOG_LEVEL)

# stdout is reserved for documents
if not any(getattr(h, "stream", None) is sys.stderr for h in root.handlers):
    _console = logging.StreamHandler(sys.stderr)
    _console.setFormatter(_FORMAT)
    root.addHandler(_console)

if not any(isinstance(h, RotatingFileHandler) for h in root.handlers):
    LOG_DIR.mkdir(exist_ok=True)
    _file = RotatingFileHandler(LOG_DIR / LOG_FILE, maxBytes=LOG_MAX_BYTES,
                                backupCount=LOG_BACKUPS, encoding="utf-8")
    _file.setFormatter(_FORMAT)
    root.addHandler(_file)

for noisy in ("sympy", "joblib"):
    logging.getLogger(noisy).setLevel(logging.WARNING)


def get_logger(name: str | None = None, level: int | None = None) -> logging.Logger:
    lg = logging.getLogger(name or "engine")
    if level is not None:
        lg.setLevel(level)
    return lg


def set_verbosity(level: int) -> None:
    """-v / -q on the command group."""
    root.setLevel(level)
