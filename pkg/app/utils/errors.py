# -------------------------------------------------------------
# utils/errors.py  ·  engine exceptions, each mapped to a CLI exit code
# -------------------------------------------------------------
from config import EXIT_CAP, EXIT_INPUT, EXIT_INVARIANT, EXIT_NOT_KOSZUL


class EngineError(Exception):
    exit_code = EXIT_INVARIANT


# ── input -------------------------------------------------------
class InputError(EngineError):
    exit_code = EXIT_INPUT


class PresentationSyntaxError(InputError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class NonQuadraticRelation(InputError):
    def __init__(self, term: str, degree: int, line: int | None = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"relation term {term!r} has degree {degree}, expected 2{where}")
        self.term = term
        self.degree = degree
        self.line = line


class UnknownGenerator(InputError):
    def __init__(self, name: str, line: int | None = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"unknown generator {name!r}{where}")
        self.name = name


class InvalidField(InputError):
    pass


# ── Koszulness ---------------------------------------------------
class NotKoszul(EngineError):
    exit_code = EXIT_NOT_KOSZUL

    def __init__(self, certificate):
        w = certificate.witness
        super().__init__(
            f"Priddy complex not acyclic: H_{w.homological_degree} strand "
            f"{w.internal_degree} has dimension {w.homology_dim}"
        )
        self.certificate = certificate


# ── degree caps --------------------------------------------------
class DegreeCapExceeded(EngineError):
    exit_code = EXIT_CAP

    def __init__(self, degree: int, cap: int, hint: str = ""):
        msg = f"degree {degree} exceeds the cap {cap}"
        super().__init__(f"{msg}; {hint}" if hint else msg)
        self.degree = degree
        self.cap = cap


class WordCapExceeded(EngineError):
    exit_code = EXIT_CAP

    def __init__(self, degree: int, size: int, cap: int):
        super().__init__(f"degree {degree}: {size} basis words exceed the word cap {cap}")
        self.degree = degree
        self.size = size


# ── internal invariants -----------------------------------------
class InvariantViolation(EngineError):
    exit_code = EXIT_INVARIANT


class NotInSpan(InvariantViolation):
    pass


class SignRuleViolation(InvariantViolation):
    def __init__(self, n: int, q: int):
        super().__init__(f"total differential does not square to zero at n={n}, strand q={q}")
        self.n = n
        self.q = q


class NotAComplex(InvariantViolation):
    def __init__(self, n: int, q: int):
        super().__init__(f"d_{n - 1} ∘ d_{n} ≠ 0 on strand {q}")
        self.n = n
        self.q = q
