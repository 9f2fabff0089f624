"""Exception hierarchy shared by all modules.

Every error carries a machine-readable ``code`` and the process exit code the
CLI maps it to.
"""

from __future__ import annotations


class GluingError(Exception):
    code = "error"
    exit_code = 1

    def __init__(self, message: str = "", **detail):
        super().__init__(message or self.code)
        self.detail = detail

    def to_json(self) -> dict:
        out = {"code": self.code, "message": str(self)}
        if self.detail:
            out["detail"] = self.detail
        return out


class MixedRings(GluingError):
    code = "mixed_rings"
    exit_code = 4


class NotAUnit(GluingError):
    code = "not_a_unit"
    exit_code = 2


class NotInvertible(GluingError):
    code = "not_invertible"
    exit_code = 2


class SingularMatrix(NotInvertible):
    code = "singular_matrix"


class PrecisionExhausted(GluingError):
    code = "precision_exhausted"
    exit_code = 3


class UndecidableError(GluingError):
    code = "undecidable"
    exit_code = 3


class CapExceeded(GluingError):
    code = "cap_exceeded"
    exit_code = 3


class UnsupportedRing(GluingError):
    code = "unsupported_ring"
    exit_code = 4


class UnsupportedTransition(GluingError):
    code = "unsupported_transition"
    exit_code = 4


class SchemaError(GluingError):
    code = "schema_error"
    exit_code = 4
