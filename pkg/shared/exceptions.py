"""
Structured error hierarchy shared by every component.
"""
from typing import Any, Dict, Optional


class SatoTateError(Exception):
    """Base error; ``details`` carries machine-readable context."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = dict(details or {})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": type(self).__name__,
            "message": self.message,
            "details": self.details,
        }


class RankMismatchError(SatoTateError, ValueError):
    """Operands live in lattices of different rank."""

    def __init__(self, left: int, right: int):
        super().__init__(
            f"Rank mismatch: {left} != {right}",
            {"left_rank": left, "right_rank": right},
        )


class SpecError(SatoTateError, ValueError):
    """A group/representation spec is malformed or internally inconsistent."""


class IncompatibleRepError(SpecError):
    """A RepSpec atom does not fit the group variant it is applied to."""


class CatalogError(SpecError):
    """Unknown catalog entry, corrupt data file or checksum mismatch."""


class UnsupportedGroupError(SpecError):
    """The requested group/rep combination has no evaluator."""


class AlreadySemisimpleError(SpecError):
    """Torsion approximation asked of a group with no central torus."""


class EvaluationError(SatoTateError, ArithmeticError):
    """An exact evaluator hit an internal-consistency failure."""


class CellEvaluationError(EvaluationError):
    """Evaluation failure attached to a moment-table cell."""

    def __init__(self, a: int, b: int, cause: Exception):
        details = {"a": a, "b": b, "cause": type(cause).__name__}
        if isinstance(cause, SatoTateError):
            details.update(cause.details)
        super().__init__(f"Cell ({a},{b}) failed: {cause}", details)
        self.a = a
        self.b = b
        self.cause = cause


class DegenerateSampleError(SatoTateError, ArithmeticError):
    """Orthonormalization of a Ginibre draw kept producing a singular factor."""
