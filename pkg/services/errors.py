"""Error types raised by the computation services.

Routers translate these into HTTP responses; the CLI maps them to exit codes.
"""
from typing import List, Optional


class NCGError(Exception):
    """Base class for every error raised by the services."""


class TagMismatchError(NCGError, ValueError):
    """Operands live in different group rings."""


class WindowTooSmallError(NCGError, ValueError):
    """The finite window cannot hold the computation without truncation artifacts."""

    def __init__(self, message: str, required: Optional[int] = None):
        super().__init__(message)
        self.required = required


class DimensionMismatchError(NCGError, ValueError):
    """Operators are defined on different windows, block counts or backends."""


class NotAProjectionError(NCGError, ValueError):
    """Element fails p² = p = p*."""


class NotUnitaryError(NCGError, ValueError):
    """Element fails u*u = uu* = 1."""


class NonStabilizedError(NCGError, ValueError):
    """Even pairing values did not agree at the last two degrees."""

    def __init__(self, message: str, values: Optional[List] = None):
        super().__init__(message)
        self.values = values or []


class UnknownNameError(NCGError, KeyError):
    """Catalog, class or subcommand name not recognised."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown name"


class SymmetryViolationError(NCGError, ValueError):
    """Cochain data violates its required symmetry (aₙ even, dₙ odd)."""


class ArityMismatchError(NCGError, ValueError):
    """Cochain evaluated on the wrong number of arguments."""


class NoSolutionError(NCGError, ValueError):
    """A coboundary equation has no solution (e.g. Sψ₀)."""


class OutOfRangeError(NCGError, ValueError):
    """Value requested outside a tabulated range."""


class BackendError(NCGError, ValueError):
    """Operation not available for the operator's scalar backend."""


def status_for(e: Exception) -> int:
    """HTTP status for a service error."""
    if isinstance(e, UnknownNameError):
        return 404
    if isinstance(e, NonStabilizedError):
        return 422
    return 400


def exit_code_for(e: Exception) -> int:
    """CLI exit code for a service error: 3 for non-stabilized pairings, 2 otherwise."""
    return 3 if isinstance(e, NonStabilizedError) else 2
