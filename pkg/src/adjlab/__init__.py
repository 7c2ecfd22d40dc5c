"""Exact commutative algebra for Jacobian, adjoint and defect ideals, jets and minimal log discrepancies."""

from .errors import (
    AdjlabError,
    BudgetExceeded,
    GenericityError,
    ParseError,
    PrecisionError,
    Refused,
    RingMismatch,
    VerificationError,
)
from .groebner import budget
from .ideal import Ideal, QIdeal
from .poly import GF, QQ, PolyRing, Polynomial, TruncatedSeries

__version__ = "0.1.0"

__all__ = [
    "AdjlabError",
    "BudgetExceeded",
    "GenericityError",
    "ParseError",
    "PrecisionError",
    "Refused",
    "RingMismatch",
    "VerificationError",
    "budget",
    "Ideal",
    "QIdeal",
    "GF",
    "QQ",
    "PolyRing",
    "Polynomial",
    "TruncatedSeries",
]
