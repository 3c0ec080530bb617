"""Exact verification of duality relations for hypergeometric and basic
hypergeometric series, built on truncated power series over Q(i)."""

from .errors import (
    CaseOutOfRange,
    DistinctnessViolation,
    DivisionByZero,
    DomainViolation,
    DualityError,
    ElementNotInSet,
    GenerationExhausted,
    PoleEncountered,
    PreconditionViolation,
)
from .field import GaussianRational, Rational
from .series import TruncatedSeries
from .classical import ClassicalDualityInstance
from .qdual import QDualityInstance
from .report import VerificationReport

__version__ = "0.1.0"

__all__ = [
    "CaseOutOfRange",
    "ClassicalDualityInstance",
    "DistinctnessViolation",
    "DivisionByZero",
    "DomainViolation",
    "DualityError",
    "ElementNotInSet",
    "GaussianRational",
    "GenerationExhausted",
    "PoleEncountered",
    "PreconditionViolation",
    "QDualityInstance",
    "Rational",
    "TruncatedSeries",
    "VerificationReport",
]
