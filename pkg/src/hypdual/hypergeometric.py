"""Coefficient generators for pFr and r+1 phi r as truncated series.

The argument scale (the constant multiplying z inside the function) is part
of :class:`HypergeometricSpec`, so every generated series is in the shared
variable z.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PoleEncountered
from .field import ONE, GaussianRational, as_gaussian
from .pochhammer import factorial, integer_power, q_pochhammer, rising_factorial
from .series import TruncatedSeries

__all__ = [
    "HypergeometricSpec",
    "pFr_series",
    "qphi_series",
    "pFr_coefficient",
    "qphi_coefficient",
    "eval_float",
]


def _gaussians(values) -> tuple[GaussianRational, ...]:
    return tuple(as_gaussian(v) for v in values)


@dataclass(frozen=True)
class HypergeometricSpec:
    upper: tuple[GaussianRational, ...] = ()
    lower: tuple[GaussianRational, ...] = ()
    scale: GaussianRational = field(default=ONE)

    def __post_init__(self):
        object.__setattr__(self, "upper", _gaussians(self.upper))
        object.__setattr__(self, "lower", _gaussians(self.lower))
        object.__setattr__(self, "scale", as_gaussian(self.scale))


def pFr_series(spec: HypergeometricSpec, order: int) -> TruncatedSeries:
    """Series of ``pFr(upper; lower; scale*z)`` via the term ratio.

    ``t_{k+1} / t_k = scale * prod(upper + k) / (prod(lower + k) * (k + 1))``
    """
    coeffs = [ONE]
    term = ONE
    for k in range(order):
        num = spec.scale
        for b in spec.upper:
            num = num * (b + k)
        den = GaussianRational(k + 1)
        for a in spec.lower:
            factor = a + k
            if factor.is_zero():
                raise PoleEncountered(f"lower parameter {a} hits a pole at k={k}")
            den = den * factor
        term = term * num / den
        coeffs.append(term)
    return TruncatedSeries(coeffs)


def qphi_series(spec: HypergeometricSpec, q, order: int) -> TruncatedSeries:
    """Series of ``r+1 phi r(upper; lower; scale*z)`` in base q via the term ratio."""
    q = as_gaussian(q)
    coeffs = [ONE]
    term = ONE
    qk = ONE
    for k in range(order):
        num = spec.scale
        for b in spec.upper:
            num = num * (ONE - b * qk)
        qk_next = qk * q
        den = ONE - qk_next
        if den.is_zero():
            raise PoleEncountered(f"(q;q)_{k + 1} vanishes")
        for a in spec.lower:
            factor = ONE - a * qk
            if factor.is_zero():
                raise PoleEncountered(f"lower parameter {a} hits a pole at k={k}")
            den = den * factor
        term = term * num / den
        coeffs.append(term)
        qk = qk_next
    return TruncatedSeries(coeffs)


def pFr_coefficient(spec: HypergeometricSpec, k: int) -> GaussianRational:
    """Direct Pochhammer-quotient form of the k-th coefficient."""
    num = integer_power(spec.scale, k)
    for b in spec.upper:
        num = num * rising_factorial(b, k)
    den = factorial(k)
    for a in spec.lower:
        den = den * rising_factorial(a, k)
    if den.is_zero():
        raise PoleEncountered(f"vanishing denominator at k={k}")
    return num / den


def qphi_coefficient(spec: HypergeometricSpec, q, k: int) -> GaussianRational:
    q = as_gaussian(q)
    num = integer_power(spec.scale, k)
    for b in spec.upper:
        num = num * q_pochhammer(b, q, k)
    den = q_pochhammer(q, q, k)
    for a in spec.lower:
        den = den * q_pochhammer(a, q, k)
    if den.is_zero():
        raise PoleEncountered(f"vanishing denominator at k={k}")
    return num / den


def eval_float(s: TruncatedSeries, z: complex) -> complex:
    return s.eval_float(z)
