"""Rising factorials and q-Pochhammer symbols for every integer index.

Negative indices follow the functional equation ``(a)_{k+1} = (a)_k (a+k)``,
i.e. ``(a)_{-n} = 1 / prod_{j=1}^{n} (a - j)``, and likewise
``(a;q)_{-n} = 1 / prod_{j=1}^{n} (1 - a q^{-j})``.
"""
from __future__ import annotations

from .errors import DivisionByZero, PoleEncountered
from .field import ONE, GaussianRational, as_gaussian

__all__ = ["rising_factorial", "q_pochhammer", "integer_power", "factorial"]


def rising_factorial(a, k: int) -> GaussianRational:
    a = as_gaussian(a)
    out = ONE
    if k >= 0:
        for j in range(k):
            out = out * (a + j)
        return out
    for j in range(1, -k + 1):
        factor = a - j
        if factor.is_zero():
            raise PoleEncountered(f"({a})_{k}: factor a-{j} vanishes")
        out = out * factor
    return out.inv()


def q_pochhammer(a, q, k: int) -> GaussianRational:
    a, q = as_gaussian(a), as_gaussian(q)
    if q.is_zero():
        raise DivisionByZero("q must be nonzero")
    out = ONE
    if k >= 0:
        aq = a
        for _ in range(k):
            out = out * (ONE - aq)
            aq = aq * q
        return out
    qinv = q.inv()
    aq = a * qinv
    for j in range(1, -k + 1):
        factor = ONE - aq
        if factor.is_zero():
            raise PoleEncountered(f"({a};{q})_{k}: factor 1 - a q^-{j} vanishes")
        out = out * factor
        aq = aq * qinv
    return out.inv()


def integer_power(x, n: int) -> GaussianRational:
    x = as_gaussian(x)
    if n < 0 and x.is_zero():
        raise DivisionByZero("negative power of zero")
    return x**n


def factorial(n: int) -> GaussianRational:
    return rising_factorial(ONE, n)
