"""Partial-fraction residues of prod(z - b) / prod(z - a) and their sum.

For a set A of distinct points and a multiset B with ``len(A) >= len(B)``,

    gamma(a) = prod_{x in B} (a - x) / prod_{y in A, y != a} (a - y)

and ``sum_a gamma(a)`` is 0, 1 or ``sum(A) - sum(B)`` according to whether
``len(A)`` exceeds ``len(B) + 1``, equals it, or equals ``len(B)``.  The
direct sum and the case formula are computed independently so each can
check the other.
"""
from __future__ import annotations

from typing import Iterable

from .errors import DistinctnessViolation, DomainViolation, ElementNotInSet
from .field import ONE, ZERO, GaussianRational, as_gaussian

__all__ = ["PointSet", "PointMultiset", "gamma_coeff", "derangement_sum", "predicted_sum"]


class PointSet:
    """Pairwise distinct Gaussian rationals; distinctness is checked exactly."""

    __slots__ = ("elements",)

    def __init__(self, elements: Iterable):
        elems = tuple(as_gaussian(e) for e in elements)
        if len(set(elems)) != len(elems):
            seen = set()
            dup = next(e for e in elems if e in seen or seen.add(e))
            raise DistinctnessViolation(f"repeated point {dup}")
        self.elements = elems

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return as_gaussian(x) in self.elements

    def __repr__(self):
        return f"PointSet([{', '.join(map(str, self.elements))}])"


class PointMultiset:
    __slots__ = ("elements",)

    def __init__(self, elements: Iterable = ()):
        self.elements = tuple(as_gaussian(e) for e in elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"PointMultiset([{', '.join(map(str, self.elements))}])"


def gamma_coeff(a, A: PointSet, B: PointMultiset) -> GaussianRational:
    a = as_gaussian(a)
    if a not in A.elements:
        raise ElementNotInSet(f"{a} is not an element of A")
    num = ONE
    for x in B.elements:
        num = num * (a - x)
    den = ONE
    for y in A.elements:
        if y != a:
            den = den * (a - y)
    return num / den


def _check_domain(A: PointSet, B: PointMultiset) -> None:
    if len(A) < len(B):
        raise DomainViolation(f"need |A| >= |B|, got {len(A)} < {len(B)}")


def derangement_sum(A: PointSet, B: PointMultiset) -> GaussianRational:
    _check_domain(A, B)
    total = ZERO
    for a in A.elements:
        total = total + gamma_coeff(a, A, B)
    return total


def predicted_sum(A: PointSet, B: PointMultiset) -> GaussianRational:
    _check_domain(A, B)
    n_a, n_b = len(A), len(B)
    if n_a > n_b + 1:
        return ZERO
    if n_a == n_b + 1:
        return ONE
    return sum(A.elements, ZERO) - sum(B.elements, ZERO)
