"""Truncated formal power series in z over Q(i)."""
from __future__ import annotations

from typing import Iterable, Sequence

from .field import ZERO, GaussianRational, as_gaussian

__all__ = [
    "TruncatedSeries",
    "geometric_like",
    "z_over_one_minus_z_squared",
    "equal_mod_poly",
    "mismatched_indices",
]


class TruncatedSeries:
    """Coefficients ``c_0 .. c_N`` of a power series known up to ``z**N``.

    Binary operations truncate to the smaller of the two orders.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        self.coeffs: tuple[GaussianRational, ...] = tuple(as_gaussian(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant term")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, c, order: int) -> "TruncatedSeries":
        return cls([as_gaussian(c)] + [ZERO] * order)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([ZERO] * (order + 1))

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} series to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def __getitem__(self, k: int) -> GaussianRational:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(self.coeffs[k] + other.coeffs[k] for k in range(n + 1))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(self.coeffs[k] - other.coeffs[k] for k in range(n + 1))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(-c for c in self.coeffs)

    def scale(self, c) -> "TruncatedSeries":
        c = as_gaussian(c)
        return TruncatedSeries(c * x for x in self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        n = min(self.order, other.order)
        s, t = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            acc = ZERO
            for j in range(k + 1):
                acc = acc + s[j] * t[k - j]
            out.append(acc)
        return TruncatedSeries(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"TruncatedSeries([{', '.join(str(c) for c in self.coeffs)}])"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "TruncatedSeries":
        return cls(as_gaussian(c) for c in data)

    def eval_float(self, z: complex) -> complex:
        """Horner evaluation of the truncated polynomial in double precision."""
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + complex(c)
        return acc


def geometric_like(c, ratio, order: int) -> TruncatedSeries:
    """``c / (1 - ratio*z)`` truncated at ``order``: coefficient ``c * ratio**k``."""
    c, ratio = as_gaussian(c), as_gaussian(ratio)
    out, term = [], c
    for _ in range(order + 1):
        out.append(term)
        term = term * ratio
    return TruncatedSeries(out)


def z_over_one_minus_z_squared(order: int) -> TruncatedSeries:
    """``z / (1 - z)**2``, whose k-th coefficient is k."""
    return TruncatedSeries(GaussianRational(k) for k in range(order + 1))


def mismatched_indices(s: TruncatedSeries, t: TruncatedSeries) -> list[int]:
    n = min(s.order, t.order)
    return [k for k in range(n + 1) if s.coeffs[k] != t.coeffs[k]]


def equal_mod_poly(s: TruncatedSeries, t: TruncatedSeries, d: int) -> bool:
    """Coefficients agree at every index ``k >= d`` up to the common order.

    ``d == 0`` is plain coefficient equality.
    """
    if d < 0:
        raise ValueError("d must be non-negative")
    n = min(s.order, t.order)
    if n < d:
        raise ValueError(f"series of order {n} cannot be compared from index {d}")
    return all(s.coeffs[k] == t.coeffs[k] for k in range(d, n + 1))

