"""Bilinear sums of pFr products and their closed forms.

For parameters ``a_1..a_{r+1}`` (pairwise non-integer differences), ``b_1..b_p``
and integer shifts ``m_1..m_p`` with ``p <= r+1``,

    H(z) = sum_i c_i * pFr(1+a_i+m_l-b_l ; 1+a_i-a_l (l != i) ; z)
                     * pFr(b_l-a_i ; 1+a_l-a_i (l != i) ; (-1)^(p+r+1) z)

collapses to 0, 1, 1/(1-z), C, C+z or ``(alpha-beta+p) z/(1-z)^2 + C/(1-z)``
depending on ``M = sum m`` and p.  Negative shifts only perturb coefficients
below ``-min(m)``.

Indices ``i`` are 0-based throughout.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .derangement import PointMultiset, PointSet, derangement_sum, predicted_sum
from .errors import CaseOutOfRange, PreconditionViolation
from .field import ONE, ZERO, GaussianRational, as_gaussian
from .hypergeometric import HypergeometricSpec, pFr_series
from .pochhammer import factorial, rising_factorial
from .report import VerificationReport, compare_series
from .series import TruncatedSeries, geometric_like, z_over_one_minus_z_squared

__all__ = [
    "ClassicalDualityInstance",
    "coefficient_c",
    "build_H",
    "expected_H",
    "verify",
    "gamma_ijk",
    "proof_sets",
    "proof_s_k",
    "case_label",
    "gamma_sum",
    "proof_crosscheck",
]


@dataclass(frozen=True)
class ClassicalDualityInstance:
    p: int
    r: int
    a: tuple[GaussianRational, ...]
    b: tuple[GaussianRational, ...] = ()
    m: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(as_gaussian(x) for x in self.a))
        object.__setattr__(self, "b", tuple(as_gaussian(x) for x in self.b))
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        if self.r < 1:
            raise PreconditionViolation("r must be at least 1")
        if not 0 <= self.p <= self.r + 1:
            raise PreconditionViolation(f"need 0 <= p <= r+1, got p={self.p}, r={self.r}")
        if len(self.a) != self.r + 1:
            raise PreconditionViolation(f"expected {self.r + 1} a-parameters, got {len(self.a)}")
        if len(self.b) != self.p or len(self.m) != self.p:
            raise PreconditionViolation(f"expected {self.p} b- and m-parameters")
        for i in range(len(self.a)):
            for j in range(i + 1, len(self.a)):
                if (self.a[i] - self.a[j]).is_integer():
                    raise PreconditionViolation(
                        f"a[{i}] - a[{j}] = {self.a[i] - self.a[j]} is an integer"
                    )

    @property
    def M(self) -> int:
        return sum(self.m)

    @property
    def m_hat(self) -> int:
        return min(self.m) if self.m else 0

    @property
    def alpha(self) -> GaussianRational:
        return sum(self.a, ZERO)

    @property
    def beta(self) -> GaussianRational:
        return sum(self.b, ZERO)

    @property
    def C(self) -> GaussianRational:
        out = self.alpha
        for mi, bi in zip(self.m, self.b):
            out = out + (mi * (mi + 1 - 2 * bi)) * GaussianRational(Fraction(1, 2))
        return out

    def to_json(self) -> dict[str, Any]:
        return {
            "p": self.p,
            "r": self.r,
            "a": [str(x) for x in self.a],
            "b": [str(x) for x in self.b],
            "m": list(self.m),
        }

    @classmethod
    def from_json(cls, data: dict[str, Any] | str) -> "ClassicalDualityInstance":
        if isinstance(data, str):
            data = json.loads(data)
        b = data.get("b", [])
        return cls(
            p=int(data.get("p", len(b))),
            r=int(data["r"]),
            a=[as_gaussian(x) for x in data["a"]],
            b=[as_gaussian(x) for x in b],
            m=[int(x) for x in data.get("m", [])],
        )


def _others(inst: ClassicalDualityInstance, i: int) -> Sequence[GaussianRational]:
    return [x for l, x in enumerate(inst.a) if l != i]


def coefficient_c(inst: ClassicalDualityInstance, i: int) -> GaussianRational:
    ai = inst.a[i]
    num = ONE
    for bj, mj in zip(inst.b, inst.m):
        num = num * rising_factorial(ONE + ai - bj, mj)
    den = ONE
    for al in _others(inst, i):
        den = den * (ai - al)
    return num / den


def _factor_specs(inst: ClassicalDualityInstance, i: int):
    ai = inst.a[i]
    others = _others(inst, i)
    first = HypergeometricSpec(
        upper=[ONE + ai + mj - bj for bj, mj in zip(inst.b, inst.m)],
        lower=[ONE + ai - al for al in others],
    )
    second = HypergeometricSpec(
        upper=[bj - ai for bj in inst.b],
        lower=[ONE + al - ai for al in others],
        scale=(-1) ** (inst.p + inst.r + 1),
    )
    return first, second


def build_H(inst: ClassicalDualityInstance, order: int) -> TruncatedSeries:
    total = TruncatedSeries.zero(order)
    for i in range(inst.r + 1):
        first, second = _factor_specs(inst, i)
        term = pFr_series(first, order) * pFr_series(second, order)
        total = total + term.scale(coefficient_c(inst, i))
    return total


def case_label(inst: ClassicalDualityInstance) -> str:
    M, p, r = inst.M, inst.p, inst.r
    if M < r:
        return "M<r"
    if M == r:
        return "M=r,p<=r" if p <= r else "M=r,p=r+1"
    if M == r + 1:
        if p <= r - 1:
            return "M=r+1,p<=r-1"
        return "M=r+1,p=r" if p == r else "M=r+1,p=r+1"
    return "M>r+1"


def expected_H(inst: ClassicalDualityInstance, order: int) -> TruncatedSeries:
    M, p, r = inst.M, inst.p, inst.r
    if M < r:
        return TruncatedSeries.zero(order)
    if M == r:
        if p <= r:
            return TruncatedSeries.constant(ONE, order)
        return geometric_like(ONE, ONE, order)
    if M == r + 1:
        C = inst.C
        if p <= r - 1:
            return TruncatedSeries.constant(C, order)
        if p == r:
            coeffs = [C, ONE] + [ZERO] * (order - 1)
            return TruncatedSeries(coeffs[: order + 1])
        slope = inst.alpha - inst.beta + p
        return z_over_one_minus_z_squared(order).scale(slope) + geometric_like(C, ONE, order)
    raise CaseOutOfRange(f"no closed form for M={M} > r+1={r + 1}")


def verify(inst: ClassicalDualityInstance, order: int = 12) -> VerificationReport:
    expected = expected_H(inst, order)
    built = build_H(inst, order)
    return compare_series(
        theorem="classical",
        instance=inst.to_json(),
        case_label=case_label(inst),
        built=built,
        expected=expected,
        m_hat=inst.m_hat,
    )


def _check_k(inst: ClassicalDualityInstance, k: int) -> None:
    if k < max(0, -inst.m_hat):
        raise ValueError(f"k={k} is below max(0, -m_hat)={max(0, -inst.m_hat)}")


def gamma_ijk(inst: ClassicalDualityInstance, i: int, j: int, k: int) -> GaussianRational:
    """Closed-form residue at ``a_i + j`` for the order-k point sets."""
    if not 0 <= j <= k:
        raise ValueError("need 0 <= j <= k")
    _check_k(inst, k)
    ai = inst.a[i]
    others = _others(inst, i)
    first = ONE
    for bl, ml in zip(inst.b, inst.m):
        first = first * rising_factorial(ONE + ml + ai - bl, j)
    for al in others:
        first = first / rising_factorial(ONE + ai - al, j)
    first = first / factorial(j)
    n = k - j
    second = GaussianRational((-1) ** (n * (inst.p + inst.r + 1)))
    for bl in inst.b:
        second = second * rising_factorial(bl - ai, n)
    for al in others:
        second = second / rising_factorial(ONE - ai + al, n)
    second = second / factorial(n)
    return coefficient_c(inst, i) * first * second


def proof_sets(inst: ClassicalDualityInstance, k: int) -> tuple[PointSet, PointMultiset]:
    _check_k(inst, k)
    A = PointSet(ai + j for ai in inst.a for j in range(k + 1))
    B = PointMultiset(bl + j for bl, ml in zip(inst.b, inst.m) for j in range(-ml, k))
    assert len(B) == inst.M + k * inst.p
    return A, B


def proof_s_k(inst: ClassicalDualityInstance, k: int) -> GaussianRational:
    """``sum(A) - sum(B)`` in closed form for the order-k proof sets."""
    half = GaussianRational(Fraction(1, 2))
    out = (k + 1) * inst.alpha + (inst.r + 1) * k * (k + 1) * half - k * inst.beta
    out = out - inst.p * (k - 1) * k * half
    for mi, bi in zip(inst.m, inst.b):
        out = out + mi * (mi + 1 - 2 * bi) * half
    return out


def gamma_sum(inst: ClassicalDualityInstance, k: int) -> GaussianRational:
    return sum(
        (gamma_ijk(inst, i, j, k) for i in range(inst.r + 1) for j in range(k + 1)), ZERO
    )


def proof_crosscheck(inst: ClassicalDualityInstance, built: TruncatedSeries, k_max: int) -> list[int]:
    """Indices k where the residue sum, the direct lemma sum, its case formula
    and the built coefficient fail to coincide.  Empty means all agree."""
    bad = []
    for k in range(max(0, -inst.m_hat), min(k_max, built.order) + 1):
        A, B = proof_sets(inst, k)
        closed = gamma_sum(inst, k)
        if not (closed == derangement_sum(A, B) == predicted_sum(A, B) == built[k]):
            bad.append(k)
    return bad
