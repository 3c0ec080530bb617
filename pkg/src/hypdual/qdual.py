"""q-analogue: bilinear sums of r+1 phi r products and their closed forms.

With base q (``|q| < 1``), nonzero ``a_1..a_{r+1}`` whose ratios avoid integer
powers of q, nonzero ``b_1..b_{r+1}`` and shifts ``m_1..m_{r+1}``,

    G(z) = sum_i c_i * phi(q^(1+m_l) a_i/b_l ; q a_i/a_l (l != i) ; w z)
                     * phi(b_l/a_i ; q a_l/a_i (l != i) ; z)

with ``w = q^-r prod(b_l/a_l)`` reduces to 0, 1/(1-z) or
``[C/(1-z) - (q alpha - beta)/(1-q z)] / (1-q)``.

Indices ``i`` are 0-based throughout.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Optional

from .derangement import PointMultiset, PointSet, derangement_sum, predicted_sum
from .errors import CaseOutOfRange, PreconditionViolation
from .field import ONE, ZERO, GaussianRational, as_gaussian
from .hypergeometric import HypergeometricSpec, qphi_series
from .pochhammer import integer_power, q_pochhammer
from .report import VerificationReport, compare_series
from .series import TruncatedSeries, geometric_like

__all__ = [
    "QDualityInstance",
    "default_exponent_bound",
    "check_ratio_separation",
    "coefficient_c_q",
    "build_G",
    "expected_G",
    "verify",
    "gamma_ijk_q",
    "gamma_sum_q",
    "proof_sets_q",
    "proof_s_k_q",
    "proof_crosscheck_q",
    "case_label",
]

DEFAULT_ORDER = 12


def default_exponent_bound(order: int, m) -> int:
    return order + max((abs(x) for x in m), default=0) + 4


def check_ratio_separation(a, q: GaussianRational, bound: int) -> None:
    """Raise unless ``a_i / a_j != q**e`` for every ``i != j`` and ``|e| <= bound``."""
    powers = {}
    qe = ONE
    for e in range(bound + 1):
        powers.setdefault(qe, e)
        qe = qe * q
    qe = q.inv()
    for e in range(1, bound + 1):
        powers.setdefault(qe, -e)
        qe = qe * q.inv()
    for i in range(len(a)):
        for j in range(len(a)):
            if i != j:
                ratio = a[i] / a[j]
                if ratio in powers:
                    raise PreconditionViolation(
                        f"a[{i}]/a[{j}] = {ratio} = q^{powers[ratio]}"
                    )


@dataclass(frozen=True)
class QDualityInstance:
    r: int
    q: GaussianRational
    a: tuple[GaussianRational, ...]
    b: tuple[GaussianRational, ...]
    m: tuple[int, ...]
    # q-exponent range for the ratio check; None means the default for order 12
    exponent_bound: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "q", as_gaussian(self.q))
        object.__setattr__(self, "a", tuple(as_gaussian(x) for x in self.a))
        object.__setattr__(self, "b", tuple(as_gaussian(x) for x in self.b))
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        if self.r < 1:
            raise PreconditionViolation("r must be at least 1")
        n = self.r + 1
        if not (len(self.a) == len(self.b) == len(self.m) == n):
            raise PreconditionViolation(f"expected {n} entries in each of a, b, m")
        if self.q.is_zero() or self.q.norm_squared() >= 1:
            raise PreconditionViolation(f"need 0 < |q| < 1, got q={self.q}")
        if any(x.is_zero() for x in self.a + self.b):
            raise PreconditionViolation("a and b entries must be nonzero")
        check_ratio_separation(self.a, self.q, self.bound)

    @property
    def bound(self) -> int:
        if self.exponent_bound is not None:
            return self.exponent_bound
        return default_exponent_bound(DEFAULT_ORDER, self.m)

    @property
    def M(self) -> int:
        return sum(self.m)

    @property
    def M2(self) -> int:
        return sum(x * (x + 1) // 2 for x in self.m)

    @property
    def m_hat(self) -> int:
        return min(self.m)

    @property
    def w(self) -> GaussianRational:
        out = integer_power(self.q, -self.r)
        for ai, bi in zip(self.a, self.b):
            out = out * bi / ai
        return out

    @property
    def alpha(self) -> GaussianRational:
        return sum(self.a, ZERO)

    @property
    def beta(self) -> GaussianRational:
        return sum(self.b, ZERO)

    @property
    def C(self) -> GaussianRational:
        out = self.alpha
        for bi, mi in zip(self.b, self.m):
            out = out - bi * integer_power(self.q, -mi)
        return out

    def to_json(self) -> dict[str, Any]:
        return {
            "r": self.r,
            "q": str(self.q),
            "a": [str(x) for x in self.a],
            "b": [str(x) for x in self.b],
            "m": list(self.m),
        }

    @classmethod
    def from_json(cls, data: dict[str, Any] | str, exponent_bound: Optional[int] = None) -> "QDualityInstance":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            r=int(data["r"]),
            q=as_gaussian(data["q"]),
            a=[as_gaussian(x) for x in data["a"]],
            b=[as_gaussian(x) for x in data["b"]],
            m=[int(x) for x in data["m"]],
            exponent_bound=exponent_bound,
        )


def _others(inst: QDualityInstance, i: int):
    return [x for l, x in enumerate(inst.a) if l != i]


def coefficient_c_q(inst: QDualityInstance, i: int) -> GaussianRational:
    q, ai = inst.q, inst.a[i]
    num = GaussianRational((-1) ** (inst.M % 2)) * integer_power(q, -inst.M2)
    for bj, mj in zip(inst.b, inst.m):
        num = num * integer_power(bj, mj) * q_pochhammer(q * ai / bj, q, mj)
    den = ONE
    for al in _others(inst, i):
        den = den * (ai - al)
    return num / den


def _factor_specs(inst: QDualityInstance, i: int):
    q, ai = inst.q, inst.a[i]
    others = _others(inst, i)
    first = HypergeometricSpec(
        upper=[integer_power(q, 1 + ml) * ai / bl for bl, ml in zip(inst.b, inst.m)],
        lower=[q * ai / al for al in others],
        scale=inst.w,
    )
    second = HypergeometricSpec(
        upper=[bl / ai for bl in inst.b],
        lower=[q * al / ai for al in others],
    )
    return first, second


def build_G(inst: QDualityInstance, order: int) -> TruncatedSeries:
    total = TruncatedSeries.zero(order)
    for i in range(inst.r + 1):
        first, second = _factor_specs(inst, i)
        term = qphi_series(first, inst.q, order) * qphi_series(second, inst.q, order)
        total = total + term.scale(coefficient_c_q(inst, i))
    return total


def case_label(inst: QDualityInstance) -> str:
    M, r = inst.M, inst.r
    if M < r:
        return "M<r"
    if M == r:
        return "M=r"
    if M == r + 1:
        return "M=r+1"
    return "M>r+1"


def expected_G(inst: QDualityInstance, order: int) -> TruncatedSeries:
    M, r, q = inst.M, inst.r, inst.q
    if M < r:
        return TruncatedSeries.zero(order)
    if M == r:
        return geometric_like(ONE, ONE, order)
    if M == r + 1:
        pre = (ONE - q).inv()
        return geometric_like(inst.C * pre, ONE, order) - geometric_like(
            (q * inst.alpha - inst.beta) * pre, q, order
        )
    raise CaseOutOfRange(f"no closed form for M={M} > r+1={r + 1}")


def verify(inst: QDualityInstance, order: int = DEFAULT_ORDER) -> VerificationReport:
    need = default_exponent_bound(order, inst.m)
    if inst.exponent_bound is None and need > inst.bound:
        check_ratio_separation(inst.a, inst.q, need)
    expected = expected_G(inst, order)
    built = build_G(inst, order)
    return compare_series(
        theorem="q",
        instance=inst.to_json(),
        case_label=case_label(inst),
        built=built,
        expected=expected,
        m_hat=inst.m_hat,
    )


def _check_k(inst: QDualityInstance, k: int) -> None:
    if k < max(0, -inst.m_hat):
        raise ValueError(f"k={k} is below max(0, -m_hat)={max(0, -inst.m_hat)}")


def gamma_ijk_q(inst: QDualityInstance, i: int, j: int, k: int) -> GaussianRational:
    """Closed-form residue at ``a_i q^j`` for the order-k point sets."""
    if not 0 <= j <= k:
        raise ValueError("need 0 <= j <= k")
    _check_k(inst, k)
    q, ai = inst.q, inst.a[i]
    others = _others(inst, i)
    first = integer_power(inst.w, j) / q_pochhammer(q, q, j)
    for bl, ml in zip(inst.b, inst.m):
        first = first * q_pochhammer(integer_power(q, 1 + ml) * ai / bl, q, j)
    for al in others:
        first = first / q_pochhammer(q * ai / al, q, j)
    n = k - j
    second = q_pochhammer(q, q, n).inv()
    for bl in inst.b:
        second = second * q_pochhammer(bl / ai, q, n)
    for al in others:
        second = second / q_pochhammer(q * al / ai, q, n)
    return coefficient_c_q(inst, i) * first * second


def gamma_sum_q(inst: QDualityInstance, k: int) -> GaussianRational:
    return sum(
        (gamma_ijk_q(inst, i, j, k) for i in range(inst.r + 1) for j in range(k + 1)), ZERO
    )


def proof_sets_q(inst: QDualityInstance, k: int) -> tuple[PointSet, PointMultiset]:
    _check_k(inst, k)
    q = inst.q
    A = PointSet(ai * integer_power(q, j) for ai in inst.a for j in range(k + 1))
    B = PointMultiset(
        bl * integer_power(q, j) for bl, ml in zip(inst.b, inst.m) for j in range(-ml, k)
    )
    assert len(B) == inst.M + (inst.r + 1) * k
    return A, B


def proof_s_k_q(inst: QDualityInstance, k: int) -> GaussianRational:
    q = inst.q
    inner = inst.C - (q * inst.alpha - inst.beta) * integer_power(q, k)
    return inner / (ONE - q)


def proof_crosscheck_q(inst: QDualityInstance, built: TruncatedSeries, k_max: int) -> list[int]:
    """Indices k where residue sum, lemma sum, lemma formula and the built
    coefficient disagree."""
    bad = []
    for k in range(max(0, -inst.m_hat), min(k_max, built.order) + 1):
        A, B = proof_sets_q(inst, k)
        closed = gamma_sum_q(inst, k)
        if not (closed == derangement_sum(A, B) == predicted_sum(A, B) == built[k]):
            bad.append(k)
    return bad
