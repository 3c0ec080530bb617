import json
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hypdual.classical import (
    ClassicalDualityInstance as CI,
    build_H,
    case_label,
    coefficient_c,
    expected_H,
    gamma_ijk,
    gamma_sum,
    proof_crosscheck,
    proof_s_k,
    proof_sets,
    verify,
)
from hypdual.derangement import derangement_sum, gamma_coeff, predicted_sum
from hypdual.errors import CaseOutOfRange, PreconditionViolation
from hypdual.field import ONE, GaussianRational as GR
from hypdual.harness import CLASSICAL_LABELS, Cell, SuiteConfig, random_classical_instance
from hypdual.series import TruncatedSeries as TS

F = Fraction
SMALL = SuiteConfig(r_max=3, denominator_bound=12)


def _sym(x: GR):
    return sympy.Rational(x.re.numerator, x.re.denominator) + sympy.I * sympy.Rational(
        x.im.numerator, x.im.denominator
    )


def brute_force_H(inst: CI, order: int) -> list:
    """Coefficients of H from rising factorials in sympy, no shared code path."""
    a = [_sym(x) for x in inst.a]
    b = [_sym(x) for x in inst.b]
    m = list(inst.m)
    sign = (-1) ** (inst.p + inst.r + 1)
    out = []
    for k in range(order + 1):
        total = 0
        for i, ai in enumerate(a):
            others = [al for l, al in enumerate(a) if l != i]
            c = sympy.Mul(*[sympy.rf(1 + ai - bj, mj) for bj, mj in zip(b, m)])
            c /= sympy.Mul(*[ai - al for al in others])
            for j in range(k + 1):
                n = k - j
                first = sympy.Mul(*[sympy.rf(1 + ai + mj - bj, j) for bj, mj in zip(b, m)])
                first /= sympy.Mul(*[sympy.rf(1 + ai - al, j) for al in others]) * sympy.factorial(j)
                second = sympy.Mul(*[sympy.rf(bj - ai, n) for bj in b]) * sign**n
                second /= sympy.Mul(*[sympy.rf(1 + al - ai, n) for al in others]) * sympy.factorial(n)
                total += c * first * second
        out.append(sympy.nsimplify(sympy.expand(total)))
    return out


EX_M_EQ_R = CI(p=1, r=1, a=("0", "1/2"), b=("1/3",), m=(1,))
EX_P0 = CI(p=0, r=1, a=("0", "1/2"))
EX_P2 = CI(p=2, r=1, a=("0", "1/2"), b=("1/3", "1/4"), m=(1, 1))


def test_coefficient_c_examples():
    assert coefficient_c(EX_M_EQ_R, 0) == GR(F(-4, 3))
    # empty numerator / zero shifts
    assert coefficient_c(EX_P0, 0) == 1 / (GR(0) - GR(F(1, 2)))
    inst = CI(p=2, r=2, a=("1/5", "2/7+i", "-1/3"), b=("1", "2"), m=(0, 0))
    for i in range(3):
        den = ONE
        for l in range(3):
            if l != i:
                den = den * (inst.a[i] - inst.a[l])
        assert coefficient_c(inst, i) == den.inv()


def test_build_H_examples():
    assert build_H(EX_M_EQ_R, 6) == TS.constant(1, 6)
    assert build_H(EX_P0, 6) == TS.zero(6)
    slope = C = GR(F(23, 12))
    assert EX_P2.C == C and EX_P2.alpha - EX_P2.beta + EX_P2.p == slope
    assert build_H(EX_P2, 6) == TS([C + k * slope for k in range(7)])


@pytest.mark.parametrize("inst", [EX_M_EQ_R, EX_P2, CI(p=2, r=2, a=("1/3+i", "-2/5", "3/7"), b=("1/2", "-1/4+1/3*i"), m=(2, -1))])
def test_build_H_against_brute_force(inst):
    assert [_sym(c) for c in build_H(inst, 5).coeffs] == brute_force_H(inst, 5)


def test_expected_H_cases():
    assert expected_H(EX_P0, 4) == TS.zero(4)
    geo = CI(p=2, r=1, a=("1/3", "1/5"), b=("1/7", "2"), m=(1, 0))
    assert case_label(geo) == "M=r,p=r+1"
    assert expected_H(geo, 4) == TS([1] * 5)
    inst = CI(p=1, r=2, a=("1/3", "1/5", "1/7"), b=("2",), m=(3,))
    assert case_label(inst) == "M=r+1,p<=r-1"
    assert expected_H(inst, 3) == TS([inst.C, 0, 0, 0])
    inst = CI(p=2, r=2, a=("1/3", "1/5", "1/7"), b=("2", "1/9"), m=(1, 2))
    assert expected_H(inst, 3) == TS([inst.C, 1, 0, 0])
    with pytest.raises(CaseOutOfRange):
        expected_H(CI(p=1, r=1, a=("1/3", "1/5"), b=("2",), m=(3,)), 3)


def test_verify_examples():
    report = verify(EX_P2, 12)
    assert report.match and report.mod_degree == 0 and report.boundary_flag is None
    neg = CI(p=1, r=1, a=("0", "1/2"), b=("1/3",), m=(-1,))
    report = verify(neg, 12)
    assert report.match and report.mod_degree == 1
    assert [k for k, *_ in report.mismatches] == [0]
    assert report.boundary_flag is True


def test_preconditions():
    with pytest.raises(PreconditionViolation):
        CI(p=0, r=1, a=("1/2", "5/2"))
    with pytest.raises(PreconditionViolation):
        CI(p=3, r=1, a=("0", "1/2"), b=("1", "2", "3"), m=(0, 0, 0))
    with pytest.raises(PreconditionViolation):
        CI(p=1, r=1, a=("0",), b=("1",), m=(0,))


def test_proof_sets_examples():
    A, B = proof_sets(EX_P0, 0)
    assert list(A) == list(EX_P0.a) and len(B) == 0
    assert len(proof_sets(EX_P0, 1)[0]) == 4
    inst = CI(p=1, r=1, a=("0", "1/2"), b=("1/3",), m=(2,))
    assert list(proof_sets(inst, 0)[1]) == [GR(F(1, 3)) - 2, GR(F(1, 3)) - 1]
    with pytest.raises(ValueError):
        proof_sets(CI(p=1, r=1, a=("0", "1/2"), b=("1/3",), m=(-2,)), 1)


def test_gamma_k0_is_c():
    for i in range(2):
        assert gamma_ijk(EX_P2, i, 0, 0) == coefficient_c(EX_P2, i)


def test_gamma_j_equals_k_uses_only_first_factor():
    inst = EX_P2
    k = 3
    for i in range(2):
        ai = inst.a[i]
        want = coefficient_c(inst, i)
        for bl, ml in zip(inst.b, inst.m):
            for t in range(k):
                want = want * (1 + ml + ai - bl + t)
        for al in [x for l, x in enumerate(inst.a) if l != i]:
            for t in range(k):
                want = want / (1 + ai - al + t)
        for t in range(1, k + 1):
            want = want / t
        assert gamma_ijk(inst, i, k, k) == want


def _instances():
    out = []
    for neg in (False, True):
        for label in CLASSICAL_LABELS:
            cell = Cell("classical", label, neg)
            rng = random.Random(f"unit:{cell.id}")
            out.append(random_classical_instance(SMALL, cell, rng))
    return out


INSTANCES = _instances()


@pytest.mark.parametrize("inst", INSTANCES, ids=lambda x: f"{case_label(x)}-m{min(x.m, default=0)}")
def test_gamma_matches_lemma_residues(inst):
    for k in range(max(0, -inst.m_hat), 4):
        A, B = proof_sets(inst, k)
        for i in range(inst.r + 1):
            for j in range(k + 1):
                assert gamma_ijk(inst, i, j, k) == gamma_coeff(inst.a[i] + j, A, B)


@pytest.mark.parametrize("inst", INSTANCES, ids=lambda x: f"{case_label(x)}-m{min(x.m, default=0)}")
def test_proof_chain(inst):
    built = build_H(inst, 6)
    assert proof_crosscheck(inst, built, 6) == []
    assert verify(inst, 12).match


@pytest.mark.parametrize("inst", [x for x in INSTANCES if x.M == x.r + 1], ids=case_label)
def test_s_k_is_sum_difference(inst):
    for k in range(max(0, -inst.m_hat), 6):
        A, B = proof_sets(inst, k)
        assert proof_s_k(inst, k) == sum(A, GR(0)) - sum(B, GR(0))
    if inst.p == inst.r + 1:
        expected = expected_H(inst, 6)
        for k in range(max(0, -inst.m_hat), 7):
            assert expected[k] == proof_s_k(inst, k)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(INSTANCES), st.fractions(-5, 5, max_denominator=7))
def test_translation_invariance(inst, t):
    shifted = CI(p=inst.p, r=inst.r, a=[x + t for x in inst.a], b=[x + t for x in inst.b], m=inst.m)
    assert verify(shifted, 8).match == verify(inst, 8).match is True
    # C and alpha - beta + p move exactly as their formulas dictate
    assert shifted.C - inst.C == (inst.r + 1) * t - t * inst.M
    assert (shifted.alpha - shifted.beta) - (inst.alpha - inst.beta) == (inst.r + 1 - inst.p) * t


def test_gamma_sum_predicted_by_lemma():
    for inst in INSTANCES[:6]:
        for k in range(0, 4):
            A, B = proof_sets(inst, k)
            assert gamma_sum(inst, k) == derangement_sum(A, B) == predicted_sum(A, B)


def test_json_roundtrip():
    inst = CI(p=2, r=2, a=("1/3+i", "-2/5", "3/7"), b=("1/2", "-1/4+1/3*i"), m=(2, -1))
    assert CI.from_json(inst.to_json()) == inst
    assert CI.from_json(json.dumps(inst.to_json())) == inst
