"""Exit criteria.  Each test records one PASS/FAIL line, shown in the
terminal summary under "acceptance criteria"."""
import random

import pytest

from conftest import ACCEPTANCE_LINES
from hypdual import classical, qdual
from hypdual.cli import main
from hypdual.derangement import derangement_sum, predicted_sum
from hypdual.errors import PoleEncountered
from hypdual.field import ONE
from hypdual.harness import (
    CLASSICAL_LABELS,
    Q_LABELS,
    Cell,
    SuiteConfig,
    random_classical_instance,
    random_gaussian,
    random_lemma_pair,
    random_q_instance,
    run_suite,
)
from hypdual.pochhammer import rising_factorial

ORDER = 12
PER_CELL = 25
FLOAT_Z = 0.1
FLOAT_TOL = 1e-9
CFG = SuiteConfig(seed=2026, order=ORDER, per_cell=PER_CELL, r_max=4, q_r_max=3,
                  float_z=FLOAT_Z, float_tol=FLOAT_TOL)


def record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def suite():
    return run_suite(CFG)


def _cell_reports(suite, theorem, negative):
    out = {}
    for c in suite.cells:
        if c.cell.theorem == theorem and c.cell.negative == negative:
            out[c.cell.label] = c
    return out


def test_criterion_1_lemma_oracle():
    rng = random.Random("acceptance:lemma")
    failures = 0
    seen = set()
    for _ in range(500):
        n_a = rng.randint(1, 8)
        n_b = rng.randint(0, n_a)
        A, B = random_lemma_pair(rng, 20, n_a=n_a, n_b=n_b)
        seen.add((n_a > n_b + 1, n_a == n_b + 1, n_a == n_b))
        failures += derangement_sum(A, B) != predicted_sum(A, B)
    record(1, "residue-sum identity, 500 pairs", failures == 0 and len(seen) == 3,
           f"{500 - failures}/500 exact, {len(seen)}/3 regimes hit")


def test_criterion_2_classical_matrix(suite):
    cells = _cell_reports(suite, "classical", False)
    problems = []
    for label in CLASSICAL_LABELS:
        c = cells[label]
        reps = c.reports
        if c.error or len(reps) < PER_CELL:
            problems.append(f"{label}: {len(reps)} reports {c.error or ''}")
        for r in reps:
            inst = r.instance
            if not (r.match and r.order == ORDER and r.mod_degree == 0 and inst["r"] <= 4
                    and min(inst["m"], default=0) >= 0 and r.case_label == label):
                problems.append(f"{label}: {inst}")
    record(2, "pFr duality case matrix (6 cells x 25, m>=0, N=12)", not problems,
           "all exact" if not problems else "; ".join(problems[:3]))


def test_criterion_3_classical_negative(suite):
    cells = _cell_reports(suite, "classical", True)
    problems = []
    for label in CLASSICAL_LABELS:
        c = cells[label]
        if c.error or len(c.reports) < PER_CELL:
            problems.append(f"{label}: {len(c.reports)} reports {c.error or ''}")
        for r in c.reports:
            m_hat = min(r.instance["m"])
            bad_high = [k for k, *_ in r.mismatches if k >= -m_hat]
            if m_hat >= 0 or not r.match or bad_high or r.boundary_flag is None:
                problems.append(f"{label}: {r.instance}")
    flags = [r.boundary_flag for c in cells.values() for r in c.reports]
    record(3, "pFr duality with negative shifts, equality for k >= -m_hat", not problems,
           f"{len(flags)} runs, boundary coefficient matched in {sum(flags)}/{len(flags)}"
           if not problems else "; ".join(problems[:3]))


def test_criterion_4_q_matrix(suite):
    problems = []
    total = 0
    for negative in (False, True):
        cells = _cell_reports(suite, "q", negative)
        for label in Q_LABELS:
            c = cells[label]
            if c.error or len(c.reports) < PER_CELL:
                problems.append(f"{label}/{negative}: {len(c.reports)} reports")
            for r in c.reports:
                total += 1
                inst = qdual.QDualityInstance.from_json(r.instance)
                q_ok = inst.q.is_real() and 0 < inst.q.re < 1
                shape_ok = inst.r <= 3 and (inst.m_hat < 0) == negative
                high_ok = all(k < max(0, -inst.m_hat) for k, *_ in r.mismatches)
                if not (r.match and q_ok and shape_ok and high_ok and r.order == ORDER):
                    problems.append(f"{label}/{negative}: {r.instance}")
                if negative and r.boundary_flag is None:
                    problems.append(f"{label}: boundary flag missing")
    record(4, "basic hypergeometric duality (3 cells x 25, both regimes, N=12)", not problems,
           f"{total} instances exact" if not problems else "; ".join(problems[:3]))


def _crosscheck_instances(theorem):
    out = []
    if theorem == "classical":
        cells = [Cell("classical", lab, neg) for neg in (False, True) for lab in CLASSICAL_LABELS]
        gen = random_classical_instance
    else:
        cells = [Cell("q", lab, neg) for neg in (False, True) for lab in Q_LABELS]
        gen = random_q_instance
    rng = random.Random(f"acceptance:proof:{theorem}")
    for n in range(10):
        out.append(gen(CFG, cells[n % len(cells)], rng))
    return out


def test_criterion_5_proof_level_crosscheck():
    checked = 0
    bad = []
    for inst in _crosscheck_instances("classical"):
        built = classical.build_H(inst, 8)
        bad += [(inst.to_json(), k) for k in classical.proof_crosscheck(inst, built, 8)]
        checked += 9 - max(0, -inst.m_hat)
    for inst in _crosscheck_instances("q"):
        built = qdual.build_G(inst, 8)
        bad += [(inst.to_json(), k) for k in qdual.proof_crosscheck_q(inst, built, 8)]
        checked += 9 - max(0, -inst.m_hat)
    record(5, "residue sum = lemma sum = lemma formula = series coefficient, k <= 8",
           not bad, f"{checked} (instance, k) pairs over 20 instances" if not bad else str(bad[:2]))


def test_criterion_6_shifted_product_identity():
    rng = random.Random("acceptance:pochhammer")

    def check(w, m, k, j):
        lhs = ONE
        for s in range(-m, k):
            lhs = lhs * (w + j - s)
        rhs = ((-1) ** (k - j) * rising_factorial(1 + w, m) * rising_factorial(1 + m + w, j)
               * rising_factorial(-w, k - j))
        return lhs == rhs

    ok = 0
    for _ in range(200):
        k = rng.randint(0, 10)
        ok += check(random_gaussian(rng, 20), rng.randint(0, 5), k, rng.randint(0, k))
    neg_total = neg_ok = 0
    while neg_total < 100:
        m = -rng.randint(1, 5)
        k = rng.randint(-m, 10)
        w = random_gaussian(rng, 20)
        try:
            good = check(w, m, k, rng.randint(0, k))
        except PoleEncountered:
            continue
        neg_total += 1
        neg_ok += good
    record(6, "shifted product / Pochhammer identity", ok == 200 and neg_ok == neg_total,
           f"{ok}/200 with m in [0,5], {neg_ok}/{neg_total} with m < 0, k >= |m|")


def test_criterion_7_float_crosscheck(suite):
    reps = [r for r in suite if r.theorem in ("classical", "q") and r.match]
    missing = [r for r in reps if r.float_check is None]
    worst = max((r.float_check["abs_error"] for r in reps if r.float_check), default=0.0)
    failing = [r for r in reps if r.float_check and not r.float_check["abs_error"] <= FLOAT_TOL]
    ok = reps and not missing and not failing and all(
        r.float_check["z"] == [FLOAT_Z, 0.0] for r in reps)
    record(7, "double-precision evaluation at z=1/10 within 1e-9", bool(ok),
           f"{len(reps)} evaluations, worst abs error {worst:.2e}")


def test_criterion_8_determinism(tmp_path, capsys):
    first, second = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    codes = [main(["suite", "--seed", "7", "--json-out", str(p)]) for p in (first, second)]
    capsys.readouterr()
    a, b = first.read_bytes(), second.read_bytes()
    record(8, "suite JSON output is byte-identical for equal seeds",
           codes == [0, 0] and a == b and len(a) > 0,
           f"exit codes {codes}, {len(a.splitlines())} report lines, identical={a == b}")
