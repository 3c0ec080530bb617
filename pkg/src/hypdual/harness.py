"""Random admissible instances and the case-matrix verification suite.

Every cell draws from its own ``random.Random`` seeded by ``(seed, cell id)``,
so a cell's instances do not depend on which other cells run or in what order.
"""
from __future__ import annotations

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from . import classical, qdual
from .derangement import PointMultiset, PointSet, derangement_sum, predicted_sum
from .errors import DistinctnessViolation, DualityError, GenerationExhausted, PoleEncountered
from .field import GaussianRational
from .report import VerificationReport, float_crosscheck

log = logging.getLogger(__name__)

MAX_ATTEMPTS = 1000

CLASSICAL_LABELS = (
    "M<r",
    "M=r,p<=r",
    "M=r,p=r+1",
    "M=r+1,p<=r-1",
    "M=r+1,p=r",
    "M=r+1,p=r+1",
)
Q_LABELS = ("M<r", "M=r", "M=r+1")
LEMMA_LABELS = ("nA>nB+1", "nA=nB+1", "nA=nB")


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    order: int = 12
    per_cell: int = 25
    r_max: int = 4
    q_r_max: int = 3
    denominator_bound: int = 20
    exponent_bound: Optional[int] = None
    m_min: int = -3
    lemma_max_points: int = 8
    float_z: complex = 0.1
    float_tol: float = 1e-9

    def __post_init__(self):
        for name in ("per_cell", "r_max", "q_r_max", "denominator_bound", "lemma_max_points"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.order < 0:
            raise ValueError("order must be non-negative")
        if self.denominator_bound < 2:
            raise ValueError("denominator_bound must be at least 2")
        if self.m_min > -1:
            raise ValueError("m_min must be negative")


@dataclass(frozen=True)
class Cell:
    theorem: str  # "classical" | "q" | "lemma"
    label: str
    negative: bool = False

    @property
    def id(self) -> str:
        return f"{self.theorem}/{self.label}/{'neg' if self.negative else 'nonneg'}"


def all_cells() -> list[Cell]:
    cells = [Cell("classical", lab, neg) for neg in (False, True) for lab in CLASSICAL_LABELS]
    cells += [Cell("q", lab, neg) for neg in (False, True) for lab in Q_LABELS]
    cells += [Cell("lemma", lab) for lab in LEMMA_LABELS]
    return cells


def cell_rng(cfg: SuiteConfig, cell: Cell) -> random.Random:
    return random.Random(f"{cfg.seed}:{cell.id}")


# -- scalar draws ---------------------------------------------------------


def random_rational(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_gaussian(rng: random.Random, bound: int, *, nonzero: bool = False) -> GaussianRational:
    while True:
        re = random_rational(rng, bound)
        im = random_rational(rng, bound) if rng.random() < 0.5 else Fraction(0)
        if not (nonzero and re == 0 and im == 0):
            return GaussianRational(re, im)


def random_q(rng: random.Random, bound: int) -> GaussianRational:
    den = rng.randint(2, bound)
    return GaussianRational(Fraction(rng.randint(1, den - 1), den))


def _composition(rng: random.Random, total: int, parts: int) -> list[int]:
    """Random non-negative integers of length ``parts`` summing to ``total``."""
    out = [0] * parts
    for _ in range(total):
        out[rng.randrange(parts)] += 1
    return out


def _shift_vector(rng: random.Random, target: int, parts: int, negative: bool, m_min: int) -> list[int]:
    if not negative:
        return _composition(rng, target, parts)
    if parts == 1:
        return [target]
    low = max(1, -target)
    neg = -rng.randint(low, max(low, -m_min))
    rest = _composition(rng, target - neg, parts - 1)
    pos = rng.randrange(parts)
    return rest[:pos] + [neg] + rest[pos:]


# -- classical instances --------------------------------------------------


def _classical_shapes(cell: Cell, r_max: int) -> list[tuple[int, int]]:
    """Admissible (r, p) pairs for a case cell."""
    shapes = []
    min_p = 2 if cell.negative else 0
    for r in range(1, r_max + 1):
        if cell.label == "M<r":
            ps = range(1 if cell.negative else 0, r + 2)
        elif cell.label == "M=r,p<=r":
            ps = range(max(1, min_p), r + 1)
        elif cell.label == "M=r,p=r+1":
            ps = [r + 1]
        elif cell.label == "M=r+1,p<=r-1":
            ps = range(max(1, min_p), r)
        elif cell.label == "M=r+1,p=r":
            ps = [r] if r >= max(1, min_p) else []
        elif cell.label == "M=r+1,p=r+1":
            ps = [r + 1]
        else:
            raise ValueError(f"unknown classical cell {cell.label!r}")
        shapes += [(r, p) for p in ps]
    return shapes


def _classical_target(rng: random.Random, cell: Cell, r: int, p: int, m_min: int) -> int:
    if cell.label == "M<r":
        if not cell.negative:
            return 0 if p == 0 else rng.randint(0, r - 1)
        if p == 1:
            return rng.randint(m_min, -1)
        return rng.randint(m_min + 1, r - 1)
    return r if cell.label.startswith("M=r,") else r + 1


def _spread_a(rng: random.Random, r: int, bound: int) -> list[GaussianRational]:
    # fractional parts i/(r+3) are pairwise distinct, so no difference is an integer
    return [
        GaussianRational(Fraction(rng.randint(-bound, bound) * (r + 3) + i + 1, r + 3))
        for i in range(r + 1)
    ]


def random_classical_instance(
    cfg: SuiteConfig, cell: Cell, rng: Optional[random.Random] = None
) -> classical.ClassicalDualityInstance:
    rng = rng or cell_rng(cfg, cell)
    shapes = _classical_shapes(cell, cfg.r_max)
    if not shapes:
        raise GenerationExhausted(f"no (r, p) with r <= {cfg.r_max} fits cell {cell.id}")
    bound = cfg.denominator_bound
    for attempt in range(2 * MAX_ATTEMPTS):
        r, p = rng.choice(shapes)
        target = _classical_target(rng, cell, r, p, cfg.m_min)
        m = _shift_vector(rng, target, p, cell.negative, cfg.m_min)
        if attempt < MAX_ATTEMPTS:
            a = [random_gaussian(rng, bound) for _ in range(r + 1)]
        else:
            a = _spread_a(rng, r, bound)
        b = [random_gaussian(rng, bound) for _ in range(p)]
        try:
            inst = classical.ClassicalDualityInstance(p=p, r=r, a=a, b=b, m=m)
            for i in range(r + 1):
                classical.coefficient_c(inst, i)
        except (DualityError, ZeroDivisionError):
            continue
        return inst
    raise GenerationExhausted(f"cell {cell.id}: no admissible instance")


# -- q instances ----------------------------------------------------------


def _q_target(rng: random.Random, cell: Cell, r: int, m_min: int) -> int:
    if cell.label == "M<r":
        return rng.randint(m_min + 1 if cell.negative else 0, r - 1)
    if cell.label == "M=r":
        return r
    if cell.label == "M=r+1":
        return r + 1
    raise ValueError(f"unknown q cell {cell.label!r}")


def random_q_instance(
    cfg: SuiteConfig, cell: Cell, rng: Optional[random.Random] = None
) -> qdual.QDualityInstance:
    rng = rng or cell_rng(cfg, cell)
    bound = cfg.denominator_bound
    for _ in range(MAX_ATTEMPTS):
        r = rng.randint(1, cfg.q_r_max)
        m = _shift_vector(rng, _q_target(rng, cell, r, cfg.m_min), r + 1, cell.negative, cfg.m_min)
        q = random_q(rng, bound)
        a = [random_gaussian(rng, bound, nonzero=True) for _ in range(r + 1)]
        b = [random_gaussian(rng, bound, nonzero=True) for _ in range(r + 1)]
        E = cfg.exponent_bound
        if E is None:
            E = qdual.default_exponent_bound(cfg.order, m)
        try:
            inst = qdual.QDualityInstance(r=r, q=q, a=a, b=b, m=m, exponent_bound=E)
            for i in range(r + 1):
                qdual.coefficient_c_q(inst, i)
        except (DualityError, ZeroDivisionError):
            continue
        return inst
    raise GenerationExhausted(f"cell {cell.id}: no admissible instance")


# -- lemma pairs ----------------------------------------------------------


def random_lemma_pair(
    rng: random.Random,
    bound: int,
    label: Optional[str] = None,
    n_a: Optional[int] = None,
    n_b: Optional[int] = None,
    max_points: int = 8,
) -> tuple[PointSet, PointMultiset]:
    if n_a is None:
        n_a = rng.randint(2 if label == "nA>nB+1" else 1, max_points)
    if n_b is None:
        if label == "nA>nB+1":
            n_b = rng.randint(0, n_a - 2)
        elif label == "nA=nB+1":
            n_b = n_a - 1
        elif label == "nA=nB":
            n_b = n_a
        else:
            n_b = rng.randint(0, n_a)
    for _ in range(MAX_ATTEMPTS):
        try:
            A = PointSet(random_gaussian(rng, bound) for _ in range(n_a))
        except DistinctnessViolation:
            continue
        return A, PointMultiset(random_gaussian(rng, bound) for _ in range(n_b))
    raise GenerationExhausted(f"could not draw {n_a} distinct points")


def lemma_label(n_a: int, n_b: int) -> str:
    if n_a > n_b + 1:
        return "nA>nB+1"
    return "nA=nB+1" if n_a == n_b + 1 else "nA=nB"


def lemma_report(A: PointSet, B: PointMultiset) -> VerificationReport:
    got, want = derangement_sum(A, B), predicted_sum(A, B)
    match = got == want
    return VerificationReport(
        instance={"A": [str(x) for x in A], "B": [str(x) for x in B]},
        theorem="lemma",
        case_label=lemma_label(len(A), len(B)),
        order=None,
        match=match,
        mismatches=[] if match else [(0, str(got), str(want))],
    )


# -- suite ----------------------------------------------------------------


def verify_with_float(inst, cfg: SuiteConfig) -> VerificationReport:
    if isinstance(inst, classical.ClassicalDualityInstance):
        built, expected = classical.build_H(inst, cfg.order), classical.expected_H(inst, cfg.order)
        report = classical.verify(inst, cfg.order)
    else:
        built, expected = qdual.build_G(inst, cfg.order), qdual.expected_G(inst, cfg.order)
        report = qdual.verify(inst, cfg.order)
    if report.match:
        float_crosscheck(report, built, expected, cfg.float_z, cfg.float_tol)
    return report


@dataclass
class CellResult:
    cell: Cell
    reports: list[VerificationReport] = field(default_factory=list)
    error: Optional[str] = None


def run_cell(cfg: SuiteConfig, cell: Cell) -> CellResult:
    rng = cell_rng(cfg, cell)
    result = CellResult(cell)
    try:
        for _ in range(cfg.per_cell):
            if cell.theorem == "lemma":
                A, B = random_lemma_pair(
                    rng, cfg.denominator_bound, cell.label, max_points=cfg.lemma_max_points
                )
                result.reports.append(lemma_report(A, B))
                continue
            if cell.theorem == "classical":
                inst = random_classical_instance(cfg, cell, rng)
            else:
                inst = random_q_instance(cfg, cell, rng)
            result.reports.append(verify_with_float(inst, cfg))
    except (GenerationExhausted, PoleEncountered) as exc:
        log.warning("cell %s: %s", cell.id, exc)
        result.error = str(exc)
    return result


@dataclass
class SuiteResult:
    cells: list[CellResult]

    @property
    def reports(self) -> list[VerificationReport]:
        return [r for c in self.cells for r in c.reports]

    def __iter__(self) -> Iterator[VerificationReport]:
        return iter(self.reports)

    def __len__(self) -> int:
        return len(self.reports)

    @property
    def errors(self) -> list[tuple[str, str]]:
        return [(c.cell.id, c.error) for c in self.cells if c.error]

    @property
    def all_match(self) -> bool:
        return all(r.ok for r in self.reports)

    def exit_status(self) -> int:
        if not self.all_match:
            return 1
        return 2 if self.errors else 0

    def to_jsonl(self) -> str:
        return "".join(r.to_json() + "\n" for r in self.reports)

    def summary(self) -> str:
        rows = [("theorem", "case", "m", "n", "match", "float", "note")]
        for c in self.cells:
            reps = c.reports
            floats = [r for r in reps if r.float_check is not None]
            rows.append(
                (
                    c.cell.theorem,
                    c.cell.label,
                    "" if c.cell.theorem == "lemma" else ("neg" if c.cell.negative else ">=0"),
                    str(len(reps)),
                    f"{sum(r.match for r in reps)}/{len(reps)}",
                    f"{sum(r.float_check['ok'] for r in floats)}/{len(floats)}" if floats else "-",
                    c.error or "",
                )
            )
        widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
        lines = ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in rows]
        lines.insert(1, "  ".join("-" * w for w in widths))
        verdict = "ALL MATCH" if self.all_match and not self.errors else "FAILURES PRESENT"
        lines.append(f"{len(self)} reports, {verdict}")
        return "\n".join(lines)


def _run_cell_args(args):
    return run_cell(*args)


def run_suite(cfg: SuiteConfig, cells: Optional[list[Cell]] = None, jobs: int = 1) -> SuiteResult:
    cells = all_cells() if cells is None else cells
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_cell_args, [(cfg, c) for c in cells]))
    else:
        results = [run_cell(cfg, c) for c in cells]
    return SuiteResult(results)
