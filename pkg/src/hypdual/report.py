"""Machine-readable outcome of a verification run."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

from .series import TruncatedSeries, mismatched_indices


@dataclass
class VerificationReport:
    instance: dict[str, Any]
    theorem: str  # "classical" | "q" | "lemma"
    case_label: str
    order: Optional[int]
    match: bool
    mod_degree: int = 0
    mismatches: list[tuple[int, str, str]] = field(default_factory=list)
    # None when m_hat >= 0; otherwise whether coefficient -m_hat agreed
    boundary_flag: Optional[bool] = None
    negative_m: bool = False
    float_check: Optional[dict[str, Any]] = None

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["mismatches"] = [list(m) for m in self.mismatches]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @property
    def ok(self) -> bool:
        fc = self.float_check
        return self.match and (fc is None or fc["ok"])


def compare_series(
    *,
    theorem: str,
    instance: dict[str, Any],
    case_label: str,
    built: TruncatedSeries,
    expected: TruncatedSeries,
    m_hat: int,
) -> VerificationReport:
    """Compare built and expected series modulo polynomials below ``-m_hat``."""
    d = max(0, -m_hat)
    bad = mismatched_indices(built, expected)
    mismatches = [(k, str(built[k]), str(expected[k])) for k in bad]
    boundary = None
    if m_hat < 0 and d <= built.order:
        boundary = d not in bad
    return VerificationReport(
        instance=instance,
        theorem=theorem,
        case_label=case_label,
        order=built.order,
        match=all(k < d for k in bad),
        mod_degree=d,
        mismatches=mismatches,
        boundary_flag=boundary,
        negative_m=m_hat < 0,
    )


def float_crosscheck(
    report: VerificationReport,
    built: TruncatedSeries,
    expected: TruncatedSeries,
    z: complex = 0.1,
    tol: float = 1e-9,
) -> VerificationReport:
    """Evaluate both truncations at z in double precision and record the gap.

    Coefficients below ``report.mod_degree`` are dropped from both sides, since
    the exact comparison allows them to differ.
    """
    if abs(z) > 0.25:
        raise ValueError("float cross-check needs |z| <= 1/4")
    d = report.mod_degree
    if d:
        built = TruncatedSeries([0] * d + list(built.coeffs[d:]))
        expected = TruncatedSeries([0] * d + list(expected.coeffs[d:]))
    err = abs(built.eval_float(z) - expected.eval_float(z))
    report.float_check = {
        "z": [z.real, z.imag] if isinstance(z, complex) else [float(z), 0.0],
        "abs_error": err,
        "tol": tol,
        "ok": err <= tol,
    }
    return report
