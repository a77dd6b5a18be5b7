"""Structured results of identity checks."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Iterable

from .errors import ToleranceExceeded


@dataclass(frozen=True)
class CheckResult:
    """Outcome of verifying one identity over a range of cases.

    ``relation`` is the identity written out in plain text; ``worst`` names
    the case that produced ``max_residual``.
    """

    name: str
    relation: str
    max_residual: float
    tolerance: float
    cases: int = 0
    worst: str = ""
    details: dict[str, Any] = field(default_factory=dict)
    skipped: bool = False

    @property
    def passed(self) -> bool:
        if self.skipped:
            return True
        return math.isfinite(self.max_residual) and self.max_residual <= self.tolerance

    def with_tolerance(self, tol: float) -> "CheckResult":
        return replace(self, tolerance=tol)

    def raise_for_status(self) -> "CheckResult":
        if not self.passed:
            raise ToleranceExceeded(
                f"{self.name}: residual {self.max_residual:.3e} > {self.tolerance:.1e} at {self.worst}"
            )
        return self

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["passed"] = self.passed
        return d

    def line(self) -> str:
        tag = "SKIP" if self.skipped else ("PASS" if self.passed else "FAIL")
        return f"[{tag}] {self.name}: max residual {self.max_residual:.3e} (tol {self.tolerance:.1e}, {self.cases} cases)"


class Tracker:
    """Accumulates residuals case by case and keeps the worst one."""

    def __init__(self, name: str, relation: str, tolerance: float):
        self.name = name
        self.relation = relation
        self.tolerance = tolerance
        self.worst_value = 0.0
        self.worst_case = ""
        self.cases = 0
        self.details: dict[str, Any] = {}

    def add(self, residual: float, case: str = "") -> None:
        residual = float(residual)
        if math.isnan(residual):
            residual = math.inf
        self.cases += 1
        if self.cases == 1 or residual > self.worst_value:
            self.worst_value = residual
            self.worst_case = case

    def result(self) -> CheckResult:
        return CheckResult(
            self.name,
            self.relation,
            self.worst_value,
            self.tolerance,
            self.cases,
            self.worst_case,
            dict(self.details),
        )


def skipped(name: str, relation: str, reason: str) -> CheckResult:
    return CheckResult(name, relation, 0.0, 0.0, 0, "", {"reason": reason}, skipped=True)


def all_passed(results: Iterable[CheckResult]) -> bool:
    return all(r.passed for r in results)
