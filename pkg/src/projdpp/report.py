"""Uniform pass/fail reports for identity and inequality checks."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field


@dataclass(frozen=True, slots=True)
class CheckReport:
    """Outcome of one numeric check.

    ``slack`` is ``rhs - lhs`` for a <=-inequality and ``-|lhs - rhs|``
    for an identity, so in both conventions ``passed`` is exactly
    ``slack >= -tolerance``.  ``children`` carry auxiliary checks emitted
    by the same operation; each child satisfies the same invariant for
    its own numbers, and :func:`all_passed` folds the whole tree.
    """

    name: str
    lhs: float
    rhs: float
    slack: float
    tolerance: float
    passed: bool
    witness: str | None = None
    children: tuple["CheckReport", ...] = field(default=())

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "diff": abs(self.lhs - self.rhs),
            "slack": self.slack,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.witness is not None:
            d["witness"] = self.witness
        if self.children:
            d["children"] = [c.to_dict() for c in self.children]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


def inequality_report(
    name: str,
    lhs: float,
    rhs: float,
    tolerance: float,
    witness: str | None = None,
    children: tuple[CheckReport, ...] = (),
) -> CheckReport:
    """Report for the claim ``lhs <= rhs`` up to ``tolerance``."""
    slack = rhs - lhs
    return CheckReport(
        name=name,
        lhs=float(lhs),
        rhs=float(rhs),
        slack=float(slack),
        tolerance=float(tolerance),
        passed=bool(slack >= -tolerance) and math.isfinite(slack),
        witness=witness,
        children=children,
    )


def identity_report(
    name: str,
    lhs: float,
    rhs: float,
    tolerance: float,
    witness: str | None = None,
    children: tuple[CheckReport, ...] = (),
) -> CheckReport:
    """Report for the claim ``lhs == rhs`` up to ``tolerance``."""
    slack = -abs(lhs - rhs)
    return CheckReport(
        name=name,
        lhs=float(lhs),
        rhs=float(rhs),
        slack=float(slack),
        tolerance=float(tolerance),
        passed=bool(slack >= -tolerance) and math.isfinite(slack),
        witness=witness,
        children=children,
    )


def all_passed(report: CheckReport) -> bool:
    """Whether the report and every descendant passed."""
    return report.passed and all(all_passed(c) for c in report.children)


def flatten(report: CheckReport):
    """The report and its descendants, depth first."""
    yield report
    for child in report.children:
        yield from flatten(child)
