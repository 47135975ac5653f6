"""Cell-level inequality checks between the counting quantities.

A check runs only on exact brackets; any heuristic input downgrades the
result to "inconclusive" rather than asserting anything.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .space import FiniteMetricSpace
from .counts import (CountBracket, max_separated, min_spanning, min_ball_cover,
                     min_diameter_cover)
from .solvers import DEFAULT_BUDGET

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass
class CheckResult:
    name: str
    status: str
    detail: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != FAIL


def _cell(name: str, lhs: CountBracket, rhs: CountBracket, detail: dict) -> CheckResult:
    if lhs.mode != "exact" or rhs.mode != "exact":
        return CheckResult(name, INCONCLUSIVE, detail)
    status = PASS if lhs.value <= rhs.value else FAIL
    detail = dict(detail, lhs=lhs.value, rhs=rhs.value)
    return CheckResult(name, status, detail)


def verify_chain(space: FiniteMetricSpace, eps, budget: int = DEFAULT_BUDGET,
                 horizon: int = 1) -> list[CheckResult]:
    """The six chain inequalities at scale eps on one (already dynamical) space.

    cover(2e) <= span(e) <= sep(e) <= cover(e) and, reading the same space
    statically, sep(2e) <= balls(e) <= sep(e).
    """
    detail = {"space": space.name, "eps": float(eps), "horizon": horizon}
    sep_e = max_separated(space, eps, budget, horizon)
    sep_2e = max_separated(space, 2 * eps, budget, horizon)
    span_e = min_spanning(space, eps, budget, horizon)
    cov_e = min_diameter_cover(space, eps, budget, horizon)
    cov_2e = min_diameter_cover(space, 2 * eps, budget, horizon)
    balls_e = min_ball_cover(space, eps, budget)
    return [
        _cell("cover(2e)<=span(e)", cov_2e, span_e, detail),
        _cell("span(e)<=sep(e)", span_e, sep_e, detail),
        _cell("sep(e)<=cover(e)", sep_e, cov_e, detail),
        _cell("sep(2e)<=balls(e)", sep_2e, balls_e, detail),
        _cell("balls(e)<=sep(e)", balls_e, sep_e, detail),
        _cell("cover(2e)<=cover(e)", cov_2e, cov_e, detail),
    ]


def verify_subadditivity(space_n, space_m, space_nm, eps,
                         budget: int = DEFAULT_BUDGET) -> CheckResult:
    """cover(n+m, e) <= cover(n, e) * cover(m, e) on exact cells."""
    a = min_diameter_cover(space_n, eps, budget)
    c = min_diameter_cover(space_m, eps, budget)
    ab = min_diameter_cover(space_nm, eps, budget)
    detail = {"eps": float(eps)}
    if "exact" not in (a.mode,) or c.mode != "exact" or ab.mode != "exact":
        return CheckResult("subadditivity", INCONCLUSIVE, detail)
    status = PASS if ab.value <= a.value * c.value else FAIL
    detail.update(combined=ab.value, left=a.value, right=c.value)
    return CheckResult("subadditivity", status, detail)
