"""Named finite-scale proxies for the limit quantities.

Inputs are (scale, count) or (horizon, count) rows carrying exact counts;
heuristic cells never enter a regression (they flag the estimate or are
dropped, per operation).  The convention log 0 = 0 applies wherever a
count of 1 would otherwise produce log log 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import ParameterError
from ..metric_core.counts import CountBracket
from .slopes import (SlopeEstimate, tail_regression, rank_corrected_fit,
                     staircase_envelope, DEFAULT_TAIL)


def log_plus(t: float) -> float:
    """max(0, log t), with log_plus(0) = 0 and log_plus(inf) = inf."""
    if t <= 1.0:
        return 0.0
    return math.log(t)


def _exact_rows(rows: list[tuple[float, CountBracket]]):
    keep = [(x, br) for x, br in rows if br.mode == "exact"]
    dropped = len(rows) - len(keep)
    return keep, dropped


def entropy_at_scale(rows: list[tuple[int, CountBracket]],
                     tail: int = DEFAULT_TAIL) -> SlopeEstimate:
    """Growth rate of log(separated count) in the horizon at one scale."""
    keep, dropped = _exact_rows(rows)
    if len(keep) < 2:
        raise ParameterError("need >= 2 exact horizons for an entropy slope")
    ns = [n for n, _ in keep]
    logs = [math.log(br.value) for _, br in keep]
    note = f"dropped {dropped} heuristic cells" if dropped else ""
    return tail_regression(ns, logs, window=tail, flagged=dropped > 0, note=note)


def box_dimension_estimate(rows: list[tuple[float, CountBracket]],
                           tail: int = DEFAULT_TAIL) -> SlopeEstimate:
    """Regression of log(ball-cover count) against |log eps|."""
    keep, dropped = _exact_rows(rows)
    if len(keep) < 2:
        raise ParameterError("need >= 2 exact scales")
    xs = [abs(math.log(eps)) for eps, _ in keep]
    ys = [math.log(br.value) for _, br in keep]
    note = f"dropped {dropped} heuristic cells" if dropped else ""
    return tail_regression(xs, ys, window=tail, flagged=dropped > 0, note=note)


def metric_order_estimate(rows: list[tuple[float, CountBracket]],
                          tail: int = DEFAULT_TAIL) -> SlopeEstimate:
    """Regression of log log(count) against |log eps|; count-1 rows excluded."""
    keep, dropped = _exact_rows(rows)
    pts = [(abs(math.log(eps)), math.log(math.log(br.value)))
           for eps, br in keep if br.value > 1]
    excluded = len(keep) - len(pts)
    if len(pts) < 2:
        raise ParameterError("need >= 2 usable scales (count > 1)")
    xs, ys = zip(*pts)
    notes = []
    if dropped:
        notes.append(f"dropped {dropped} heuristic cells")
    if excluded:
        notes.append(f"excluded {excluded} count-1 rows (log 0 = 0)")
    return tail_regression(xs, ys, window=tail, flagged=dropped > 0,
                           note="; ".join(notes))


def mdim_estimate(h_rows: list[tuple[float, SlopeEstimate]],
                  corrected: bool = True) -> SlopeEstimate:
    """Regression of the per-scale entropy against |log eps|.

    Scale ladders produce staircase data, so the fit runs on the plateau
    corners with the rank correction (see slopes module); ``corrected=False``
    gives the plain tail regression instead.
    """
    flagged = any(h.flagged for _, h in h_rows)
    xs = [abs(math.log(eps)) for eps, _ in h_rows]
    ys = [h.value for _, h in h_rows]
    if not corrected:
        return tail_regression(xs, ys, flagged=flagged)
    ex, ey = staircase_envelope(xs, ys)
    if len(ex) < 2:
        return tail_regression(xs, ys, flagged=flagged, note="degenerate ladder")
    return rank_corrected_fit(ex, ey, flagged=flagged)


def mdim_mo_estimate(h_rows: list[tuple[float, SlopeEstimate]],
                     corrected: bool = True) -> SlopeEstimate:
    """Regression of log+ of the per-scale entropy against |log eps|."""
    flagged = any(h.flagged for _, h in h_rows)
    xs = [abs(math.log(eps)) for eps, _ in h_rows]
    ys = [log_plus(h.value) for _, h in h_rows]
    if all(y == 0.0 for y in ys):
        return SlopeEstimate(0.0, len(xs), 0.0, 0.0, 0.0, flagged=flagged,
                             method="clamped",
                             note="all entropies <= 1; log+ clamps to 0")
    if not corrected:
        return tail_regression(xs, ys, flagged=flagged)
    ex, ey = staircase_envelope(xs, ys)
    if len(ex) < 2:
        return tail_regression(xs, ys, flagged=flagged, note="degenerate ladder")
    return rank_corrected_fit(ex, ey, flagged=flagged)


@dataclass(frozen=True)
class MeanBoxDimension:
    per_horizon: tuple[tuple[int, float], ...]  # (n, box dimension of d_n)
    normalized: tuple[tuple[int, float], ...]   # (n, dim/n)
    estimate: SlopeEstimate                     # trend of dim/n over n
    flagged: bool


def mean_box_dimension_estimate(per_n: list[tuple[int, SlopeEstimate]]) -> MeanBoxDimension:
    """Per-horizon box dimensions and the trend of their n-normalised sequence."""
    if len(per_n) < 2:
        raise ParameterError("need box estimates at >= 2 horizons")
    flagged = any(e.flagged for _, e in per_n)
    seq = tuple((n, e.value) for n, e in per_n)
    norm = tuple((n, e.value / n) for n, e in per_n)
    est = tail_regression([n for n, _ in norm], [v for _, v in norm],
                          window=len(norm), flagged=flagged)
    return MeanBoxDimension(seq, norm, est, flagged)
