"""Entropy-at-scale probes for horseshoe-ladder maps.

Per-block probes fit the growth of the symbolic separated counts; past the
block's branch scale the slope must settle at log(branches).  The map-level
table assembles, at each scale, the blocks already resolved there (branch
scale >= eps); unresolved blocks are excluded because their symbolic counts
overstate the growth rate before the branch structure is distinguishable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ParameterError
from ..estimators.slopes import SlopeEstimate, tail_regression
from .kolyada import KolyadaSnohaMap, symbolic_separated_count

PROBE_HORIZONS = list(range(1, 11))
PROBE_TAIL = 4


@dataclass(frozen=True)
class ProbeRow:
    eps: float
    slope: SlopeEstimate
    inconclusive: bool


def horseshoe_entropy_probe(tmap: KolyadaSnohaMap, k: int, eps_grid,
                            n_max: int = 10, tail: int = PROBE_TAIL) -> list[ProbeRow]:
    """Per-scale entropy slopes of block k's symbolic model."""
    blk = tmap.block(k)
    out = []
    horizons = list(range(1, n_max + 1))
    for eps in eps_grid:
        eps = Fraction(eps)
        if len(horizons) < 2:
            raise ParameterError("n_max too small to fit a slope")
        logs = [math.log(symbolic_separated_count(blk.length, blk.branches, n, eps))
                for n in horizons]
        est = tail_regression(horizons, logs, window=tail)
        inconclusive = n_max < tail or eps >= blk.length
        out.append(ProbeRow(float(eps), est, inconclusive))
    return out


def entropy_scale_table(tmap: KolyadaSnohaMap, grid,
                        horizons: list[int] | None = None,
                        tail: int = PROBE_TAIL) -> list[tuple[float, SlopeEstimate]]:
    """Map-level per-scale entropy slopes from resolved-block counts."""
    horizons = horizons or PROBE_HORIZONS
    rows = []
    for eps in grid:
        eps = Fraction(eps)
        resolved = [blk for blk in tmap.blocks if blk.branch_scale >= eps]
        if not resolved:
            est = SlopeEstimate(0.0, len(horizons), 0.0, 0.0, 0.0,
                                method="empty", note="no resolved blocks")
        else:
            logs = [math.log(sum(symbolic_separated_count(b.length, b.branches, n, eps)
                                 for b in resolved))
                    for n in horizons]
            est = tail_regression(horizons, logs, window=tail)
        rows.append((float(eps), est))
    return rows


def ladder_grid(tmap: KolyadaSnohaMap, below: int = 2) -> list[Fraction]:
    """Branch-scale ladder eps_1 > ... > eps_kmax plus dyadic refinements below."""
    grid = [blk.branch_scale for blk in tmap.blocks]
    last = grid[-1]
    grid.extend(last / 2**i for i in range(1, below + 1))
    return grid
