"""Lattices of measures and the induced dynamics on them.

A (k, q)-lattice holds every measure with at most k atoms on the net and
weights in multiples of 1/q.  It contains all point masses, is closed
under the pushforward of an index-closed map (supports can only merge),
and its transport distances make a finite metric space on which the
counting layer runs unchanged.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import ParameterError
from ..metric_core.space import FiniteMetricSpace
from ..metric_core.counts import max_separated, min_diameter_cover, CountBracket
from ..metric_core.solvers import DEFAULT_BUDGET
from ..systems.base import DynamicalSystem, bowen_space
from .atomic import AtomicMeasure, pushforward
from .wasserstein import w1_pairs_two_atom
from .constructions import apart_count

LATTICE_CAP = 2_000


def measure_lattice(size: int, max_atoms: int = 2, q: int = 4) -> list[AtomicMeasure]:
    """All measures with <= max_atoms atoms among ``size`` points, weights i/q."""
    if max_atoms < 1 or q < 1:
        raise ParameterError("need max_atoms >= 1 and q >= 1")
    out: list[AtomicMeasure] = [AtomicMeasure.dirac(i) for i in range(size)]
    if max_atoms >= 2:
        for i, j in itertools.combinations(range(size), 2):
            for num in range(1, q):
                out.append(AtomicMeasure((i, j),
                                         (Fraction(num, q), Fraction(q - num, q))))
    if max_atoms >= 3:
        raise ParameterError("lattices beyond two atoms are not materialised")
    if len(out) > LATTICE_CAP:
        raise ParameterError(f"lattice of {len(out)} measures exceeds cap {LATTICE_CAP}")
    return out


def lattice_transport_space(system: DynamicalSystem, measures: list[AtomicMeasure],
                            horizon: int = 1) -> FiniteMetricSpace:
    """Finite metric space of exact W_1 distances at the given horizon."""
    dn = bowen_space(system, horizon).as_matrix()
    k = len(measures)
    a0 = np.array([mu.atoms[0] for mu in measures])
    a1 = np.array([mu.atoms[-1] for mu in measures])  # repeats atom for diracs
    wa = np.array([float(mu.weights[0]) for mu in measures])
    ii, jj = np.triu_indices(k, 1)
    blocks = np.empty((ii.size, 2, 2))
    blocks[:, 0, 0] = dn[a0[ii], a0[jj]]
    blocks[:, 0, 1] = dn[a0[ii], a1[jj]]
    blocks[:, 1, 0] = dn[a1[ii], a0[jj]]
    blocks[:, 1, 1] = dn[a1[ii], a1[jj]]
    vals = w1_pairs_two_atom(blocks, wa[ii], wa[jj])
    dist = np.zeros((k, k))
    dist[ii, jj] = vals
    dist += dist.T
    return FiniteMetricSpace(matrix=dist,
                             name=f"pmeasure({system.name},n={horizon})",
                             check=False)


def induced_step(measures: list[AtomicMeasure], step: np.ndarray) -> np.ndarray:
    """Index map of the pushforward on the lattice."""
    index = {(mu.atoms, mu.weights): i for i, mu in enumerate(measures)}
    out = np.empty(len(measures), dtype=int)
    for i, mu in enumerate(measures):
        img = pushforward(mu, step)
        key = (img.atoms, img.weights)
        if key not in index:
            raise ParameterError("lattice is not closed under the pushforward")
        out[i] = index[key]
    return out


@dataclass(frozen=True)
class InducedCell:
    horizon: int
    eps: float
    base_separated: CountBracket      # points under d_n
    apart: CountBracket               # lattice measures pairwise apart
    lattice_cover: CountBracket       # diameter cover under W_{1,n}
    embedding_holds: bool             # separated <= apart (point masses embed)
    covering_diagnostic: dict


# exact covers of the lattice are diagnostic-only; keep their search short
DIAGNOSTIC_BUDGET = 20_000


def induced_sweep(system: DynamicalSystem, horizons: list[int], grid: list[float],
                  max_atoms: int = 2, q: int = 4,
                  budget: int = DEFAULT_BUDGET) -> list[InducedCell]:
    """Counts on the measure lattice against counts on the base system.

    The embedding check certifies separated(base) <= apart(lattice) through
    the point-mass family over the separated witness, which is pairwise
    apart by construction.  The covering diagnostic reports whether
    log log cover(lattice, eps) stays below log cover(base, eps/2) +
    log log (C / eps) with C twice the base diameter; the constant is not
    pinned down, so the comparison is reported and never asserted.
    """
    from .constructions import support_cross_min

    measures = measure_lattice(system.space.size, max_atoms, q)
    cells = []
    for n in horizons:
        base = bowen_space(system, n)
        base_m = base.as_matrix()
        lattice = lattice_transport_space(system, measures, n)
        cross = support_cross_min(base, measures)
        for eps in grid:
            sep = max_separated(base, eps, budget, horizon=n)
            apart = apart_count(base, measures, eps,
                                min(budget, DIAGNOSTIC_BUDGET), cross_min=cross)
            cover = min_diameter_cover(lattice, eps, min(budget, DIAGNOSTIC_BUDGET),
                                       horizon=n)
            witness = sep.witness or ()
            dirac_family_apart = all(
                base_m[i, j] > float(eps)
                for a, i in enumerate(witness) for j in witness[a + 1:])
            apart_floor = max(apart.lower,
                              len(witness) if dirac_family_apart else 0)
            holds = sep.mode == "exact" and sep.value <= apart_floor
            cells.append(InducedCell(
                n, float(eps), sep, apart, cover, holds,
                _covering_diagnostic(base, cover, eps,
                                     min(budget, DIAGNOSTIC_BUDGET), n)))
    return cells


def _covering_diagnostic(base: FiniteMetricSpace, cover: CountBracket, eps,
                         budget: int, n: int) -> dict:
    big_c = 2.0 * base.diameter
    base_cover = min_diameter_cover(base, float(eps) / 2.0, budget, horizon=n)
    out = {"constant": big_c, "asserted": False}
    usable = (cover.mode == "exact" and base_cover.mode == "exact"
              and cover.value > 1 and big_c > float(eps) * math.e)
    if usable:
        lhs = math.log(math.log(cover.value))
        rhs = math.log(base_cover.value) + math.log(math.log(big_c / float(eps)))
        out.update(lhs=lhs, rhs=rhs, within=bool(lhs <= rhs))
    else:
        out.update(note="needs exact covers and a scale well under the diameter")
    return out
