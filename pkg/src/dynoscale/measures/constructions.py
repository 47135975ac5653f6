"""Measure constructions used by the variational lower-bound machinery.

The ladder construction stacks, for j = 1..J, uniform measures on maximal
separated sets at scales 4 * 2**-(j*j), weighted 2**-j; the tail mass
2**-J joins the last layer so the total stays exactly 1 while every layer
keeps nu >= 2**-j * mu_j, the domination the quantization bounds consume.

Also here: the two supporting checks (transport lower bound against a
uniform separated measure, and quantization monotonicity under measure
domination) and the pairwise-apart counting of measure families.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import ParameterError
from ..metric_core.space import FiniteMetricSpace
from ..metric_core.counts import max_separated, CountBracket
from ..metric_core.solvers import (DEFAULT_BUDGET, exact_max_independent_set,
                                   greedy_independent_set)
from ..errors import BudgetExceededError
from ..systems.base import DynamicalSystem, bowen_space
from .atomic import AtomicMeasure
from .wasserstein import wasserstein


@dataclass(frozen=True)
class LadderLayer:
    level: int
    scale: Fraction              # 2**-(j*j)
    separated: tuple[int, ...]   # maximal (n, 4*scale)-separated witness
    measure: AtomicMeasure
    coefficient: Fraction


@dataclass(frozen=True)
class LadderMeasure:
    measure: AtomicMeasure
    layers: tuple[LadderLayer, ...]
    horizon: int


def ladder_scale(j: int) -> Fraction:
    return Fraction(1, 2 ** (j * j))


def ladder_construction(system: DynamicalSystem, horizon: int, j_max: int,
                      budget: int = DEFAULT_BUDGET) -> LadderMeasure:
    """The stacked separated-set measure at a reference horizon."""
    if j_max < 1:
        raise ParameterError("need at least one layer")
    if 2.0 ** (-(j_max**2)) == 0.0:
        raise ParameterError("layer scale underflows")
    dn = bowen_space(system, horizon)
    layers = []
    for j in range(1, j_max + 1):
        eps_j = ladder_scale(j)
        bracket = max_separated(dn, 4 * eps_j, budget, horizon=horizon)
        if bracket.mode != "exact":
            raise ParameterError(f"layer {j} separated set not exact within budget")
        coeff = Fraction(1, 2**j)
        if j == j_max:
            coeff += Fraction(1, 2**j_max)  # absorb the series tail
        layers.append(LadderLayer(j, eps_j, bracket.witness,
                                  AtomicMeasure.uniform(bracket.witness), coeff))
    acc: dict[int, Fraction] = {}
    for layer in layers:
        for a, w in zip(layer.measure.atoms, layer.measure.weights):
            acc[a] = acc.get(a, Fraction(0)) + layer.coefficient * w
    atoms = tuple(sorted(acc))
    mu0 = AtomicMeasure(atoms, tuple(acc[a] for a in atoms))
    return LadderMeasure(mu0, tuple(layers), horizon)


def dominated_layer(ladder: LadderMeasure, j: int) -> tuple[Fraction, AtomicMeasure]:
    """(t, mu_j) with ladder.measure >= t * mu_j; t = 2**-j by construction."""
    layer = ladder.layers[j - 1]
    return Fraction(1, 2**j), layer.measure


def transport_lower_bound(count: int, smaller_support: int, eps) -> Fraction:
    """(C - C_nu + 1)/C * eps/2: the floor under W_1 against a uniform
    measure on C points pairwise more than eps apart."""
    if smaller_support >= count:
        raise ParameterError("bound applies only to strictly smaller supports")
    return Fraction(count - smaller_support + 1, count) * Fraction(eps) / 2


def check_transport_lower_bound(space: FiniteMetricSpace, separated: tuple[int, ...],
                                eps, nu: AtomicMeasure) -> dict:
    """Exact W_1 against the bound; returns the comparison, never asserts."""
    mu = AtomicMeasure.uniform(separated)
    bound = transport_lower_bound(len(separated), nu.support_size, eps)
    value, _ = wasserstein(space, mu, nu, p=1.0)
    return {"w1": value, "bound": float(bound),
            "holds": value >= float(bound) - 1e-12}


def support_cross_min(space: FiniteMetricSpace,
                      measures: list[AtomicMeasure]) -> np.ndarray:
    """Pairwise minimum distance between supports (vectorised for <= 2 atoms)."""
    k = len(measures)
    m = space.as_matrix()
    if all(mu.support_size <= 2 for mu in measures):
        a0 = np.array([mu.atoms[0] for mu in measures])
        a1 = np.array([mu.atoms[-1] for mu in measures])
        out = np.minimum.reduce([m[np.ix_(a0, a0)], m[np.ix_(a0, a1)],
                                 m[np.ix_(a1, a0)], m[np.ix_(a1, a1)]])
        return out
    out = np.empty((k, k))
    for i in range(k):
        for j in range(i, k):
            cross = m[np.ix_(measures[i].atoms, measures[j].atoms)].min()
            out[i, j] = out[j, i] = cross
    return out


def apart_count(space: FiniteMetricSpace, measures: list[AtomicMeasure],
                eps, budget: int = DEFAULT_BUDGET,
                cross_min: np.ndarray | None = None) -> CountBracket:
    """Maximal family of measures with pairwise support distance >= eps.

    Apartness fails when some cross-support pair sits strictly below eps,
    so the family is a maximum independent set of that violation graph.
    """
    k = len(measures)
    if k == 0:
        raise ParameterError("need candidate measures")
    if cross_min is None:
        cross_min = support_cross_min(space, measures)
    conflict = cross_min < float(eps)
    np.fill_diagonal(conflict, False)
    try:
        picked = exact_max_independent_set(conflict, budget)
        return CountBracket("apart", float(eps), 1, len(picked), len(picked),
                            "exact", method="mis-bnb", witness=tuple(picked))
    except BudgetExceededError:
        greedy = greedy_independent_set(conflict)
        return CountBracket("apart", float(eps), 1, len(greedy), k,
                            "heuristic", method="greedy", witness=tuple(greedy))
