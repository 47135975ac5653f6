"""Full shifts over finite alphabets, truncated to depth-L prefixes.

Two compatible metrics are provided:

* ``exp``: distance base**(-k) where k counts the leading agreeing
  coordinates (so a first-coordinate disagreement has distance 1); this is
  the max-weighted discrete metric and makes every cell combinatorially
  exact.  With base e and a binary alphabet the strictly-separated count
  at scale e**-m is exactly 2**m.
* ``product``: rho(x, y) = sum_k 2**-(k+1) d_A(x_k, y_k) over the stored
  depth, with the truncation remainder 2**-L * diam(A) certified in the
  system metadata.

The stored points are the tail-extended prefixes, so the net is closed
under the shift and the index carrier is exact.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from ..errors import ParameterError, ShapeError
from ..metric_core.space import FiniteMetricSpace
from .base import DynamicalSystem, system_from_step

# dense float64 distance tables cap memory at ~200 MB
MAX_POINTS = 5_000


def discrete_alphabet(symbols: int) -> FiniteMetricSpace:
    """Alphabet of ``symbols`` letters at pairwise distance 1."""
    if symbols < 2:
        raise ParameterError("need at least two symbols")
    m = np.ones((symbols, symbols)) - np.eye(symbols)
    return FiniteMetricSpace(matrix=m, name=f"discrete({symbols})", check=False)


def lattice_alphabet(points: int) -> FiniteMetricSpace:
    """Alphabet of evenly spaced points on [0, 1]."""
    coords = [Fraction(i, points - 1) for i in range(points)]
    return FiniteMetricSpace(coords=coords, name=f"lattice({points})")


def _prefixes(symbols: int, depth: int) -> np.ndarray:
    count = symbols**depth
    if count > MAX_POINTS:
        raise ParameterError(f"shift net of {count} points exceeds cap {MAX_POINTS}")
    return np.array(list(itertools.product(range(symbols), repeat=depth)),
                    dtype=np.int16)


def _first_disagreement(words: np.ndarray) -> np.ndarray:
    """(n, n) int16 table of leading agreeing coordinates (depth if equal)."""
    n, depth = words.shape
    fd = np.zeros((n, n), dtype=np.int16)
    still_equal = np.ones((n, n), dtype=bool)
    for t in range(depth):
        col = words[:, t]
        still_equal &= col[:, None] == col[None, :]
        fd += still_equal
    return fd


def full_shift(symbols: int = 2, depth: int = 8, metric: str = "exp",
               alphabet: FiniteMetricSpace | None = None,
               base: float = math.e, tail: int = 0,
               horizon_cap: int | None = None, name: str | None = None) -> DynamicalSystem:
    """Full shift on ``symbols`` letters truncated at ``depth`` coordinates."""
    if depth < 1:
        raise ParameterError("depth must be >= 1")
    if metric not in ("exp", "product"):
        raise ParameterError(f"unknown shift metric {metric!r}")
    if metric == "product":
        alphabet = alphabet if alphabet is not None else discrete_alphabet(symbols)
        symbols = alphabet.size
    if not (0 <= tail < symbols):
        raise ParameterError("tail symbol outside the alphabet")
    words = _prefixes(symbols, depth)
    n = words.shape[0]

    if metric == "exp":
        fd = _first_disagreement(words)
        # exp(-k * ln base) keeps scales like exp(-m) bitwise comparable
        dist = np.exp(-math.log(base) * fd.astype(float))
        np.fill_diagonal(dist, 0.0)
        trunc = base ** (-float(depth))
        alph_diam = 1.0
    else:
        amat = alphabet.as_matrix()
        dist = np.zeros((n, n))
        for t in range(depth):
            col = words[:, t]
            dist += 2.0 ** (-(t + 1)) * amat[np.ix_(col, col)]
        alph_diam = alphabet.diameter
        trunc = 2.0 ** (-depth) * alph_diam

    label = [tuple(int(s) for s in w) for w in words]
    space = FiniteMetricSpace(matrix=dist, labels=label,
                              name=name or f"shift{symbols}x{depth}-{metric}",
                              check=False)
    index_of = {lab: i for i, lab in enumerate(label)}
    step = np.array([index_of[lab[1:] + (tail,)] for lab in label])
    cap = horizon_cap if horizon_cap is not None else depth
    sys = system_from_step(space, step, max(cap, 2), name=space.name,
                           meta={"kind": "shift", "metric": metric,
                                 "symbols": symbols, "depth": depth,
                                 "tail": tail, "omega_full": True,
                                 "truncation_bound": trunc,
                                 "alphabet_diameter": alph_diam})
    sys.meta["alphabet"] = alphabet if metric == "product" else discrete_alphabet(symbols)
    return sys


def binary_exp_shift(depth: int = 12, horizon_cap: int | None = None) -> DynamicalSystem:
    """Binary shift with the e**-k first-disagreement metric."""
    return full_shift(2, depth, metric="exp", horizon_cap=horizon_cap,
                      name=f"binshift-exp-d{depth}")


def rho_distance(x: tuple, y: tuple, alphabet: FiniteMetricSpace) -> tuple[float, float]:
    """Product-metric distance of two prefixes with its certified remainder.

    Returns ``(value, remainder_bound)``; the distance of any two infinite
    extensions agreeing with the prefixes lies in [value, value + bound].
    """
    if len(x) != len(y):
        raise ShapeError(f"prefix depths differ: {len(x)} vs {len(y)}")
    value = 0.0
    for k, (a, b) in enumerate(zip(x, y), start=1):
        value += 2.0 ** (-k) * alphabet.dist(a, b)
    bound = 2.0 ** (-len(x)) * alphabet.diameter
    return value, bound
