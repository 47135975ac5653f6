"""Finite metric spaces with a certified distance oracle.

Two storage backends are supported. A dense float64 matrix covers the
general case; a sorted 1-d coordinate list (ideally `Fraction`s) covers
spaces embedded in the real line, where the counting layer can run exact
sweep algorithms without ever materialising a matrix.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from ..errors import InvalidMetricError, ParameterError

# Largest point count for which a dense matrix is materialised on demand.
MATRIX_CAP = 20_000

TRIANGLE_SPOT_CHECKS = 64
TRIANGLE_SLACK = 1e-9


class FiniteMetricSpace:
    """Indexed point set with symmetric, triangle-checked distances.

    Parameters
    ----------
    matrix:
        Dense (n, n) distance table.  Mutually exclusive with assuming
        distances from ``coords``.
    coords:
        1-d positions; the metric is ``|x_i - x_j|``.  Fractions keep the
        comparison layer exact.
    labels:
        Opaque per-point descriptors; defaults to the indices.
    exact_dist:
        Optional callable ``(i, j) -> Fraction`` used to break ties when a
        float comparison lands exactly on a threshold.
    """

    def __init__(
        self,
        matrix: np.ndarray | None = None,
        coords: Sequence | None = None,
        labels: Sequence | None = None,
        name: str = "space",
        exact_dist: Callable[[int, int], Fraction] | None = None,
        check: bool = True,
        seed: int = 0,
    ):
        if (matrix is None) == (coords is None):
            raise ParameterError("exactly one of matrix/coords must be given")
        self.name = name
        self.exact_dist = exact_dist
        self.coords = None
        self._matrix = None
        if coords is not None:
            if len(coords) == 0:
                raise ParameterError("empty spaces are rejected")
            self.coords = list(coords)
            self._coords_float = np.array([float(c) for c in coords])
            self.size = len(self.coords)
        else:
            matrix = np.asarray(matrix, dtype=float)
            if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
                raise ParameterError("distance matrix must be square")
            if matrix.shape[0] == 0:
                raise ParameterError("empty spaces are rejected")
            self._matrix = matrix
            self.size = matrix.shape[0]
        self.labels = list(labels) if labels is not None else list(range(self.size))
        if len(self.labels) != self.size:
            raise ParameterError("labels length must match point count")
        self._diameter = None
        if check:
            self._validate(seed)

    # -- construction helpers -------------------------------------------

    @classmethod
    def from_line(cls, coords: Sequence, name: str = "line", labels=None) -> "FiniteMetricSpace":
        """Space on the real line; coords are sorted ascending."""
        pairs = sorted(zip(coords, labels if labels is not None else coords))
        return cls(
            coords=[p[0] for p in pairs],
            labels=[p[1] for p in pairs],
            name=name,
            check=False,
        )

    # -- validation ------------------------------------------------------

    def _validate(self, seed: int) -> None:
        if self.coords is not None:
            return  # |x - y| is a metric by construction
        m = self._matrix
        if not np.allclose(np.diag(m), 0.0, atol=0.0):
            raise InvalidMetricError("nonzero self-distance")
        if (m < 0).any():
            raise InvalidMetricError("negative distance")
        if not np.array_equal(m, m.T):
            if not np.allclose(m, m.T, rtol=0, atol=1e-12):
                raise InvalidMetricError("asymmetric distance table")
        n = self.size
        if n < 3:
            return
        if n <= 16:  # exhaustive triple check is cheap enough
            # slack[i,j,k] = d(i,j) - d(i,k) - d(k,j)
            slack = m[:, :, None] - m[:, None, :] - m.T[None, :, :].transpose(0, 2, 1)
            if (slack > TRIANGLE_SLACK).any():
                i, j, k = np.unravel_index(int(np.argmax(slack)), slack.shape)
                raise InvalidMetricError(
                    f"triangle inequality fails on ({i},{j},{k})")
            return
        rng = np.random.default_rng(seed)
        for _ in range(TRIANGLE_SPOT_CHECKS):
            i, j, k = rng.integers(0, n, size=3)
            if m[i, j] > m[i, k] + m[k, j] + TRIANGLE_SLACK:
                raise InvalidMetricError(
                    f"triangle inequality fails on ({i},{j},{k})")

    # -- basic queries -----------------------------------------------------

    def dist(self, i: int, j: int) -> float:
        if self.coords is not None:
            return abs(float(self._coords_float[i] - self._coords_float[j]))
        return float(self._matrix[i, j])

    def dist_exact(self, i: int, j: int):
        """Exact distance when available (Fractions), else the float value."""
        if self.coords is not None and isinstance(self.coords[i], Fraction):
            return abs(self.coords[i] - self.coords[j])
        if self.exact_dist is not None:
            return self.exact_dist(i, j)
        return self.dist(i, j)

    def label(self, i: int):
        return self.labels[i]

    @property
    def diameter(self) -> float:
        if self._diameter is None:
            if self.coords is not None:
                self._diameter = float(self._coords_float.max() - self._coords_float.min())
            else:
                self._diameter = float(self._matrix.max())
        return self._diameter

    def as_matrix(self) -> np.ndarray:
        """Dense distance table (materialised for line spaces on demand)."""
        if self._matrix is None:
            if self.size > MATRIX_CAP:
                raise ParameterError(
                    f"refusing to materialise {self.size}x{self.size} matrix"
                )
            c = self._coords_float
            self._matrix = np.abs(c[:, None] - c[None, :])
        return self._matrix

    def close_mask(self, eps: float, strict: bool) -> np.ndarray:
        """Boolean table of pairs with d < eps (strict) or d <= eps.

        Ties at exactly ``eps`` are re-decided through ``exact_dist`` when
        the space carries one.
        """
        m = self.as_matrix()
        eps_f = float(eps)
        mask = (m < eps_f) if strict else (m <= eps_f)
        if self.exact_dist is not None and isinstance(eps, Fraction):
            border = np.argwhere(np.isclose(m, eps_f, rtol=1e-12, atol=0))
            for i, j in border:
                d = self.exact_dist(int(i), int(j))
                mask[i, j] = (d < eps) if strict else (d <= eps)
        return mask

    def permuted(self, perm: Sequence[int]) -> "FiniteMetricSpace":
        """Same space with points reindexed by ``perm`` (for invariance tests)."""
        perm = list(perm)
        if self.coords is not None:
            return FiniteMetricSpace(
                coords=[self.coords[p] for p in perm],
                labels=[self.labels[p] for p in perm],
                name=self.name,
                check=False,
            )
        idx = np.array(perm)
        return FiniteMetricSpace(
            matrix=self._matrix[np.ix_(idx, idx)],
            labels=[self.labels[p] for p in perm],
            name=self.name,
            exact_dist=None,
            check=False,
        )

    def __repr__(self):
        return f"FiniteMetricSpace({self.name!r}, size={self.size})"
