"""Counting operations: pinned example values and bracket semantics."""

import numpy as np
import pytest
from fractions import Fraction

from dynoscale.errors import ParameterError
from dynoscale.metric_core import (CountBracket, ScaleGrid, max_separated,
                                   min_ball_cover, min_diameter_cover,
                                   min_spanning, verify_chain)
from dynoscale.metric_core.space import FiniteMetricSpace
from dynoscale.oracle import (brute_max_separated, brute_min_diameter_cover,
                              brute_min_spanning)
from dynoscale.systems import null_sequence_space, random_space


def _one_point():
    return FiniteMetricSpace(coords=[Fraction(0)], check=False)


def _two_points():
    return FiniteMetricSpace(coords=[Fraction(0), Fraction(1)], check=False)


def test_one_point_space_counts_are_one():
    sp = _one_point()
    for op in (max_separated, min_spanning, min_diameter_cover):
        assert op(sp, 0.5).value == 1
    assert min_ball_cover(sp, 0.5).value == 1


def test_scale_above_diameter_gives_one():
    sp = random_space(6, seed=0)
    assert max_separated(sp, sp.diameter).value == 1
    assert min_spanning(sp, sp.diameter * 1.01).value == 1
    assert min_diameter_cover(sp, sp.diameter * 1.01).value == 1


def test_two_points_ball_cover_at_04():
    assert min_ball_cover(_two_points(), 0.4).value == 2


def test_two_points_diameter_cover_at_05():
    # each covering set must be a singleton at scale 1/2
    assert min_diameter_cover(_two_points(), 0.5).value == 2


def test_five_random_points_separated_matches_brute():
    sp = random_space(5, seed=12)
    got = max_separated(sp, 0.2)
    assert got.mode == "exact"
    assert got.value == brute_max_separated(sp, 0.2)


def test_six_point_diameter_cover_matches_partition_search():
    sp = random_space(6, seed=5)
    dense = FiniteMetricSpace(matrix=sp.as_matrix(), check=False)
    got = min_diameter_cover(dense, 0.3)
    assert got.mode == "exact"
    assert got.value == brute_min_diameter_cover(sp, 0.3)


def test_null_sequence_cover_matches_brute_at_small_k():
    sp = null_sequence_space(20)
    eps = Fraction(1, 100)
    got = min_ball_cover(sp, eps)
    assert got.mode == "exact"
    assert got.value == brute_min_spanning(sp, eps, limit=sp.size)


def test_null_sequence_large_is_fast_and_exact():
    sp = null_sequence_space(200)
    got = min_ball_cover(sp, Fraction(1, 100))
    assert got.mode == "exact" and got.method == "line-sweep"


def test_chain_on_random_space_all_grid_scales():
    sp = random_space(8, seed=3)
    dense = FiniteMetricSpace(matrix=sp.as_matrix(), check=False)
    for eps in ScaleGrid(0.4, 0.5, 4).scales():
        results = verify_chain(dense, eps)
        assert all(r.status == "pass" for r in results), results


def test_greedy_separated_lies_between_spanning_and_separated():
    # a maximal separated set is simultaneously spanning at the same scale
    from dynoscale.metric_core.solvers import greedy_independent_set
    sp = random_space(10, seed=8)
    dense = FiniteMetricSpace(matrix=sp.as_matrix(), check=False)
    for eps in (0.1, 0.22, 0.37):
        conflict = dense.close_mask(eps, strict=False)
        np.fill_diagonal(conflict, False)
        greedy = len(greedy_independent_set(conflict))
        r = min_spanning(dense, eps).value
        s = max_separated(dense, eps).value
        assert r <= greedy <= s


def test_separated_matches_brute_at_fifteen_points():
    sp = random_space(15, seed=31)
    dense = FiniteMetricSpace(matrix=sp.as_matrix(), check=False)
    for eps in (0.12, 0.33):
        got = max_separated(dense, eps)
        assert got.mode == "exact"
        assert got.value == brute_max_separated(sp, eps)


def test_bracket_invariants():
    with pytest.raises(ParameterError):
        CountBracket("separated", 0.1, 1, 3, 2, "exact")
    with pytest.raises(ParameterError):
        CountBracket("separated", 0.1, 1, 2, 3, "exact")
    with pytest.raises(ParameterError):
        CountBracket("separated", 0.1, 1, 0, 1, "heuristic")
    heur = CountBracket("separated", 0.1, 1, 2, 3, "heuristic")
    with pytest.raises(ParameterError):
        heur.value


def test_scale_grid_decreasing_and_offset():
    grid = ScaleGrid(0.5, 0.5, 4)
    vals = grid.scales()
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[0] != 0.5  # irrational offset applied
    assert ScaleGrid(0.5, 0.5, 4, offset=False).scales()[0] == 0.5
    with pytest.raises(ParameterError):
        ScaleGrid(0.0, 0.5, 4)
    with pytest.raises(ParameterError):
        ScaleGrid(0.5, 1.5, 4)
