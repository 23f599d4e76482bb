import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kasner.analysis import (
    empirical_extremize,
    four_sides_terms,
    hexagon_double_ear_inequality,
    hexagon_double_ear_slack,
    lemma_four_sides_index,
    pentagon_aggregates,
    pentagon_identity_residuals,
    plucker_residual,
    remove_vertex_check,
)
from kasner.errors import DegenerateError, WrongArityError
from kasner.geom_core import Polygon, regular_polygon, signed_area
from kasner.parametric import HexagonParams, build_hexagon

from conftest import convex_polygons, m_values

PENTAGON = Polygon.convex_ccw([(0, 0), (2, 0), (3, 1), (1, 3), (-1, 1)])
quads = st.lists(st.tuples(st.floats(-100, 100), st.floats(-100, 100)), min_size=4, max_size=4)


def test_plucker_basis_example():
    assert plucker_residual([(1, 0), (0, 1), (1, 1), (1, -1)]) == 0.0
    with pytest.raises(DegenerateError):
        plucker_residual([(1, 0), (2, 0), (3, 0), (-1, 0)])
    with pytest.raises(ValueError):
        plucker_residual([(1, 0), (0, 1), (1, 1)])


@given(quads)
def test_plucker_identity(vs):
    try:
        assert plucker_residual(vs) <= 1e-12
    except DegenerateError:
        pass


def test_pentagon_aggregates_hand_example():
    # edges (2,0),(1,1),(-2,2),(-2,-2),(1,-1)
    S, T = pentagon_aggregates(PENTAGON)
    assert S == pytest.approx(10.0)
    assert T == pytest.approx(5 * 7 - 3 * 10)


@given(convex_polygons(min_n=5, max_n=5), m_values)
def test_pentagon_identities(K, m):
    res = pentagon_identity_residuals(K, m)
    assert set(res) == {"delta1", "TSD", "S_prime", "recurrence"}
    assert max(res["delta1"], res["TSD"], res["S_prime"]) <= 1e-12
    assert res["recurrence"] <= 1e-10


def test_pentagon_only():
    with pytest.raises(WrongArityError):
        pentagon_identity_residuals(regular_polygon(6), 0.5)


def test_four_sides_regular_hexagon():
    w = lemma_four_sides_index(regular_polygon(6))
    lhs, rhs = four_sides_terms(regular_polygon(6))
    assert np.all(lhs < rhs)
    assert w.index == 0 and w.slack > 0
    with pytest.raises(WrongArityError):
        lemma_four_sides_index(PENTAGON)


@given(convex_polygons(min_n=6, max_n=12))
def test_four_sides_witness_exists(K):
    w = lemma_four_sides_index(K)
    assert w.lhs <= w.rhs + 1e-9


def test_double_ear_slack_matches_definition():
    p = HexagonParams(0.3, 0.8, 1.5, 0.7, 1.2, 0.9)
    slack = hexagon_double_ear_inequality(p)
    assert slack == pytest.approx(hexagon_double_ear_slack(build_hexagon(p.min_first())))
    assert slack >= 0


@given(*[st.floats(1e-2, 1e2)] * 6)
def test_double_ear_inequality(a, b, c, d, e, f):
    p = HexagonParams(a, b, c, d, e, f)
    if p.feasible:
        assert hexagon_double_ear_inequality(p) >= -1e-9


@given(convex_polygons(min_n=7, max_n=10), m_values)
def test_vertex_removal(K, m):
    rv = remove_vertex_check(K, m)
    assert rv.L.n == K.n - 1
    assert rv.area_P >= rv.a23 - 1e-9
    assert rv.ratio_K >= rv.ratio_L - 1e-9
    assert signed_area(rv.L) == pytest.approx(signed_area(K) - rv.a23, rel=1e-9)


def test_vertex_removal_needs_seven():
    with pytest.raises(WrongArityError):
        remove_vertex_check(regular_polygon(6), 0.5)


def test_extremizer_small_budget_stays_in_bounds():
    res = empirical_extremize(5, 0.5, "min", budget=4, seed=1, maxfev=400)
    assert 0.5 < res.best_ratio < 0.75
    assert res.best_polygon.n == 5
    res = empirical_extremize(6, 0.5, "max", budget=4, seed=1, maxfev=400)
    assert 0.5 < res.best_ratio < 1.0


def test_extremizer_validation():
    with pytest.raises(ValueError):
        empirical_extremize(4, 0.5)
    with pytest.raises(ValueError):
        empirical_extremize(5, 0.5, mode="median")
    with pytest.raises(ValueError):
        empirical_extremize(5, 0.5, budget=0)
