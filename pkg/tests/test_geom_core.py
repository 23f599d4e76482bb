import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kasner.errors import ConvexityError, DegenerateError
from kasner.geom_core import (
    Polygon,
    Tolerance,
    Vec2,
    centroid,
    diameter,
    ear_areas,
    edge_vectors,
    is_convex_ccw,
    polygon_area,
    regular_polygon,
    signed_area,
    wedge,
)

from conftest import convex_polygons

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
finite = st.floats(-1e3, 1e3, allow_nan=False)
vectors = st.tuples(finite, finite)


def test_wedge_of_basis_vectors():
    assert wedge((1, 0), (0, 1)) == 0.5
    assert wedge((0, 1), (1, 0)) == -0.5


def test_wedge_vectorized():
    v = np.array([[1.0, 0.0], [2.0, 3.0]])
    u = np.array([[0.0, 1.0], [4.0, 5.0]])
    np.testing.assert_array_equal(wedge(v, u), [0.5, -1.0])


@given(vectors, vectors)
def test_wedge_anticommutes(v, u):
    assert wedge(v, u) == -wedge(u, v)
    assert wedge(v, v) == 0.0


@given(vectors, vectors, vectors, st.floats(-10, 10), st.floats(-10, 10))
def test_wedge_bilinear(v, u, w, s, t):
    lhs = wedge(s * np.array(v) + t * np.array(u), w)
    rhs = s * wedge(v, w) + t * wedge(u, w)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-6)


def test_vec2_arithmetic():
    a, b = Vec2(1, 2), Vec2(3, -1)
    assert a + b == Vec2(4, 1)
    assert a - b == Vec2(-2, 3)
    assert a * 2 == Vec2(2, 4)
    assert -a == Vec2(-1, -2)
    with pytest.raises(ValueError):
        Vec2(math.nan, 0)


def test_square_edges_and_area():
    K = Polygon.convex_ccw(SQUARE)
    np.testing.assert_array_equal(edge_vectors(K), [[1, 0], [0, 1], [-1, 0], [0, -1]])
    assert signed_area(K) == 1.0
    assert polygon_area(K) == 1.0
    np.testing.assert_array_equal(ear_areas(K), [0.5, 0.5, 0.5, 0.5])


def test_clockwise_input_is_flipped():
    K = Polygon.convex_ccw(SQUARE[::-1])
    assert K.flipped and K.convex
    assert signed_area(K) == 1.0
    assert signed_area(SQUARE[::-1]) == -1.0


def test_pentagon_ear_order():
    # ears listed as ABC, BCD, CDE, DEA, EAB
    K = Polygon.convex_ccw([(0, 0), (2, 0), (3, 1), (1, 3), (-1, 1)])
    np.testing.assert_allclose(ear_areas(K), [1.0, 2.0, 4.0, 2.0, 1.0])
    assert signed_area(K) == 7.0


def test_regular_pentagon_area():
    K = regular_polygon(5)
    assert signed_area(K) == pytest.approx(2.5 * math.sin(math.radians(72)), rel=1e-14)
    assert signed_area(K) == pytest.approx(2.377641290737884, rel=1e-14)


@pytest.mark.parametrize(
    "points",
    [
        [(0, 0), (1, 0), (2, 0), (1, 1)],  # collinear triple
        [(0, 0), (2, 0), (1, 0.2), (2, 2), (0, 2)],  # reflex vertex
        [(np.cos(4 * np.pi * k / 5), np.sin(4 * np.pi * k / 5)) for k in range(5)],  # pentagram
    ],
)
def test_nonconvex_rejected(points):
    assert not is_convex_ccw(points)
    with pytest.raises(ConvexityError):
        Polygon.convex_ccw(points)


def test_degenerate_inputs():
    with pytest.raises(DegenerateError):
        Polygon([(0, 0), (1, 0)])
    with pytest.raises(DegenerateError):
        Polygon([(0, 0), (1, 0), (1, 0), (0, 1)])
    with pytest.raises(ValueError):
        Polygon([(0, 0), (1, math.inf), (0, 1)])
    with pytest.raises(DegenerateError):
        polygon_area([(0, 0), (1e-6, 0), (0, 1e-6)])


def test_tolerance_validation_and_env(monkeypatch):
    with pytest.raises(ValueError):
        Tolerance(abs_eps=0.0)
    monkeypatch.setenv("KASNER_TOL_ABS", "1e-7")
    assert Tolerance.from_env().abs_eps == 1e-7
    assert Tolerance.from_env(abs_eps=1e-5).abs_eps == 1e-5


def test_relabel_and_vertex_removal():
    K = Polygon.convex_ccw([(0, 0), (2, 0), (3, 1), (1, 3), (-1, 1)])
    L = K.relabel(2)
    assert L[0] == Vec2(3, 1) and L[-1] == Vec2(2, 0)
    assert signed_area(L) == signed_area(K)
    R = K.without_vertex(3)
    assert R.n == 4 and signed_area(R) == 7.0 - 4.0


@given(convex_polygons())
def test_edge_vectors_close(K):
    assert np.abs(edge_vectors(K).sum(axis=0)).max() <= 1e-12 * diameter(K)


@given(convex_polygons())
def test_relabel_keeps_area(K):
    for k in range(K.n):
        assert signed_area(K.relabel(k)) == pytest.approx(signed_area(K), rel=1e-12)


@settings(max_examples=50)
@given(convex_polygons(), st.floats(-5, 5), st.floats(-5, 5))
def test_centroid_translates(K, dx, dy):
    c = centroid(K)
    moved = Polygon.convex_ccw(K.vertices + [dx, dy])
    c2 = centroid(moved)
    assert c2.x == pytest.approx(c.x + dx, abs=1e-12) and c2.y == pytest.approx(c.y + dy, abs=1e-12)
