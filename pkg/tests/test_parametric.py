import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kasner.descent import measured_ratio
from kasner.errors import ConvexityError
from kasner.geom_core import ear_areas, is_convex_ccw, signed_area
from kasner.parametric import (
    HexagonParams,
    PentagonParams,
    build_hexagon,
    build_pentagon,
    canonical_pentagon_params,
    chain_ratios,
    hexagon_lower_family,
    hexagon_ratio_closed,
    hexagon_upper_family,
    ngon_lower_construction,
    ngon_upper_chain,
    pentagon_lower_family,
    pentagon_params_from_polygon,
    pentagon_ratio_closed,
    pentagon_upper_family,
)

from conftest import M_VALUES, convex_polygons

positive = st.floats(0.05, 20.0)


def test_pentagon_area_and_ears():
    p = PentagonParams(2, 1, 1, 1)
    K = build_pentagon(p)
    assert p.area == 7 and signed_area(K) == pytest.approx(7.0)
    np.testing.assert_allclose(ear_areas(K), p.ears())
    assert p.fraction == pytest.approx(4 / 7)


def test_pentagon_rational_oracle():
    # Fraction shoelace on the same vertices gives 43/63 at m = 1/3
    p = PentagonParams(2, 1, 1, 1)
    assert pentagon_ratio_closed(p, 1 / 3) == pytest.approx(43 / 63, rel=1e-14)
    assert measured_ratio(build_pentagon(p), 1 / 3) == pytest.approx(43 / 63, rel=1e-14)


def test_hexagon_rational_oracle():
    p = HexagonParams(0.3, 0.8, 1.5, 0.7, 1.2, 0.9)
    K = build_hexagon(p)
    np.testing.assert_allclose(ear_areas(K), p.ears(), rtol=1e-12)
    assert signed_area(K) == pytest.approx(p.area)
    assert hexagon_ratio_closed(p, 0.5) == pytest.approx(213 / 277, rel=1e-14)
    assert measured_ratio(K, 0.5) == pytest.approx(213 / 277, rel=1e-14)


def test_infeasible_parameters():
    p = PentagonParams(2, 3, 1.5, 0.5)  # ear EAB negative
    assert not p.feasible
    with pytest.raises(ConvexityError):
        build_pentagon(p)
    with pytest.raises(ConvexityError):
        pentagon_ratio_closed(p, 0.5)
    with pytest.raises(ValueError):
        PentagonParams(1, 1, 0, 1)
    q = HexagonParams(0.3, 2, 1.5, 0.7, 4, 0.9)
    assert not q.feasible
    with pytest.raises(ConvexityError):
        build_hexagon(q)


def test_pentagon_families_exact_fractions():
    n = 1000.0
    assert pentagon_lower_family(n).fraction == pytest.approx((2 * n + 1) / (n * n + 2 * n + 2), rel=1e-13)
    assert pentagon_upper_family(n).fraction == pytest.approx((n * n + n + 1) / (n * n + 3 * n + 1), rel=1e-13)
    with pytest.raises(ValueError):
        pentagon_lower_family(0.5)


def test_hexagon_family_oracles():
    # exact rationals from a Fraction shoelace
    K = build_hexagon(hexagon_lower_family(1e4))
    assert measured_ratio(K, 0.5) == pytest.approx(25017503 / 50020004, rel=1e-12)
    K = build_hexagon(hexagon_upper_family(1e-3))
    assert measured_ratio(K, 0.5) == pytest.approx(2009009 / 2012012, rel=1e-12)
    assert hexagon_ratio_closed(hexagon_lower_family(10), 0.5) == pytest.approx(91 / 148, rel=1e-14)


@pytest.mark.parametrize("m", M_VALUES)
def test_closed_forms_match_shoelace(m):
    for p in (pentagon_lower_family(7), pentagon_upper_family(3), PentagonParams(2, 1, 1, 1)):
        assert pentagon_ratio_closed(p, m) == pytest.approx(measured_ratio(build_pentagon(p), m), abs=1e-13)
    for p in (hexagon_lower_family(5), hexagon_upper_family(0.2)):
        assert hexagon_ratio_closed(p, m) == pytest.approx(measured_ratio(build_hexagon(p), m), abs=1e-13)


@given(positive, positive, positive, positive, positive, positive)
def test_hexagon_symmetric_images(a, b, c, d, e, f):
    p = HexagonParams(a, b, c, d, e, f)
    if not p.feasible:
        return
    images = p.symmetric_images()
    assert len(images) == 6
    for q in images:
        assert q.feasible
        assert q.fraction == pytest.approx(p.fraction, rel=1e-12)
        assert q.area == pytest.approx(p.area, rel=1e-12)
    assert p.min_first().a == min(p.a, p.b, p.c, p.d, p.e, p.f)


@settings(max_examples=50)
@given(convex_polygons(min_n=5, max_n=5))
def test_pentagon_params_round_trip(K):
    p = canonical_pentagon_params(K)
    assert p.feasible
    assert p.fraction < 1
    # same pentagon up to an affine map, so same ratio
    assert pentagon_ratio_closed(p, 0.3) == pytest.approx(measured_ratio(K, 0.3), abs=1e-9)


def test_params_from_built_pentagon():
    p = PentagonParams(1.7, 0.4, 0.6, 0.8)
    q = pentagon_params_from_polygon(build_pentagon(p))
    np.testing.assert_allclose([q.a, q.b, q.c, q.d], [1.7, 0.4, 0.6, 0.8], rtol=1e-12)


@pytest.mark.parametrize("n", [6, 9])
def test_lower_construction(n):
    K = ngon_lower_construction(n, 0.05)
    assert K.n == n and is_convex_ccw(K)
    assert measured_ratio(K, 0.5) < 0.5 + 0.025


def test_lower_construction_validation():
    with pytest.raises(ValueError):
        ngon_lower_construction(5, 0.1)
    with pytest.raises(ValueError):
        ngon_lower_construction(7, 1.5)


def test_upper_chain_shape():
    chain = ngon_upper_chain(9, 0.1)
    assert [P.n for P in chain.polygons] == [6, 7, 8, 9]
    assert all(0 < lam < b for lam, b in zip(chain.lambdas, chain.lambda_bounds))
    rs = chain_ratios(chain, 0.5)
    assert all(b >= a for a, b in zip(rs, rs[1:]))
    assert rs[-1] > 0.9


def test_unit_pentagon_ears():
    assert PentagonParams(1, 1, 1, 1).ears() == pytest.approx((1, 1, 2, 2, 1))


def test_hexagon_upper_fractions():
    assert hexagon_upper_family(1.0).fraction == pytest.approx(14 / 13, rel=1e-14)
    assert hexagon_upper_family(0.01).fraction == pytest.approx(2.0606 / 1.0606, rel=1e-14)


@pytest.mark.parametrize("t", [1e-4, 1e-2, 1.0, 1e2])
def test_hexagon_upper_family_convex(t):
    assert is_convex_ccw(build_hexagon(hexagon_upper_family(t)))
