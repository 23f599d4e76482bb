"""Numerical checks of the identities and lemmas behind the area-ratio bounds.

Notation: for a polygon with edge vectors v_0..v_{n-1} (v_i = A_{i+1} - A_i),
a(i, j) = v_i ^ v_j. Indices are 0-based and cyclic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize

from .descent import as_params, bound_interval, descend_array, pentagon_recurrence_coeffs
from .errors import BudgetExhaustedError, DegenerateError, LemmaViolationError, WrongArityError
from .geom_core import (
    DEFAULT_TOL,
    Polygon,
    Tolerance,
    edge_vectors,
    is_convex_ccw,
    require_convex,
    signed_area,
    wedge,
)
from .parametric import HexagonParams, build_hexagon
from .sampler import SamplerConfig, random_convex_polygon


def _pair_wedges(v: np.ndarray) -> np.ndarray:
    """Matrix a[i, j] = v_i ^ v_j."""
    return (np.outer(v[:, 0], v[:, 1]) - np.outer(v[:, 1], v[:, 0])) / 2.0


def plucker_residual(vs) -> float:
    """|a12 a34 - a13 a24 + a14 a23|, divided by the largest of the three products."""
    v = np.asarray(vs, dtype=float)
    if v.shape != (4, 2):
        raise ValueError("need exactly four planar vectors")
    a = _pair_wedges(v)
    if not np.any(a):
        raise DegenerateError("all pairwise wedges vanish")
    terms = np.array([a[0, 1] * a[2, 3], -a[0, 2] * a[1, 3], a[0, 3] * a[1, 2]])
    scale = np.abs(terms).max()
    if scale == 0.0:
        return 0.0
    return float(abs(terms.sum()) / scale)


class PentagonAggregates(NamedTuple):
    S: float
    T: float


def _require_pentagon(K: Polygon, tol: Tolerance) -> Polygon:
    if K.n != 5:
        raise WrongArityError(f"pentagon expected, got n={K.n}")
    return require_convex(K, tol)


def _aggregates(v: np.ndarray) -> PentagonAggregates:
    S = float(np.sum(wedge(v, np.roll(v, -1, axis=0))))
    T = float(np.sum(wedge(v, np.roll(v, -2, axis=0))))
    return PentagonAggregates(S, T)


def pentagon_aggregates(K: Polygon, tol: Tolerance = DEFAULT_TOL) -> PentagonAggregates:
    """S = sum of a(i, i+1), T = sum of a(i, i+2); checks T = 5Δ - 3S."""
    K = _require_pentagon(K, tol)
    agg = _aggregates(edge_vectors(K))
    area = signed_area(K)
    if abs(agg.T - (5 * area - 3 * agg.S)) > tol.rel_eps * area:
        raise LemmaViolationError(f"T = 5Δ - 3S fails: T={agg.T}, Δ={area}, S={agg.S}")
    return agg


def pentagon_identity_residuals(K: Polygon, p, tol: Tolerance = DEFAULT_TOL) -> dict[str, float]:
    """Residuals (relative to Δ(K)) of the pentagon identities at a given m.

    delta1:     Δ(K') = Δ(K) - r S
    TSD:        T = 5Δ(K) - 3S
    S_prime:    S' = (1 - 2r) S + r T, S' being the S of K'
    recurrence: Δ(K'') = (2 - 5r) Δ(K') - (1 - 5r + 5r^2) Δ(K)
    """
    p = as_params(p)
    K = _require_pentagon(K, tol)
    r = p.r
    P0 = K.vertices
    P1 = descend_array(P0, p.m)
    P2 = descend_array(P1, p.m)
    a0, a1, a2 = signed_area(P0), signed_area(P1), signed_area(P2)
    S, T = _aggregates(edge_vectors(P0))
    S1, _ = _aggregates(edge_vectors(P1))
    c1, c2 = pentagon_recurrence_coeffs(p)
    return {
        "delta1": abs(a1 - (a0 - r * S)) / a0,
        "TSD": abs(T - (5 * a0 - 3 * S)) / a0,
        "S_prime": abs(S1 - ((1 - 2 * r) * S + r * T)) / a0,
        "recurrence": abs(a2 - c1 * a1 + c2 * a0) / a0,
    }


@dataclass(frozen=True)
class LemmaWitness:
    index: int
    lhs: float
    rhs: float

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs


def four_sides_terms(K: Polygon) -> tuple[np.ndarray, np.ndarray]:
    """Per-index (lhs, rhs) = (a(i+1, i+2), a(i, i+2) + a(i+1, i+3))."""
    v = edge_vectors(K)
    v1, v2, v3 = (np.roll(v, -k, axis=0) for k in (1, 2, 3))
    return wedge(v1, v2), wedge(v, v2) + wedge(v1, v3)


def lemma_four_sides_index(K: Polygon, tol: Tolerance = DEFAULT_TOL) -> LemmaWitness:
    """First i with a(i+1, i+2) <= a(i, i+2) + a(i+1, i+3).

    Such an i exists in every strictly convex polygon with six or more sides.
    """
    if K.n < 6:
        raise WrongArityError(f"four-sides lemma needs n >= 6, got n={K.n}")
    K = require_convex(K, tol)
    lhs, rhs = four_sides_terms(K)
    ok = np.flatnonzero(lhs <= rhs + tol.abs_eps)
    if ok.size == 0:
        raise LemmaViolationError(f"no qualifying index; worst slack {float(np.max(rhs - lhs)):.3g}")
    i = int(ok[0])
    return LemmaWitness(i, float(lhs[i]), float(rhs[i]))


def hexagon_double_ear_slack(K: Polygon) -> float:
    """(EF^AB + FA^BC) - 2 FA^AB for a hexagon ABCDEF (labels as given)."""
    if K.n != 6:
        raise WrongArityError(f"hexagon expected, got n={K.n}")
    A, B, C, D, E, F = K.vertices
    AB, BC, EF, FA = B - A, C - B, F - E, A - F
    return float(wedge(EF, AB) + wedge(FA, BC) - 2 * wedge(FA, AB))


def hexagon_double_ear_inequality(p: HexagonParams, tol: Tolerance = DEFAULT_TOL) -> float:
    """Slack of 2 FA^AB <= EF^AB + FA^BC, after relabeling so ``a`` is minimal.

    Raises LemmaViolationError if the slack is below -abs_eps.
    """
    K = build_hexagon(p.min_first(), tol)
    slack = hexagon_double_ear_slack(K)
    if slack < -tol.abs_eps:
        raise LemmaViolationError(f"double-ear inequality fails for {p}: slack {slack}")
    return slack


class VertexRemoval(NamedTuple):
    L: Polygon
    ratio_K: float
    ratio_L: float
    removed: int
    a23: float
    area_P: float


def remove_vertex_check(K: Polygon, p, tol: Tolerance = DEFAULT_TOL) -> VertexRemoval:
    """Drop the vertex picked by the four-sides lemma and compare ratios.

    With the witness window relabeled as v1..v4, vertex A3 (between v2 and v3)
    is removed, giving L. Checked along the way:

    * Δ(L) = Δ(K) - a23
    * Δ(K') - Δ(L') equals the pentagon piece r (a13 + a24 - a23) + a23
    * that piece is at least a23, hence ratio(K) >= ratio(L)
    """
    p = as_params(p)
    if K.n < 7:
        raise WrongArityError(f"vertex removal is stated for n + 1 >= 7 vertices, got {K.n}")
    K = require_convex(K, tol)
    w = lemma_four_sides_index(K, tol)
    v = edge_vectors(K)
    i, n = w.index, K.n
    a13 = wedge(v[i], v[(i + 2) % n])
    a23 = wedge(v[(i + 1) % n], v[(i + 2) % n])
    a24 = wedge(v[(i + 1) % n], v[(i + 3) % n])
    removed = (i + 2) % n
    L = K.without_vertex(removed)

    area_K, area_L = signed_area(K), signed_area(L)
    area_Kp = signed_area(descend_array(K.vertices, p.m))
    area_Lp = signed_area(descend_array(L.vertices, p.m))
    area_P = p.r * (a13 + a24 - a23) + a23
    scale = tol.rel_eps * area_K
    if abs(area_L - (area_K - a23)) > scale:
        raise LemmaViolationError(f"Δ(L) = Δ(K) - a23 fails by {area_L - (area_K - a23):.3g}")
    if abs((area_Kp - area_Lp) - area_P) > scale:
        raise LemmaViolationError(f"Δ(L') = Δ(K') - Δ(P) fails by {(area_Kp - area_Lp) - area_P:.3g}")
    if area_P < a23 - tol.abs_eps:
        raise LemmaViolationError(f"Δ(P) = {area_P} < a23 = {a23}")
    ratio_K, ratio_L = area_Kp / area_K, area_Lp / area_L
    if ratio_K < ratio_L - tol.abs_eps:
        raise LemmaViolationError(f"ratio dropped after vertex removal: {ratio_K} < {ratio_L}")
    return VertexRemoval(L, ratio_K, ratio_L, removed, float(a23), float(area_P))


class ExtremizeResult(NamedTuple):
    best_ratio: float
    best_polygon: Polygon
    restart: int


def _ratio_or_none(x: np.ndarray, m: float, tol: Tolerance):
    P = x.reshape(-1, 2)
    if not is_convex_ccw(P, tol):
        return None
    step = np.hypot(*(np.roll(P, -1, axis=0) - P).T)
    if step.min() <= DEFAULT_TOL.rel_eps * np.ptp(P, axis=0).max():
        return None
    return signed_area(descend_array(P, m)) / signed_area(P)


def empirical_extremize(
    n: int,
    p,
    mode: str = "min",
    budget: int = 200,
    seed: int = 0,
    maxfev: int | None = None,
    tol: Tolerance = Tolerance(abs_eps=1e-12),
) -> ExtremizeResult:
    """Multi-start Nelder-Mead search for the smallest or largest ratio.

    Each restart begins at a sampler polygon and then continues from the
    incumbent best polygon for the remaining restarts in the same chain, so
    the simplex can keep walking toward the (open) extremal boundary. Non
    convex trial points are rejected by returning +inf. Ties are broken by
    restart index.
    """
    if n < 5:
        raise ValueError("n must be >= 5 (smaller polygons have a constant ratio)")
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if mode not in ("min", "max"):
        raise ValueError("mode must be 'min' or 'max'")
    p = as_params(p)
    sign = 1.0 if mode == "min" else -1.0
    maxfev = maxfev or 400 * n

    def objective(x):
        ratio = _ratio_or_none(x, p.m, tol)
        return math.inf if ratio is None else sign * ratio

    best: tuple[float, int, np.ndarray] | None = None
    for k in range(budget):
        if best is None or k % 4 == 0:
            x0 = random_convex_polygon(SamplerConfig(n, seed=(seed * 7919 + k) % 2**64)).vertices.ravel()
        else:
            x0 = best[2]
        if not math.isfinite(objective(x0)):
            continue
        res = minimize(objective, x0, method="Nelder-Mead",
                       options={"maxfev": maxfev, "xatol": 0.0, "fatol": 0.0, "adaptive": True})
        x = res.x if math.isfinite(res.fun) else x0
        f = objective(x)
        if best is None or f < best[0]:
            P = x.reshape(-1, 2)
            # keep coordinates well scaled for the next chained start
            P = (P - P.mean(axis=0)) / np.hypot(*(P - P.mean(axis=0)).T).max()
            best = (objective(P.ravel()), k, P.ravel())
    if best is None:
        raise BudgetExhaustedError("no feasible starting polygon")
    f, k, x = best
    ratio = sign * f
    lo, hi, _ = bound_interval(n, p)
    if not (lo - tol.abs_eps < ratio < hi + tol.abs_eps):
        raise LemmaViolationError(f"extremizer left the theoretical interval: {ratio} not in ({lo}, {hi})")
    return ExtremizeResult(ratio, Polygon(x.reshape(-1, 2), convex=True), k)
