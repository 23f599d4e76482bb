"""Canonical pentagon/hexagon coordinates, extremal families, n-gon constructions.

Pentagon ABCDE: O is the crossing of the diagonals AD and CE, v1 = OA,
v2 = OC with v1^v2 = 1, D = O - a v1, E = O - b v2, B = O + c v1 + d v2.

Hexagon ABCDEF: M, N, P are the pairwise crossings of the long diagonals,
v1 = MN, v2 = MP, v3 = v2 - v1 (all pairwise wedges 1), A = M - a v1,
B = M - b v2, C = N - c v3, D = N + d v1, E = P + e v2, F = P + f v3.

Both frames use v1 = (1, 0), v2 = (0, 2); any frame with unit wedge gives an
affinely equivalent polygon, and area ratios are affine invariants.
"""

from __future__ import annotations

from dataclasses import astuple, dataclass
from typing import NamedTuple

import numpy as np

from .descent import as_params, measured_ratio
from .errors import ConstructionError, ConvexityError
from .geom_core import DEFAULT_TOL, Polygon, Tolerance, ear_areas, is_convex_ccw, signed_area, wedge

_V1 = np.array([1.0, 0.0])
_V2 = np.array([0.0, 2.0])
_V3 = _V2 - _V1


@dataclass(frozen=True)
class PentagonParams:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if not all(x > 0 for x in astuple(self)):
            raise ValueError(f"pentagon parameters must be positive, got {astuple(self)}")

    def ears(self) -> tuple[float, ...]:
        """Ear areas ABC, BCD, CDE, DEA, EAB in the unit-wedge frame."""
        a, b, c, d = astuple(self)
        return (c + d - 1, a - a * d + c, a * b + a, a * b + b, b - b * c + d)

    @property
    def feasible(self) -> bool:
        return all(e > 0 for e in self.ears())

    @property
    def area(self) -> float:
        a, b, c, d = astuple(self)
        return a + b + c + d + a * b

    @property
    def fraction(self) -> float:
        """(1 + ad + bc) / (a + b + c + d + ab)."""
        a, b, c, d = astuple(self)
        return (1 + a * d + b * c) / self.area


class HexagonAggregates(NamedTuple):
    S: float
    T: float
    U: float


@dataclass(frozen=True)
class HexagonParams:
    a: float
    b: float
    c: float
    d: float
    e: float
    f: float

    def __post_init__(self):
        if not all(x > 0 for x in astuple(self)):
            raise ValueError(f"hexagon parameters must be positive, got {astuple(self)}")

    def ears(self) -> tuple[float, ...]:
        """Ear areas ABC, BCD, CDE, DEF, EFA, FAB in the unit-wedge frame."""
        a, b, c, d, e, f = astuple(self)
        return (
            b * (1 + a + c) - a * c,
            c * (1 + b + d) - b * d,
            d * (1 + c + e) - c * e,
            e * (1 + d + f) - d * f,
            f * (1 + e + a) - e * a,
            a * (1 + b + f) - f * b,
        )

    @property
    def feasible(self) -> bool:
        return all(x > 0 for x in self.ears())

    @property
    def aggregates(self) -> HexagonAggregates:
        a, b, c, d, e, f = astuple(self)
        return HexagonAggregates(
            S=a + b + c + d + e + f,
            T=a * b + b * c + c * d + d * e + e * f + f * a,
            U=a * c + b * d + c * e + d * f + e * a + f * b,
        )

    @property
    def area(self) -> float:
        S, T, _ = self.aggregates
        return 1 + S + T

    @property
    def fraction(self) -> float:
        """(2 + S + U) / (1 + S + T)."""
        S, T, U = self.aggregates
        return (2 + S + U) / (1 + S + T)

    def symmetric_images(self) -> list["HexagonParams"]:
        """Parameter sets describing the same hexagon under its six relabelings.

        Shifting vertex labels by two rotates the parameters by two; reversing
        the orientation (then mirroring) maps (a..f) to (b, a, f, e, d, c).
        """
        base = astuple(self)
        mirror = (base[1], base[0], base[5], base[4], base[3], base[2])
        out = []
        for seq in (base, mirror):
            for k in (0, 2, 4):
                out.append(HexagonParams(*(seq[k:] + seq[:k])))
        return out

    def min_first(self) -> "HexagonParams":
        """The symmetric image whose ``a`` is the smallest parameter."""
        return min(self.symmetric_images(), key=lambda p: p.a)


def _validated(vertices, tol: Tolerance, what: str) -> Polygon:
    try:
        K = Polygon.convex_ccw(vertices, tol)
    except ConvexityError as exc:
        raise ConvexityError(f"{what} parameters do not give a strictly convex polygon") from exc
    if K.flipped:
        raise ConvexityError(f"{what} parameters give a clockwise polygon")
    return K


def build_pentagon(p: PentagonParams, tol: Tolerance = DEFAULT_TOL) -> Polygon:
    if not p.feasible:
        raise ConvexityError(f"infeasible pentagon parameters {p} (ears {p.ears()})")
    A = _V1
    C = _V2
    D = -p.a * _V1
    E = -p.b * _V2
    B = p.c * _V1 + p.d * _V2
    return _validated([A, B, C, D, E], tol, "pentagon")


def pentagon_params_from_polygon(K: Polygon) -> PentagonParams:
    """Recover (a, b, c, d) from a convex pentagon ABCDE (labels as given)."""
    if K.n != 5:
        raise ValueError("need a pentagon")
    A, B, C, D, E = K.vertices
    # O = A + s (D - A) = C + u (E - C)
    s, _ = np.linalg.solve(np.column_stack([D - A, C - E]), C - A)
    O = A + s * (D - A)
    v1, v2 = A - O, C - O
    a = -np.dot(D - O, v1) / np.dot(v1, v1)
    b = -np.dot(E - O, v2) / np.dot(v2, v2)
    c, d = np.linalg.solve(np.column_stack([v1, v2]), B - O)
    return PentagonParams(float(a), float(b), float(c), float(d))


def min_ear_first(K: Polygon, tol: Tolerance = DEFAULT_TOL) -> Polygon:
    """Relabel cyclically so that ear ABC has the least area."""
    return K.relabel(int(np.argmin(ear_areas(K, tol))))


def canonical_pentagon_params(K: Polygon, tol: Tolerance = DEFAULT_TOL) -> PentagonParams:
    """Coordinates of K after relabeling its smallest ear to ABC.

    Under that labeling c + d > 1, c <= 1 and d <= 1, which bounds the
    fraction (1 + ad + bc)/(a + b + c + d + ab) strictly below 1.
    """
    return pentagon_params_from_polygon(min_ear_first(K, tol))


def pentagon_ratio_closed(p: PentagonParams, k) -> float:
    """1 - 2r + r (1 + ad + bc)/(a + b + c + d + ab)."""
    if not p.feasible:
        raise ConvexityError(f"infeasible pentagon parameters {p}")
    r = as_params(k).r
    return 1 - 2 * r + r * p.fraction


def pentagon_lower_family(n: float) -> PentagonParams:
    """(n, n, 1, 1): fraction (2n+1)/(n^2+2n+2), ratio tends to 1 - 2r."""
    if n < 1:
        raise ValueError("family parameter must be >= 1")
    return PentagonParams(n, n, 1.0, 1.0)


def pentagon_upper_family(n: float) -> PentagonParams:
    """(n, 1/n, 1, 1): fraction (n^2+n+1)/(n^2+3n+1), ratio tends to 1 - r."""
    if n < 1:
        raise ValueError("family parameter must be >= 1")
    return PentagonParams(n, 1.0 / n, 1.0, 1.0)


def build_hexagon(p: HexagonParams, tol: Tolerance = DEFAULT_TOL) -> Polygon:
    if not p.feasible:
        raise ConvexityError(f"infeasible hexagon parameters {p} (ears {p.ears()})")
    M = np.zeros(2)
    N = M + _V1
    P = M + _V2
    verts = [
        M - p.a * _V1,
        M - p.b * _V2,
        N - p.c * _V3,
        N + p.d * _V1,
        P + p.e * _V2,
        P + p.f * _V3,
    ]
    return _validated(verts, tol, "hexagon")


def hexagon_ratio_closed(p: HexagonParams, k) -> float:
    """(1 - 2r) + r (2 + S + U)/(1 + S + T)."""
    if not p.feasible:
        raise ConvexityError(f"infeasible hexagon parameters {p}")
    r = as_params(k).r
    return 1 - 2 * r + r * p.fraction


def hexagon_lower_family(n: float) -> HexagonParams:
    if n < 1:
        raise ValueError("family parameter must be >= 1")
    return HexagonParams(1.0, 1.0, 1.0, 1.0, n, n)


def hexagon_upper_family(t: float) -> HexagonParams:
    if not t > 0:
        raise ValueError("family parameter must be > 0")
    return HexagonParams(t, t, t, t, t, t)


def _segment_polygon_area(points: np.ndarray) -> float:
    return abs(signed_area(points)) if len(points) >= 3 else 0.0


def ngon_lower_construction(
    n: int,
    eps: float,
    tol: Tolerance = DEFAULT_TOL,
    max_retries: int = 40,
) -> Polygon:
    """Convex n-gon whose ratio is below 1 - 2r + eps/2 for every m.

    Unit-area triangle M A1 A2 with M = (0, 0), A1 = (2, 0), A2 = (0, 1).
    The corner at M is cut along A3 = eps*A2, An = eps*A1 (area eps^2 removed),
    and A4..A(n-1) sit at equal angles on a circular arc from A3 to An bulging
    toward M. The two ears at A1 and A2 alone sum to 2(1 - eps) while the
    area stays below 1.
    """
    if n < 6:
        raise ValueError("construction needs n >= 6")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    A1, A2 = np.array([2.0, 0.0]), np.array([0.0, 1.0])
    A3, An = eps * A2, eps * A1
    chord = An - A3
    c = float(np.hypot(*chord))
    w = chord / c
    u = np.array([w[1], -w[0]])  # normal pointing at M
    if np.dot(-A3, u) < 0:
        u = -u
    mid = (A3 + An) / 2
    h = c / 2
    k = n - 3  # arc segments
    sagitta = eps**2 / (2 * c)
    for _ in range(max_retries):
        R = (h * h + sagitta * sagitta) / (2 * sagitta)
        center = mid - (R - sagitta) * u
        alpha = np.arcsin(h / R)
        theta = -alpha + 2 * alpha * np.arange(k + 1) / k
        arc = center + R * (np.cos(theta)[:, None] * u + np.sin(theta)[:, None] * w)
        arc[0], arc[-1] = A3, An
        added = _segment_polygon_area(arc)
        verts = np.vstack([A1, A2, arc])
        if added < eps**2 and is_convex_ccw(verts, tol):
            return Polygon(verts, convex=True)
        sagitta /= 2
    raise ConstructionError(f"no admissible sagitta for n={n}, eps={eps} after {max_retries} retries")


@dataclass(frozen=True)
class UpperChain:
    polygons: list[Polygon]
    lambdas: list[float]
    lambda_bounds: list[float]

    @property
    def polygon(self) -> Polygon:
        return self.polygons[-1]


def _seed_parameter(eps: float) -> float:
    """t with (6t + 6t^2)/(1 + 6t + 6t^2) = min(eps, 1/2), by bisection.

    The hexagon deficit 1 - ratio equals r times that quantity, and r <= 1/4,
    so the seed ratio exceeds 1 - eps/4 for every m.
    """
    target = min(eps, 0.5)

    def g(t):
        return (6 * t + 6 * t * t) / (1 + 6 * t + 6 * t * t)

    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = (lo + hi) / 2
        if g(mid) < target:
            lo = mid
        else:
            hi = mid
    return lo


def _append_vertex(Q: Polygon, tol: Tolerance) -> tuple[Polygon, float, float]:
    N = Q.n
    for k in range(N):
        R = Q.relabel(k)
        v = np.roll(R.vertices, -1, axis=0) - R.vertices
        a_prev_first = wedge(v[N - 2], v[0])
        if a_prev_first > 0:
            break
    else:
        raise ConstructionError("no relabeling gives a positive wedge between v_(n-1) and v_1")
    a_last_first = wedge(v[N - 1], v[0])
    bound = min(0.5, a_last_first / (a_last_first + a_prev_first))
    lam = bound / 2
    new = R.vertices[N - 1] + lam * (v[N - 2] + v[N - 1])
    P = np.vstack([R.vertices, new])
    if not is_convex_ccw(P, tol):
        raise ConstructionError("appended vertex broke strict convexity")
    return Polygon(P, convex=True), lam, bound


def ngon_upper_chain(n: int, eps: float, tol: Tolerance = DEFAULT_TOL) -> UpperChain:
    """Hexagon seed plus one appended vertex per step up to n vertices.

    Each new vertex is A(n+1) = A(n) + lam (v(n-1) + v(n)) with lam half its
    admissible bound; the ratio never decreases along the chain.
    """
    if n < 6:
        raise ValueError("construction needs n >= 6")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    polys = [build_hexagon(hexagon_upper_family(_seed_parameter(eps)), tol)]
    lams, bounds = [], []
    while polys[-1].n < n:
        P, lam, bound = _append_vertex(polys[-1], tol)
        polys.append(P)
        lams.append(lam)
        bounds.append(bound)
    return UpperChain(polys, lams, bounds)


def ngon_upper_construction(n: int, eps: float, tol: Tolerance = DEFAULT_TOL) -> Polygon:
    """Convex n-gon whose ratio exceeds 1 - eps for every m."""
    return ngon_upper_chain(n, eps, tol).polygon


def chain_ratios(chain: UpperChain, m) -> list[float]:
    return [measured_ratio(P, m) for P in chain.polygons]
