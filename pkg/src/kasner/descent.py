"""Kasner descent and area ratios.

The m-descendant K' of a polygon K has vertex B_i = A_i + m (A_{i+1} - A_i):
each edge is cut in the ratio m : (1 - m), walking counterclockwise.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DegenerateError, UnsupportedError, WrongArityError
from .geom_core import (
    DEFAULT_TOL,
    Polygon,
    Tolerance,
    ear_areas,
    require_convex,
    signed_area,
    wedge,
)


@dataclass(frozen=True)
class KasnerParams:
    m: float
    r: float = field(init=False)

    def __post_init__(self):
        m = float(self.m)
        if not 0.0 < m < 1.0:
            raise ValueError(f"m must lie in the open interval (0, 1), got {m}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "r", m * (1.0 - m))


def as_params(p) -> KasnerParams:
    return p if isinstance(p, KasnerParams) else KasnerParams(p)


class BoundInterval(NamedTuple):
    lower: float
    upper: float
    attained: bool


@dataclass(frozen=True)
class RatioReport:
    n: int
    m: float
    area_K: float
    area_K_prime: float
    ratio: float
    ear_sum: float
    lower_bound: float
    upper_bound: float
    in_bounds: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lower"] = d.pop("lower_bound")
        d["upper"] = d.pop("upper_bound")
        return d


def descend_array(P: np.ndarray, m: float) -> np.ndarray:
    """Vertex kernel of the descent, no validation. Works on (..., n, 2) stacks."""
    return P + m * (np.roll(P, -1, axis=-2) - P)


def descendant(K: Polygon, p, tol: Tolerance = DEFAULT_TOL) -> Polygon:
    """First m-Kasner descendant of a strictly convex CCW polygon.

    The result is flagged convex: cutting every edge of a strictly convex
    polygon yields a strictly convex polygon. Only a sign check is repeated on
    the output, which keeps long sequences of shrinking polygons usable while
    still catching floating-point collapse.
    """
    p = as_params(p)
    K = require_convex(K, tol)
    Q = descend_array(K.vertices, p.m)
    v = np.roll(Q, -1, axis=0) - Q
    if not np.all(wedge(v, np.roll(v, -1, axis=0)) > 0):
        raise DegenerateError("descendant lost strict convexity to rounding")
    return Polygon(Q, K.flipped, True)


def sequence(K: Polygon, p, t: int, tol: Tolerance = DEFAULT_TOL) -> list[Polygon]:
    """[K, K', K'', ..., K^t]."""
    if t < 0:
        raise ValueError("t must be non-negative")
    p = as_params(p)
    out = [require_convex(K, tol)]
    for _ in range(t):
        out.append(descendant(out[-1], p, tol))
    return out


def bound_interval(n: int, p) -> BoundInterval:
    """Range of the area ratio over convex n-gons.

    Triangles and quadrilaterals have a constant ratio; from five sides on
    the bounds are open and approached but never reached.
    """
    r = as_params(p).r
    if n < 3:
        raise ValueError("n must be at least 3")
    if n == 3:
        return BoundInterval(1 - 3 * r, 1 - 3 * r, True)
    if n == 4:
        return BoundInterval(1 - 2 * r, 1 - 2 * r, True)
    if n == 5:
        return BoundInterval(1 - 2 * r, 1 - r, False)
    return BoundInterval(1 - 2 * r, 1.0, False)


def in_interval(ratio: float, bounds: BoundInterval, tol: Tolerance = DEFAULT_TOL) -> bool:
    if bounds.attained:
        return abs(ratio - bounds.lower) <= tol.abs_eps + tol.rel_eps * abs(bounds.lower)
    return bounds.lower - tol.abs_eps < ratio < bounds.upper + tol.abs_eps


def area_ratio(K: Polygon, p, tol: Tolerance = DEFAULT_TOL) -> RatioReport:
    p = as_params(p)
    K = require_convex(K, tol)
    Kp = descendant(K, p, tol)
    area = signed_area(K)
    area_p = signed_area(Kp)
    ratio = area_p / area
    bounds = bound_interval(K.n, p)
    return RatioReport(
        n=K.n,
        m=p.m,
        area_K=area,
        area_K_prime=area_p,
        ratio=ratio,
        ear_sum=float(np.sum(ear_areas(K, tol))),
        lower_bound=bounds.lower,
        upper_bound=bounds.upper,
        in_bounds=in_interval(ratio, bounds, tol),
    )


def measured_ratio(K: Polygon, p, tol: Tolerance = DEFAULT_TOL) -> float:
    """Δ(K')/Δ(K) by constructing K' and taking both areas directly."""
    p = as_params(p)
    K = require_convex(K, tol)
    return signed_area(descend_array(K.vertices, p.m)) / signed_area(K.vertices)


def ear_decomposition_ratio(K: Polygon, p, tol: Tolerance = DEFAULT_TOL) -> float:
    """1 - r * (sum of ears) / Δ(K).

    K' is K with a triangle of area r * ear cut off at every vertex, so this
    never constructs K'. Used as the independent check of :func:`area_ratio`.
    """
    p = as_params(p)
    K = require_convex(K, tol)
    return 1.0 - p.r * float(np.sum(ear_areas(K, tol))) / signed_area(K)


def closed_form_ratio(n: int, p) -> float:
    r = as_params(p).r
    if n == 3:
        return 1 - 3 * r
    if n == 4:
        return 1 - 2 * r
    raise UnsupportedError(f"the ratio is not constant for n={n}; only n in {{3, 4}} has a closed form")


def pentagon_recurrence_coeffs(p) -> tuple[float, float]:
    """(c1, c2) with Δ(K'') = c1 Δ(K') - c2 Δ(K) for every convex pentagon."""
    r = as_params(p).r
    return 2 - 5 * r, 1 - 5 * r + 5 * r * r


def recurrence_residual(K: Polygon, p, tol: Tolerance = DEFAULT_TOL) -> float:
    """|Δ(K'') - c1 Δ(K') + c2 Δ(K)| / Δ(K) for a convex pentagon."""
    if K.n != 5:
        raise WrongArityError(f"the three-term recurrence holds for pentagons, got n={K.n}")
    p = as_params(p)
    K = require_convex(K, tol)
    K1 = descend_array(K.vertices, p.m)
    K2 = descend_array(K1, p.m)
    a0, a1, a2 = signed_area(K.vertices), signed_area(K1), signed_area(K2)
    c1, c2 = pentagon_recurrence_coeffs(p)
    return abs(a2 - c1 * a1 + c2 * a0) / a0


def affine_regularity_defect(K) -> float:
    """Fraction of vertex-sequence Fourier energy outside harmonics 1 and n-1.

    Affinely regular n-gons are exactly those supported on those two
    harmonics, so the value is 0 for them and lies in [0, 1] in general.
    """
    P = K.vertices if isinstance(K, Polygon) else np.asarray(K, dtype=float)
    z = (P[:, 0] - P[:, 0].mean()) + 1j * (P[:, 1] - P[:, 1].mean())
    power = np.abs(np.fft.fft(z)) ** 2
    total = float(power.sum())
    if total == 0.0:
        raise DegenerateError("all vertices coincide")
    n = len(z)
    main = power[1] + (power[n - 1] if n - 1 != 1 else 0.0)
    return max(0.0, (total - main) / total)

