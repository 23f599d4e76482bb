"""Planar primitives: wedge product, signed areas, convexity, centroid.

The wedge of v = (a, b) and u = (c, d) is (ad - bc)/2, i.e. the signed area of
the triangle spanned by the two vectors. Every area in the package is built
from it.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import ConvexityError, DegenerateError

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "Vec2",
    "Polygon",
    "wedge",
    "edge_vectors",
    "signed_area",
    "polygon_area",
    "is_convex_ccw",
    "centroid",
    "ear_areas",
    "diameter",
    "regular_polygon",
]


@dataclass(frozen=True)
class Tolerance:
    abs_eps: float = 1e-9
    rel_eps: float = 1e-9

    def __post_init__(self):
        if not (self.abs_eps > 0 and self.rel_eps > 0):
            raise ValueError(f"tolerances must be strictly positive, got {self}")

    @classmethod
    def from_env(cls, **overrides) -> "Tolerance":
        """Default tolerance, with ``abs_eps`` taken from KASNER_TOL_ABS if set."""
        env = os.environ.get("KASNER_TOL_ABS")
        if env is not None and "abs_eps" not in overrides:
            overrides["abs_eps"] = float(env)
        return cls(**overrides)


DEFAULT_TOL = Tolerance()


class _Vec2Base(NamedTuple):
    x: float
    y: float


class Vec2(_Vec2Base):
    """Finite 2D displacement. Behaves as a 2-tuple (and converts to numpy)."""

    __slots__ = ()

    def __new__(cls, x: float, y: float):
        x, y = float(x), float(y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError(f"Vec2 components must be finite, got ({x}, {y})")
        return super().__new__(cls, x, y)

    def __add__(self, other):
        return Vec2(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Vec2(self.x - other[0], self.y - other[1])

    def __mul__(self, k):
        return Vec2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __neg__(self):
        return Vec2(-self.x, -self.y)


def wedge(v, u):
    """Signed area (v.x*u.y - v.y*u.x)/2 of the triangle spanned by v and u.

    Works elementwise on arrays whose last axis has length 2.
    """
    if isinstance(v, np.ndarray) or isinstance(u, np.ndarray):
        v = np.asarray(v, dtype=float)
        u = np.asarray(u, dtype=float)
        return (v[..., 0] * u[..., 1] - v[..., 1] * u[..., 0]) / 2.0
    return (v[0] * u[1] - v[1] * u[0]) / 2.0


@dataclass(frozen=True, eq=False)
class Polygon:
    """Ordered vertex list, ``vertices`` has shape (n, 2), n >= 3.

    ``flipped`` records that the input arrived clockwise and was reversed;
    ``convex`` marks a polygon already validated as strictly convex and
    counterclockwise. Build validated polygons with :meth:`Polygon.convex_ccw`.
    """

    vertices: np.ndarray
    flipped: bool = False
    convex: bool = field(default=False)

    def __post_init__(self):
        arr = np.array(self.vertices, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError(f"vertices must have shape (n, 2), got {arr.shape}")
        if arr.shape[0] < 3:
            raise DegenerateError(f"a polygon needs at least 3 vertices, got {arr.shape[0]}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("vertex coordinates must be finite")
        step = np.hypot(*(np.roll(arr, -1, axis=0) - arr).T)
        extent = float(np.ptp(arr, axis=0).max())
        if extent == 0.0 or np.any(step <= DEFAULT_TOL.rel_eps * extent):
            raise DegenerateError("consecutive vertices coincide")
        arr.setflags(write=False)
        object.__setattr__(self, "vertices", arr)

    @classmethod
    def convex_ccw(cls, points, tol: Tolerance = DEFAULT_TOL) -> "Polygon":
        """Validated constructor: normalizes to counterclockwise order, then
        requires strict convexity. Raises ConvexityError otherwise."""
        arr = np.array(points, dtype=float)
        raw = cls(arr)
        flipped = signed_area(raw.vertices) < 0
        if flipped:
            raw = cls(arr[::-1])
        if not is_convex_ccw(raw, tol):
            raise ConvexityError("polygon is not strictly convex")
        return cls(raw.vertices, flipped=flipped, convex=True)

    @property
    def n(self) -> int:
        return self.vertices.shape[0]

    def __len__(self):
        return self.n

    def __iter__(self):
        return (Vec2(x, y) for x, y in self.vertices)

    def __getitem__(self, i) -> Vec2:
        x, y = self.vertices[i % self.n]
        return Vec2(x, y)

    def relabel(self, k: int) -> "Polygon":
        """Cyclic relabeling so that old vertex k becomes vertex 0."""
        return Polygon(np.roll(self.vertices, -k, axis=0), self.flipped, self.convex)

    def reversed(self) -> "Polygon":
        """Same vertices in the opposite cyclic order (no longer CCW)."""
        return Polygon(self.vertices[::-1], not self.flipped, False)

    def without_vertex(self, k: int) -> "Polygon":
        """Drop vertex k. Removing a vertex keeps strict convexity."""
        return Polygon(np.delete(self.vertices, k % self.n, axis=0), self.flipped, self.convex)

    def to_list(self) -> list[list[float]]:
        return self.vertices.tolist()

    def __repr__(self):
        return f"Polygon(n={self.n}, convex={self.convex}, flipped={self.flipped})"


def _as_array(K) -> np.ndarray:
    if isinstance(K, Polygon):
        return K.vertices
    return np.asarray(K, dtype=float)


def edge_vectors(K) -> np.ndarray:
    """Rows v_i = A_{i+1} - A_i, taken cyclically. They sum to zero."""
    P = _as_array(K)
    return np.roll(P, -1, axis=0) - P


def signed_area(K) -> float:
    """Fan sum of wedge(A_i - A_0, A_{i+1} - A_0); positive for CCW order.

    Raw kernel without the degeneracy check of :func:`polygon_area`.
    """
    P = _as_array(K)
    d = P[1:] - P[0]
    return float(np.sum(wedge(d[:-1], d[1:])))


def polygon_area(K, tol: Tolerance = DEFAULT_TOL) -> float:
    area = signed_area(K)
    if abs(area) < tol.abs_eps:
        raise DegenerateError(f"polygon area {area:.3g} is below abs_eps={tol.abs_eps:g}")
    return area


def _turn_wedges(P: np.ndarray) -> np.ndarray:
    v = edge_vectors(P)
    return wedge(v, np.roll(v, -1, axis=0))


def is_convex_ccw(K, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Strict convexity with counterclockwise orientation.

    Every consecutive edge pair must turn left by a wedge larger than
    ``tol.abs_eps``. Star polygons (all left turns but winding twice or more)
    are rejected as well.
    """
    P = _as_array(K)
    v = edge_vectors(P)
    w = v[:, 0] * np.roll(v[:, 1], -1) - v[:, 1] * np.roll(v[:, 0], -1)
    if not np.all(w / 2.0 > tol.abs_eps):
        return False
    dots = np.sum(v * np.roll(v, -1, axis=0), axis=1)
    total_turn = float(np.sum(np.arctan2(w, dots)))
    return total_turn < 3 * math.pi


def require_convex(K: Polygon, tol: Tolerance = DEFAULT_TOL) -> Polygon:
    if K.convex:
        return K
    if not is_convex_ccw(K, tol):
        raise ConvexityError("polygon must be strictly convex and counterclockwise")
    return Polygon(K.vertices, K.flipped, True)


def centroid(K) -> Vec2:
    """Vertex centroid (mean of the vertices), the quantity Kasner descent keeps."""
    cx, cy = _as_array(K).mean(axis=0)
    return Vec2(cx, cy)


def ear_areas(K: Polygon, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Areas of the triangles on three consecutive vertices.

    Entry i is the ear A_i A_{i+1} A_{i+2}, i.e. wedge(v_i, v_{i+1}); for a
    pentagon ABCDE the order is ABC, BCD, CDE, DEA, EAB.
    """
    K = require_convex(K, tol)
    return _turn_wedges(K.vertices)


def diameter(K) -> float:
    P = _as_array(K)
    d = P[:, None, :] - P[None, :, :]
    return float(np.sqrt((d**2).sum(axis=-1)).max())


def regular_polygon(n: int, radius: float = 1.0, phase: float = 0.0) -> Polygon:
    theta = phase + 2 * np.pi * np.arange(n) / n
    pts = radius * np.column_stack([np.cos(theta), np.sin(theta)])
    return Polygon.convex_ccw(pts)

