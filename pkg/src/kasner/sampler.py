"""Seeded random strictly convex polygons (Valtr's convex-position construction).

Two sorted coordinate multisets are each split into two monotone chains; the
chain differences give n x-steps and n y-steps that both sum to zero. Pairing
them at random and sorting by angle yields the edge vectors of a convex
polygon. The coordinates are drawn through a per-polygon random power map
x -> x**gamma, which skews the step lengths and makes elongated, nearly
triangular or nearly quadrilateral shapes common enough to probe the area
ratio bounds near both ends.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, RetryExhaustedError
from .geom_core import Polygon, Tolerance, diameter, is_convex_ccw, signed_area

MAX_ATTEMPTS = 100
VALIDATION_TOL = Tolerance(abs_eps=1e-12)


@dataclass(frozen=True)
class SamplerConfig:
    n: int
    seed: int = 0
    scale: float = 1.0
    anisotropy: float = 1.0
    skew: float = 1.0
    min_fatness: float = 1e-3

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("n must be at least 3")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if not (self.scale > 0 and self.anisotropy > 0):
            raise ValueError("scale and anisotropy must be positive")
        if self.skew < 0 or self.min_fatness < 0:
            raise ValueError("skew and min_fatness must be non-negative")


def _chain_steps(coords: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    coords = np.sort(coords)
    lo, hi = coords[0], coords[-1]
    steps = []
    last_a = last_b = lo
    for x in coords[1:-1]:
        if rng.random() < 0.5:
            steps.append(x - last_a)
            last_a = x
        else:
            steps.append(last_b - x)
            last_b = x
    steps.append(hi - last_a)
    steps.append(last_b - hi)
    return np.array(steps)


def _draw(cfg: SamplerConfig, rng: np.random.Generator) -> np.ndarray:
    n = cfg.n
    gx, gy = np.exp(rng.uniform(-cfg.skew, cfg.skew, size=2))
    xs = _chain_steps(rng.random(n) ** gx, rng)
    ys = _chain_steps(rng.random(n) ** gy, rng)
    rng.shuffle(ys)
    edges = np.column_stack([xs, ys])
    edges = edges[np.argsort(np.arctan2(edges[:, 1], edges[:, 0]))]
    return np.cumsum(edges, axis=0)


def _normalize(P: np.ndarray, cfg: SamplerConfig) -> np.ndarray:
    P = P.copy()
    P[:, 0] *= cfg.anisotropy
    P -= P.mean(axis=0)
    return P * (cfg.scale / np.hypot(P[:, 0], P[:, 1]).max())


def random_convex_polygon(cfg: SamplerConfig) -> Polygon:
    """Strictly convex CCW n-gon, deterministic in ``cfg``.

    Centered on its vertex centroid, farthest vertex at distance ``scale``.
    Draws with area below ``min_fatness * diameter**2`` (measured before the
    ``anisotropy`` stretch) are rejected: needle shapes lose several digits in
    every area computed from their vertices.
    """
    for attempt in range(MAX_ATTEMPTS):
        rng = np.random.default_rng([cfg.seed, attempt])
        P = _draw(cfg, rng)
        if signed_area(P) < cfg.min_fatness * diameter(P) ** 2:
            continue
        P = _normalize(P, cfg)
        if is_convex_ccw(P, VALIDATION_TOL):
            try:
                return Polygon(P, convex=True)
            except DegenerateError:
                continue
    raise RetryExhaustedError(f"no strictly convex {cfg.n}-gon after {MAX_ATTEMPTS} attempts (seed {cfg.seed})")


def sample_polygons(n, count: int, seed: int = 0, **kw) -> list[Polygon]:
    """``count`` polygons; ``n`` is an int or a sequence of sizes cycled through."""
    sizes = [n] if isinstance(n, int) else list(n)
    return [
        random_convex_polygon(SamplerConfig(sizes[i % len(sizes)], seed=(seed * 1_000_003 + i) % 2**64, **kw))
        for i in range(count)
    ]
