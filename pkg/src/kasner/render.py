"""SVG 1.1 overlay of a descent sequence K, K', ..., K^t."""

from __future__ import annotations

import numpy as np

from .geom_core import Polygon, centroid
from .io import fmt

PALETTE = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
]


def stroke_color(k: int, count: int) -> str:
    if count <= len(PALETTE):
        return PALETTE[k]
    # more generations than palette entries: sweep the hue instead
    hue = 360.0 * k / count
    return f"hsl({hue:.1f},70%,40%)"


def viewbox(polygons: list[Polygon], margin: float = 0.05) -> tuple[float, float, float, float]:
    """(x, y, width, height) in SVG coordinates (y axis flipped)."""
    pts = np.vstack([P.vertices for P in polygons]) * [1.0, -1.0]
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = hi - lo
    span = np.where(span > 0, span, max(span.max(), 1.0))
    lo = lo - margin * span
    size = span * (1 + 2 * margin)
    return float(lo[0]), float(lo[1]), float(size[0]), float(size[1])


def render_svg(polygons: list[Polygon], width_px: int = 800) -> str:
    x, y, w, h = viewbox(polygons)
    height_px = max(1, int(round(width_px * h / w)))
    marker = 0.01 * max(w, h)
    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width_px}" height="{height_px}" viewBox="{fmt(x)} {fmt(y)} {fmt(w)} {fmt(h)}">',
    ]
    for k, P in enumerate(polygons):
        pts = " ".join(f"{fmt(px)},{fmt(0.0 - py)}" for px, py in P.vertices)
        lines.append(
            f'  <polygon points="{pts}" fill="none" stroke="{stroke_color(k, len(polygons))}" '
            f'stroke-width="1.5" vector-effect="non-scaling-stroke"><title>K^{k}</title></polygon>'
        )
    c = centroid(polygons[0])
    lines.append(
        f'  <circle class="centroid" cx="{fmt(c.x)}" cy="{fmt(0.0 - c.y)}" r="{fmt(marker)}" fill="black"/>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
