"""Randomized verification suite behind ``kasner verify``.

Every check reports the number of samples, the worst residual, the tolerance
it was held to and a pass flag. Inequality checks report the worst violation
(0 when every sample holds) together with the smallest margin seen.
"""

from __future__ import annotations

import numpy as np

from . import analysis, descent
from .errors import KasnerError
from .geom_core import DEFAULT_TOL, Tolerance, centroid, diameter, signed_area
from .parametric import HexagonParams
from .sampler import sample_polygons

IDENTITY_TOL = 1e-12
RECURRENCE_TOL = 1e-10
BOUND_MARGIN = 1e-12
CENTROID_TOL = 1e-9


def parse_grid(text: str) -> list[float]:
    """``start:stop:count`` -> evenly spaced m values; 0 and 1 are dropped."""
    try:
        start, stop, count = text.split(":")
        grid = np.linspace(float(start), float(stop), int(count))
    except ValueError as exc:
        raise ValueError(f"bad m-grid {text!r}, expected start:stop:count") from exc
    grid = [float(m) for m in grid if m not in (0.0, 1.0)]
    if not grid or any(not 0 < m < 1 for m in grid):
        raise ValueError(f"m-grid {text!r} must stay inside the open interval (0, 1)")
    return grid


def _residual_check(name, values, tolerance):
    values = np.asarray(values, dtype=float)
    worst = float(values.max()) if values.size else 0.0
    return {
        "name": name,
        "samples": int(values.size),
        "max_residual": worst,
        "tolerance": tolerance,
        "passed": bool(values.size and worst <= tolerance),
    }


def _margin_check(name, margins, required):
    margins = np.asarray(margins, dtype=float)
    low = float(margins.min()) if margins.size else 0.0
    return {
        "name": name,
        "samples": int(margins.size),
        "max_residual": max(0.0, required - low),
        "tolerance": 0.0,
        "min_margin": low,
        "passed": bool(margins.size and low > required),
    }


def _failure(name, samples, exc):
    return {"name": name, "samples": samples, "max_residual": None, "tolerance": None,
            "passed": False, "error": f"{type(exc).__name__}: {exc}"}


def random_hexagon_params(rng: np.random.Generator, count: int) -> list[HexagonParams]:
    out = []
    while len(out) < count:
        p = HexagonParams(*np.exp(rng.uniform(np.log(1e-2), np.log(1e2), size=6)))
        if p.feasible:
            out.append(p)
    return out


def run_verification(
    n: int,
    samples: int,
    m_grid: list[float],
    seed: int = 0,
    tol: Tolerance = DEFAULT_TOL,
) -> dict:
    if n < 3:
        raise ValueError("n must be at least 3")
    polys = sample_polygons(n, samples, seed=seed)
    rng = np.random.default_rng(seed)
    checks = []

    ratios = {m: np.array([descent.measured_ratio(K, m, tol) for K in polys]) for m in m_grid}

    bounds_lo, bounds_hi, closed = [], [], []
    for m, rs in ratios.items():
        b = descent.bound_interval(n, m)
        if b.attained:
            closed.extend(np.abs(rs - b.lower) / b.lower)
        else:
            bounds_lo.extend(rs - b.lower)
            bounds_hi.extend(b.upper - rs)
    if n <= 4:
        checks.append(_residual_check("closed_form_ratio", closed, IDENTITY_TOL))
    else:
        checks.append(_margin_check("lower_bound_strict", bounds_lo, BOUND_MARGIN))
        checks.append(_margin_check("upper_bound_strict", bounds_hi, BOUND_MARGIN))

    cross = [abs(descent.ear_decomposition_ratio(K, m, tol) - ratios[m][i])
             for m in m_grid for i, K in enumerate(polys)]
    checks.append(_residual_check("ear_decomposition_cross_path", cross, IDENTITY_TOL))

    sym = [abs(descent.measured_ratio(K, m, tol) - descent.measured_ratio(K, 1 - m, tol))
           for m in m_grid for K in polys[: max(1, samples // 10)]]
    checks.append(_residual_check("m_symmetry", sym, IDENTITY_TOL))

    drift = []
    for K in polys[: max(1, samples // 10)]:
        c0, d = np.array(centroid(K)), diameter(K)
        for m in m_grid:
            drift.append(np.hypot(*(np.array(centroid(descent.descendant(K, m, tol))) - c0)) / d)
    checks.append(_residual_check("centroid_invariance", drift, CENTROID_TOL))

    shrink = [signed_area(K) - signed_area(descent.descend_array(K.vertices, m)) for m in m_grid for K in polys]
    checks.append(_margin_check("strict_shrinkage", shrink, 0.0))

    if n == 5:
        res = {"delta1": [], "TSD": [], "S_prime": [], "recurrence": []}
        for m in m_grid:
            for K in polys:
                for key, val in analysis.pentagon_identity_residuals(K, m, tol).items():
                    res[key].append(val)
        for key in ("delta1", "TSD", "S_prime"):
            checks.append(_residual_check(f"pentagon_{key}", res[key], IDENTITY_TOL))
        checks.append(_residual_check("pentagon_recurrence", res["recurrence"], RECURRENCE_TOL))

    if n == 6:
        try:
            slacks = [analysis.hexagon_double_ear_inequality(p, tol)
                      for p in random_hexagon_params(rng, samples)]
            checks.append(_margin_check("hexagon_double_ear", slacks, -tol.abs_eps))
        except KasnerError as exc:
            checks.append(_failure("hexagon_double_ear", samples, exc))

    if n >= 6:
        try:
            slack = [analysis.lemma_four_sides_index(K, tol).slack for K in polys]
            checks.append(_margin_check("four_sides_witness", slack, -tol.abs_eps))
        except KasnerError as exc:
            checks.append(_failure("four_sides_witness", samples, exc))

    if n >= 7:
        try:
            gaps = []
            for m in m_grid:
                for K in polys:
                    rv = analysis.remove_vertex_check(K, m, tol)
                    gaps.append(rv.ratio_K - rv.ratio_L)
            checks.append(_margin_check("vertex_removal_monotone", gaps, -tol.abs_eps))
        except KasnerError as exc:
            checks.append(_failure("vertex_removal_monotone", samples * len(m_grid), exc))

    quads = rng.normal(size=(samples, 4, 2))
    checks.append(_residual_check("plucker", [analysis.plucker_residual(q) for q in quads], IDENTITY_TOL))

    return {
        "n": n,
        "samples": samples,
        "seed": seed,
        "m_grid": list(m_grid),
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }
