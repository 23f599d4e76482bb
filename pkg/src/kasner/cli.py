"""Command-line front end.

Exit codes: 0 success, 2 invalid input or usage, 3 a verification suite failed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import analysis, descent, parametric
from .errors import KasnerError
from .geom_core import Polygon, Tolerance, signed_area
from .io import dumps, params_to_obj, polygon_text, polygon_to_obj, read_params, read_polygon, write_atomic
from .parametric import HexagonParams, PentagonParams
from .render import render_svg
from .sampler import SamplerConfig, random_convex_polygon
from .verify import parse_grid, run_verification

EXIT_OK, EXIT_INVALID, EXIT_VERIFY_FAILED = 0, 2, 3


class UsageError(Exception):
    pass


def _m(value: str) -> float:
    m = float(value)
    if not 0 < m < 1:
        raise argparse.ArgumentTypeError(f"m must lie in (0, 1), got {value}")
    return m


def _tolerance(args) -> Tolerance:
    overrides = {}
    if args.abs_eps is not None:
        overrides["abs_eps"] = args.abs_eps
    if args.rel_eps is not None:
        overrides["rel_eps"] = args.rel_eps
    return Tolerance.from_env(**overrides)


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def _input_polygon(args, tol: Tolerance) -> Polygon:
    if args.params:
        p = read_params(args.params)
        build = parametric.build_pentagon if isinstance(p, PentagonParams) else parametric.build_hexagon
        return build(p, tol)
    if not args.input:
        raise UsageError("one of --in or --params is required")
    return Polygon.convex_ccw(read_polygon(args.input).vertices, tol)


def cmd_descend(args, tol):
    K = _input_polygon(args, tol)
    seq = descent.sequence(K, args.m, args.t, tol)
    _emit(args, dumps({
        "m": args.m,
        "t": args.t,
        "polygons": [polygon_to_obj(P) for P in seq],
        "areas": [signed_area(P) for P in seq],
    }))


def cmd_ratio(args, tol):
    K = _input_polygon(args, tol)
    _emit(args, dumps(descent.area_ratio(K, args.m, tol).to_dict()))


def cmd_bounds(args, tol):
    b = descent.bound_interval(args.n, args.m)
    _emit(args, dumps({"n": args.n, "m": args.m, "lower": b.lower, "upper": b.upper, "attained": b.attained}))


def cmd_recurrence(args, tol):
    K = _input_polygon(args, tol)
    if K.n != 5:
        raise UsageError(f"recurrence needs a pentagon, got {K.n} vertices")
    c1, c2 = descent.pentagon_recurrence_coeffs(args.m)
    seq = descent.sequence(K, args.m, max(args.t, 2), tol)
    areas = [signed_area(P) for P in seq]
    predicted = areas[:2]
    for _ in range(2, len(areas)):
        predicted.append(c1 * predicted[-1] - c2 * predicted[-2])
    _emit(args, dumps({
        "m": args.m,
        "c1": c1,
        "c2": c2,
        "residual": descent.recurrence_residual(K, args.m, tol),
        "areas": areas,
        "predicted_areas": predicted,
    }))


def _family_report(p, polygon: Polygon, m: float, tol: Tolerance) -> dict:
    closed = (parametric.pentagon_ratio_closed if isinstance(p, PentagonParams)
              else parametric.hexagon_ratio_closed)(p, m)
    measured = descent.measured_ratio(polygon, m, tol)
    b = descent.bound_interval(polygon.n, m)
    r = m * (1 - m)
    return {
        **params_to_obj(p),
        "m": m,
        "fraction": p.fraction,
        "ratio_closed_form": closed,
        "ratio": measured,
        "lower": b.lower,
        "upper": b.upper,
        "gap_to_lower_over_r": (measured - b.lower) / r,
        "gap_to_upper_over_r": (b.upper - measured) / r,
        "polygon": polygon_to_obj(polygon),
    }


_FAMILIES = {
    "pentagon-lower": (parametric.pentagon_lower_family, parametric.build_pentagon),
    "pentagon-upper": (parametric.pentagon_upper_family, parametric.build_pentagon),
    "hexagon-lower": (parametric.hexagon_lower_family, parametric.build_hexagon),
    "hexagon-upper": (parametric.hexagon_upper_family, parametric.build_hexagon),
}


def cmd_extremal(args, tol):
    family, build = _FAMILIES[args.kind]
    p = family(args.param)
    _emit(args, dumps(_family_report(p, build(p, tol), args.m, tol)))


def cmd_pentagon_family(args, tol):
    args.kind = f"pentagon-{args.kind}"
    cmd_extremal(args, tol)


def cmd_hexagon_family(args, tol):
    args.kind = f"hexagon-{args.kind}"
    cmd_extremal(args, tol)


def _construction_report(K: Polygon, args, tol, bound_of) -> str:
    if args.out:
        write_atomic(args.out, polygon_text(K, args.out))
    report = {"n": K.n, "eps": args.eps, "polygon": polygon_to_obj(K)}
    if args.m is not None:
        r = args.m * (1 - args.m)
        report.update(m=args.m, ratio=descent.measured_ratio(K, args.m, tol), bound=bound_of(r, args.eps))
    return dumps(report)


def cmd_construct_lower(args, tol):
    K = parametric.ngon_lower_construction(args.n, args.eps, tol)
    sys.stdout.write(_construction_report(K, args, tol, lambda r, eps: 1 - 2 * r + eps / 2))


def cmd_construct_upper(args, tol):
    chain = parametric.ngon_upper_chain(args.n, args.eps, tol)
    text = _construction_report(chain.polygon, args, tol, lambda r, eps: 1 - eps)
    sys.stdout.write(text)


def cmd_sample(args, tol):
    lines = []
    for i in range(args.count):
        cfg = SamplerConfig(args.n, seed=(args.seed + i) % 2**64, scale=args.scale, anisotropy=args.anisotropy)
        lines.append(dumps(polygon_to_obj(random_convex_polygon(cfg)), indent=0).replace("\n", "") + "\n")
    _emit(args, "".join(lines))


def cmd_verify(args, tol):
    report = run_verification(args.n, args.samples, parse_grid(args.m_grid), args.seed, tol)
    _emit(args, dumps(report))
    return EXIT_OK if report["passed"] else EXIT_VERIFY_FAILED


def cmd_extremize(args, tol):
    res = analysis.empirical_extremize(args.n, args.m, args.mode, args.budget, seed=args.seed)
    lo, hi, _ = descent.bound_interval(args.n, args.m)
    _emit(args, dumps({
        "n": args.n, "m": args.m, "mode": args.mode, "budget": args.budget,
        "best_ratio": res.best_ratio, "restart": res.restart,
        "lower": lo, "upper": hi,
        "polygon": polygon_to_obj(res.best_polygon),
    }))


def cmd_render(args, tol):
    K = _input_polygon(args, tol)
    write_atomic(args.out, render_svg(descent.sequence(K, args.m, args.t, tol)))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kasner", description=__doc__.splitlines()[0])
    parser.add_argument("--abs-eps", type=float, help="absolute tolerance (default 1e-9 or $KASNER_TOL_ABS)")
    parser.add_argument("--rel-eps", type=float, help="relative tolerance (default 1e-9)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        return sp

    def poly_in(sp):
        sp.add_argument("--in", dest="input", type=Path, help="polygon JSON or CSV")
        sp.add_argument("--params", type=Path, help='{"pentagon": {...}} or {"hexagon": {...}} file')

    sp = add("descend", cmd_descend, "write K, K', ..., K^t with their areas")
    poly_in(sp)
    sp.add_argument("--m", type=_m, required=True)
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("--out", type=Path)

    sp = add("ratio", cmd_ratio, "area ratio report for one polygon")
    poly_in(sp)
    sp.add_argument("--m", type=_m, required=True)
    sp.add_argument("--out", type=Path)

    sp = add("bounds", cmd_bounds, "theoretical ratio interval for n-gons")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=_m, required=True)
    sp.add_argument("--out", type=Path)

    sp = add("recurrence", cmd_recurrence, "pentagon area recurrence check")
    poly_in(sp)
    sp.add_argument("--m", type=_m, required=True)
    sp.add_argument("--t", type=int, default=5)
    sp.add_argument("--out", type=Path)

    for name, func in (("pentagon-family", cmd_pentagon_family), ("hexagon-family", cmd_hexagon_family)):
        sp = add(name, func, f"extremal {name.split('-')[0]} family member")
        sp.add_argument("--kind", choices=["lower", "upper"], required=True)
        sp.add_argument("--param", type=float, required=True)
        sp.add_argument("--m", type=_m, default=0.5)
        sp.add_argument("--out", type=Path)

    sp = add("extremal", cmd_extremal, "any extremal family member")
    sp.add_argument("--kind", choices=sorted(_FAMILIES), required=True)
    sp.add_argument("--param", type=float, required=True)
    sp.add_argument("--m", type=_m, default=0.5)
    sp.add_argument("--out", type=Path)

    for name, func in (("construct-lower", cmd_construct_lower), ("construct-upper", cmd_construct_upper)):
        sp = add(name, func, f"n-gon with ratio near the {name.split('-')[1]} bound")
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--eps", type=float, required=True)
        sp.add_argument("--m", type=_m, help="also report the ratio at this m")
        sp.add_argument("--out", type=Path, help="write the polygon (JSON, or CSV by extension)")

    sp = add("sample", cmd_sample, "random convex polygons as JSON lines")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--scale", type=float, default=1.0)
    sp.add_argument("--anisotropy", type=float, default=1.0)
    sp.add_argument("--out", type=Path)

    sp = add("verify", cmd_verify, "randomized identity and bound checks")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--m-grid", default="0.1:0.9:9")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", type=Path)

    sp = add("extremize", cmd_extremize, "derivative-free search for extreme ratios")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=_m, default=0.5)
    sp.add_argument("--mode", choices=["min", "max"], default="min")
    sp.add_argument("--budget", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", type=Path)

    sp = add("render", cmd_render, "SVG overlay of a descent sequence")
    poly_in(sp)
    sp.add_argument("--m", type=_m, default=0.5)
    sp.add_argument("--t", type=int, default=5)
    sp.add_argument("--out", type=Path, required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = _tolerance(args)
        code = args.func(args, tol)
    except (UsageError, KasnerError, ValueError, OSError) as exc:
        print(f"kasner {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
