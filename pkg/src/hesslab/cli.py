"""Command-line surface: build families, run certifiers, trace and export curves.

Subcommands:

    family       print the expanded polynomial (or numerator/denominator)
    verify       theorem1 | theorem2 | theorem3, with a JSON report
    trace        write the Hessian curve as SVG and/or CSV
    classify     classify a point of a family's graph surface
    affine-check check Hess((f o T)/J) == (Hess f) o T for given f, T

Rational flags accept exact values only (`p` or `p/q`); decimals are rejected
so exactness survives the round trip.  Exit status is 0 when the requested
verification passes and 1 when it fails or a hypothesis is violated.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .certify import (
    GoodPositionError,
    TheoremReport,
    verify_affine_invariance,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
)
from .diffgeo import classify_point, hessian_poly
from .families import (
    EvenCircleParams,
    FamilySpec,
    OddCircleParams,
    OuterOvalParams,
    ParameterError,
    radial_odd,
)
from .polynomial import (
    AffineMap2,
    format_polynomial,
    parse_polynomial,
    parse_rational,
)
from .topology import TracedComponent, auto_bbox, nesting_forest, trace_curve

_DEPTH_COLORS = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#17becf",
    "#8c564b",
)


def _rational_list(text: str) -> Tuple[Fraction, ...]:
    items = [piece for piece in text.split(",") if piece.strip()]
    return tuple(parse_rational(piece) for piece in items)


def _add_family_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", choices=["outer", "even", "odd"])
    parser.add_argument("--a", help="slope a (exact rational)")
    parser.add_argument("--b", help="slope b (exact rational)")
    parser.add_argument("--ai", help="comma list a_1,...,a_m (a_m < ... < a_1 < 0)")
    parser.add_argument("--bj", help="comma list b_1,...,b_n (0 < b_1 < ... < b_n)")
    parser.add_argument("--radii", help="comma list m_1,...,m_n (even family)")
    parser.add_argument("--n", type=int, help="circle count (odd family)")
    parser.add_argument(
        "--instance", help="path to a JSON family instance file"
    )


def _spec_from_args(args, default_family: Optional[str] = None) -> FamilySpec:
    if args.instance:
        with open(args.instance, "r", encoding="utf-8") as handle:
            return FamilySpec.from_dict(json.load(handle))
    family = args.family or default_family
    if family is None:
        if args.radii:
            family = "even"
        elif args.n is not None:
            family = "odd"
        elif args.a is not None:
            family = "outer"
        else:
            raise ParameterError("no family selected; use --family or --instance")
    if family == "outer":
        if args.a is None or args.b is None:
            raise ParameterError("outer family requires --a and --b")
        return FamilySpec(
            OuterOvalParams(
                a=parse_rational(args.a),
                b=parse_rational(args.b),
                a_list=_rational_list(args.ai) if args.ai else (),
                b_list=_rational_list(args.bj) if args.bj else (),
            )
        )
    if family == "even":
        if not args.radii:
            raise ParameterError("even family requires --radii")
        return FamilySpec(EvenCircleParams(radii=_rational_list(args.radii)))
    if not args.n:
        raise ParameterError("odd family requires --n")
    return FamilySpec(OddCircleParams(n=args.n))


def _hessian_zero_set(spec: FamilySpec):
    """Polynomial whose zero set is the Hessian curve of the family."""
    if spec.kind in ("outer", "even"):
        return hessian_poly(spec.build())
    # Odd family: the denominator never vanishes, so {Hess f = 0} = {s*t = 0}.
    pair = radial_odd(spec.params)
    s2, t2 = pair.lift()
    return 4 * s2 * t2


# ---------------------------------------------------------------------------
# Emission helpers
# ---------------------------------------------------------------------------


def emit_report(report: TheoremReport, path: str, include_timings: bool = True) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(report.to_json(include_timings=include_timings))


def emit_svg(
    components: Sequence[TracedComponent],
    path: str,
    bbox=None,
    margin: float = 0.5,
) -> None:
    """Standalone SVG, one path per component, stroke color by nesting depth."""
    if bbox is None:
        if components:
            bbox = (
                min(c.bounding_box[0] for c in components) - margin,
                max(c.bounding_box[2] for c in components) + margin,
                min(c.bounding_box[1] for c in components) - margin,
                max(c.bounding_box[3] for c in components) + margin,
            )
        else:
            bbox = (-1, 1, -1, 1)
    xmin, xmax, ymin, ymax = (float(v) for v in bbox)
    width = xmax - xmin
    height = ymax - ymin
    forest = nesting_forest(list(components)) if components else None
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{xmin} {-ymax} '
        f'{width} {height}" width="640" height="{640 * height / width:.0f}">',
        f'<g fill="none" stroke-width="{0.008 * max(width, height)}">',
    ]
    for idx, comp in enumerate(components):
        depth = forest.depth(idx) if forest else 0
        color = _DEPTH_COLORS[depth % len(_DEPTH_COLORS)]
        points = " L ".join(f"{x:.5f},{-y:.5f}" for x, y in comp.polyline)
        closer = " Z" if comp.closed else ""
        lines.append(f'<path d="M {points}{closer}" stroke="{color}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")


def emit_csv(components: Sequence[TracedComponent], path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("component,vertex,x,y\n")
        for idx, comp in enumerate(components):
            for k, (x, y) in enumerate(comp.polyline):
                handle.write(f"{idx},{k},{x!r},{y!r}\n")


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_family(args) -> int:
    spec = _spec_from_args(args)
    built = spec.build()
    if spec.kind == "odd":
        print(f"numerator = {format_polynomial(built.num)}")
        print(f"denominator = {format_polynomial(built.den)}")
    else:
        print(format_polynomial(built))
    return 0


def _cmd_verify(args) -> int:
    default_family = {"theorem1": "outer", "theorem2": "even", "theorem3": "odd"}[
        args.theorem
    ]
    spec = _spec_from_args(args, default_family)
    try:
        if args.theorem == "theorem1":
            report = verify_theorem1(
                spec.params, resolution=args.resolution, seed=args.seed
            )
        elif args.theorem == "theorem2":
            report = verify_theorem2(
                spec.params, resolution=args.resolution, seed=args.seed
            )
        else:
            report = verify_theorem3(
                spec.params, resolution=args.resolution, seed=args.seed
            )
    except GoodPositionError as exc:
        print(f"hypothesis failure: {exc}", file=sys.stderr)
        if args.json:
            payload = {
                "family": spec.to_dict(),
                "error": "good-position failure",
                "witness": exc.result.to_json(),
                "overall": False,
            }
            with open(args.json, "w", encoding="utf-8") as handle:
                json.dump(payload, handle, indent=2)
                handle.write("\n")
        return 1
    if args.json:
        emit_report(report, args.json)
    for claim in report.claims:
        status = "pass" if claim.passed else "FAIL"
        print(f"[{status}] {claim.id}: expected {claim.expected}, observed {claim.observed}")
    print(f"overall: {'pass' if report.overall else 'FAIL'}")
    return 0 if report.overall else 1


def _cmd_trace(args) -> int:
    spec = _spec_from_args(args)
    curve = _hessian_zero_set(spec)
    rect = auto_bbox(spec)
    components = trace_curve(curve, rect, args.resolution)
    if args.svg:
        emit_svg(components, args.svg, bbox=rect)
    if args.csv:
        emit_csv(components, args.csv)
    closed = sum(1 for c in components if c.closed)
    print(f"{len(components)} component(s), {closed} closed")
    return 0


def _cmd_classify(args) -> int:
    spec = _spec_from_args(args)
    built = spec.build()
    parts = _rational_list(args.point)
    if len(parts) != 2:
        raise ParameterError("--point expects 'x,y'")
    result = classify_point(built, parts)
    print(result.value)
    return 0


def _cmd_affine_check(args) -> int:
    f = parse_polynomial(args.poly)
    linear = _rational_list(args.linear)
    if len(linear) != 4:
        raise ParameterError("--linear expects 'a11,a12,a21,a22'")
    translate = _rational_list(args.translate) if args.translate else (Fraction(0),) * 2
    if len(translate) != 2:
        raise ParameterError("--translate expects 'tx,ty'")
    T = AffineMap2(linear[0], linear[1], linear[2], linear[3], translate[0], translate[1])
    ok = verify_affine_invariance(f, T)
    print("identity holds" if ok else "identity FAILS")
    return 0 if ok else 1


# Lets argparse accept values like "-2,-3" or "-1/2" for the list flags.
_NEGATIVE_VALUE_RE = re.compile(r"^-\d+(/\d+)?(,-?\d+(/\d+)?)*$")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hesslab",
        description="Construct Hessian-curve families and certify their topology.",
    )
    parser._negative_number_matcher = _NEGATIVE_VALUE_RE
    sub = parser.add_subparsers(dest="command", required=True)

    p_family = sub.add_parser("family", help="print the expanded family function")
    _add_family_flags(p_family)
    p_family.set_defaults(func=_cmd_family)

    p_verify = sub.add_parser("verify", help="run a certifier and emit a report")
    p_verify.add_argument("theorem", choices=["theorem1", "theorem2", "theorem3"])
    _add_family_flags(p_verify)
    p_verify.add_argument("--json", help="write the report to this path")
    p_verify.add_argument("--resolution", type=int, default=128)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(func=_cmd_verify)

    p_trace = sub.add_parser("trace", help="trace the Hessian curve to SVG/CSV")
    _add_family_flags(p_trace)
    p_trace.add_argument("--svg")
    p_trace.add_argument("--csv")
    p_trace.add_argument("--resolution", type=int, default=128)
    p_trace.set_defaults(func=_cmd_trace)

    p_classify = sub.add_parser("classify", help="classify a point of the graph")
    _add_family_flags(p_classify)
    p_classify.add_argument("--point", required=True, help="exact 'x,y'")
    p_classify.set_defaults(func=_cmd_classify)

    p_affine = sub.add_parser(
        "affine-check", help="check the affine-invariance identity for f and T"
    )
    p_affine.add_argument("--poly", required=True, help="polynomial text for f")
    p_affine.add_argument("--linear", required=True, help="'a11,a12,a21,a22'")
    p_affine.add_argument("--translate", help="'tx,ty' (default 0,0)")
    p_affine.set_defaults(func=_cmd_affine_check)

    for subparser in (p_family, p_verify, p_trace, p_classify, p_affine):
        subparser._negative_number_matcher = _NEGATIVE_VALUE_RE

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
