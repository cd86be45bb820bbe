"""``farpoint`` command line interface.

Exit codes: 0 ok, 1 verification mismatch, 2 usage error, 3 invalid geometry.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .canonicalize import reduce_basis
from .cutlocus import CutLocusGraph, FarthestReport, cut_locus, farthest_points
from .oracle import grid_farthest, match_points
from .render import SvgStyle, emit_svg
from .surface import (
    DEFAULT_RTOL,
    GeometryError,
    PlanePoint,
    Surface,
    TorusSpec,
    make_klein_spec,
    make_torus_spec,
    wrap,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_GEOMETRY = 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    surface: Optional[Surface] = None
    point: PlanePoint = PlanePoint(0.0, 0.0)
    basis: Optional[tuple[float, float, float, float]] = None
    json: bool = False
    svg: Optional[str] = None
    verify: Optional[int] = None
    tiles: int = 3
    tolerance: float = DEFAULT_RTOL
    stroke_width: float = 1.0


def _floats(n: int):
    def parse(text: str) -> tuple[float, ...]:
        try:
            values = tuple(float(x) for x in text.split(","))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {text!r}")
        if len(values) != n or not all(math.isfinite(v) for v in values):
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated finite numbers, got {text!r}")
        return values
    return parse


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="farpoint",
        description="Cut loci and farthest points on flat tori and flat Klein bottles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--point", type=_floats(2), default=(0.0, 0.0), metavar="X,Y",
                        help="base point in plane coordinates (use --point=-x,y for negative x)")
    common.add_argument("--json", action="store_true", help="print a JSON report on stdout")
    common.add_argument("--svg", metavar="PATH", help="write an SVG figure")
    common.add_argument("--verify", type=_positive_int, metavar="N",
                        help="cross-check with an N x N brute-force grid")
    common.add_argument("--tiles", type=_positive_int, default=3, metavar="K",
                        help="tiles per side in the SVG figure (default 3)")
    common.add_argument("--tolerance", type=float, default=DEFAULT_RTOL, metavar="T",
                        help="relative tolerance for validation and distance ties")
    common.add_argument("--stroke-width", type=float, default=1.0, metavar="W")

    torus = sub.add_parser("torus", parents=[common], help="flat torus T(a, b, alpha)")
    torus.add_argument("--a", type=float, required=True)
    torus.add_argument("--b", type=float, required=True)
    torus.add_argument("--alpha", type=float, required=True, help="angle (radians unless --degrees)")
    torus.add_argument("--degrees", action="store_true", help="read --alpha in degrees")

    klein = sub.add_parser("klein", parents=[common], help="flat Klein bottle K(a, b)")
    klein.add_argument("--a", type=float, required=True)
    klein.add_argument("--b", type=float, required=True)

    reduce = sub.add_parser("reduce", help="reduce a lattice basis to canonical torus form")
    reduce.add_argument("--basis", type=_floats(4), required=True, metavar="UX,UY,VX,VY")
    reduce.add_argument("--json", action="store_true", help="print a JSON report on stdout")
    reduce.add_argument("--tolerance", type=float, default=DEFAULT_RTOL, metavar="T")
    return parser


def parse_args(argv: Sequence[str]) -> RunConfig:
    """Parse and validate ``argv``.

    Malformed flags exit with status 2 (argparse); invalid geometry raises
    :class:`GeometryError`.
    """
    args = build_parser().parse_args(list(argv))
    if not (args.tolerance > 0 and math.isfinite(args.tolerance)):
        build_parser().error("--tolerance must be a positive number")
    if args.command == "reduce":
        return RunConfig("reduce", basis=args.basis, json=args.json, tolerance=args.tolerance)
    if args.verify is not None and args.verify < 16:
        build_parser().error("--verify needs N >= 16")
    if args.command == "torus":
        alpha = math.radians(args.alpha) if args.degrees else args.alpha
        surface = make_torus_spec(args.a, args.b, alpha, args.tolerance)
    else:
        surface = make_klein_spec(args.a, args.b, args.tolerance)
    return RunConfig(
        args.command,
        surface=surface,
        point=PlanePoint(*args.point),
        json=args.json,
        svg=args.svg,
        verify=args.verify,
        tiles=args.tiles,
        tolerance=args.tolerance,
        stroke_width=args.stroke_width,
    )


def surface_json(surface: Surface) -> dict:
    if isinstance(surface, TorusSpec):
        return {"type": "torus", "a": surface.a, "b": surface.b, "alpha": surface.alpha}
    return {"type": "klein", "a": surface.a, "b": surface.b}


def report_json(surface: Surface, p, report: FarthestReport, graph: CutLocusGraph) -> dict:
    doc = {
        "schema": SCHEMA_VERSION,
        "surface": surface_json(surface),
        "point": {"x": p.rep.x, "y": p.rep.y},
        "case": report.case,
        "radius": report.radius,
        "farthest": [
            {"x": f.point.rep.x, "y": f.point.rep.y, "segments": f.n_segments, "distance": f.distance}
            for f in report.points
        ],
        "cut_locus": {
            "vertices": [
                {"x": v.point.rep.x, "y": v.point.rep.y, "degree": v.degree, "distance": v.distance}
                for v in graph.vertices
            ],
            "edges": [{"from": e.start, "to": e.end, "length": e.length} for e in graph.edges],
        },
    }
    if report.klein is not None:
        k = report.klein
        doc["klein"] = {"lambda": k.lam, "delta": k.delta, "lambda0": k.lambda0, "xi": k.xi}
    return doc


def dumps(doc: dict) -> str:
    # float repr is the shortest string that round-trips bit-exactly
    return json.dumps(doc, indent=2, allow_nan=False)


def _run_reduce(config: RunConfig, out) -> int:
    ux, uy, vx, vy = config.basis
    result = reduce_basis((ux, uy), (vx, vy), config.tolerance)
    doc = {
        "schema": SCHEMA_VERSION,
        "surface": surface_json(result.spec),
        "change_of_basis": result.change_of_basis.tolist(),
        "sign_flips": list(result.sign_flips),
        "basis": result.basis.tolist(),
    }
    if config.json:
        out.write(dumps(doc) + "\n")
    else:
        s = result.spec
        out.write(f"T(a={s.a!r}, b={s.b!r}, alpha={s.alpha!r})\n")
        out.write(f"change of basis: {doc['change_of_basis']}, sign flips: {doc['sign_flips']}\n")
    return EXIT_OK


def run(config: RunConfig, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    if config.command == "reduce":
        return _run_reduce(config, out)

    surface = config.surface
    p = wrap(surface, config.point)
    report = farthest_points(surface, p)
    graph = cut_locus(surface, p)
    doc = report_json(surface, p, report, graph)
    status = EXIT_OK

    if config.verify is not None:
        n = config.verify
        found = grid_farthest(surface, p, (n, n))
        agrees = match_points(surface, found.points, [f.point for f in report.points],
                              found.resolution_bound)
        doc["verify"] = {"resolution": n, "clusters": len(found.points), "agrees": agrees}
        noun = "cluster" if len(found.points) == 1 else "clusters"
        verdict = "matches analytic" if agrees else f"DISAGREES with analytic ({len(report.points)} expected)"
        err.write(f"{len(found.points)} {noun}, {verdict}\n")
        if not agrees:
            status = EXIT_MISMATCH

    if config.svg:
        text = emit_svg(surface, p, graph, report, SvgStyle(tiles=config.tiles, stroke_width=config.stroke_width))
        with open(config.svg, "w", encoding="utf-8") as fh:
            fh.write(text)

    if config.json:
        out.write(dumps(doc) + "\n")
    else:
        out.write(f"{report.case}: radius {report.radius!r}\n")
        for f in report.points:
            out.write(f"  farthest ({f.point.rep.x!r}, {f.point.rep.y!r}) segments={f.n_segments}\n")
    return status


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        config = parse_args(argv)
        return run(config)
    except GeometryError as exc:
        sys.stderr.write(f"farpoint: invalid geometry: {exc}\n")
        return EXIT_GEOMETRY
    except OSError as exc:
        sys.stderr.write(f"farpoint: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
