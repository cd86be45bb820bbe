"""SVG figures: tiling, orbit sites, Voronoi edges and farthest points."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .canonicalize import klein_canonicalize
from .cutlocus import CutLocusGraph, FarthestReport
from .orbit import orbit
from .surface import (
    KleinSpec,
    PlanePoint,
    Surface,
    SurfacePoint,
    TorusSpec,
    deck_apply,
    diameter_bound,
    fundamental_domain,
)


@dataclass(frozen=True)
class SvgStyle:
    tiles: int = 3
    stroke_width: float = 1.0
    width_px: int = 800
    tiling_color: str = "#000000"
    voronoi_color: str = "#9a9a9a"
    site_colors: tuple[str, str] = ("#000000", "#8c8c8c")
    farthest_color: str = "#d62728"
    domain_color: str = "#1f77b4"


def _fmt(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _view(surface: Surface, tiles: int) -> tuple[float, float, float, float]:
    k = max(tiles, 1)
    corners = fundamental_domain(surface) * k
    lo, hi = corners.min(axis=0), corners.max(axis=0)
    return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])


def _inside(pt, box, margin: float) -> bool:
    return box[0] - margin <= pt[0] <= box[2] + margin and box[1] - margin <= pt[1] <= box[3] + margin


def _polyline(points, **attrs) -> str:
    coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
    extra = "".join(f' {k.replace("_", "-")}="{v}"' for k, v in attrs.items())
    return f'<polyline points="{coords}" fill="none"{extra}/>'


def _line(p, q, **attrs) -> str:
    extra = "".join(f' {k.replace("_", "-")}="{v}"' for k, v in attrs.items())
    return (f'<line x1="{_fmt(p[0])}" y1="{_fmt(p[1])}" x2="{_fmt(q[0])}" '
            f'y2="{_fmt(q[1])}"{extra}/>')


def _circle(c, r: float, fill: str) -> str:
    return f'<circle cx="{_fmt(c[0])}" cy="{_fmt(c[1])}" r="{_fmt(r)}" fill="{fill}"/>'


def _klein_tiling(spec: KleinSpec, p: SurfacePoint, box, margin):
    kc = klein_canonicalize(spec, p)
    a, b, xi = spec.a, spec.b, kc.xi
    corners = [kc.frame.invert(c) for c in
               [(box[0], box[1]), (box[2], box[1]), (box[0], box[3]), (box[2], box[3])]]
    xs = [c[0] for c in corners]
    ys = [c[1] for c in corners]
    i_lo = math.floor((min(xs) - margin) / (2 * a)) - 1
    i_hi = math.ceil((max(xs) + margin) / (2 * a)) + 1
    j_lo = math.floor((min(ys) - margin) / b) - 1
    j_hi = math.ceil((max(ys) + margin) / b) + 1
    segs = []
    for i in range(i_lo, i_hi + 1):
        for j in range(j_lo, j_hi + 1):
            x = PlanePoint(2 * i * a, -xi + j * b)
            for d in ((a, b - 2 * xi), (-a, b - 2 * xi), (a, -2 * xi), (-a, -2 * xi)):
                segs.append((kc.frame.apply(x), kc.frame.apply(x + d)))
    return segs


def emit_svg(
    surface: Surface,
    p: SurfacePoint,
    graph: CutLocusGraph,
    report: FarthestReport,
    style: SvgStyle = SvgStyle(),
) -> str:
    """Render the lifted cut locus of ``p`` over ``style.tiles`` x ``style.tiles`` tiles.

    Output depends only on the inputs (fixed iteration order, fixed number
    formatting), so identical inputs give byte-identical documents.
    """
    box = _view(surface, style.tiles)
    span = max(box[2] - box[0], box[3] - box[1])
    pad = 0.05 * span
    scale = style.width_px / (box[2] - box[0] + 2 * pad)
    height_px = (box[3] - box[1] + 2 * pad) * scale
    # y-up plane coordinates -> y-down SVG coordinates
    tx = (pad - box[0]) * scale
    ty = (box[3] + pad) * scale
    sw = _fmt(style.stroke_width)
    dot = 0.012 * span

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(style.width_px)}" height="{_fmt(height_px)}" '
        f'viewBox="0 0 {_fmt(style.width_px)} {_fmt(height_px)}">',
        f'<g transform="matrix({_fmt(scale)},0,0,{_fmt(-scale)},{_fmt(tx)},{_fmt(ty)})">',
    ]

    dom = fundamental_domain(surface)
    out.append('<g id="domain">')
    out.append(_polyline(list(map(tuple, dom)) + [tuple(dom[0])], stroke=style.domain_color,
                         stroke_width=_fmt(2 * style.stroke_width),
                         vector_effect="non-scaling-stroke"))
    out.append("</g>")

    if style.tiles > 0:
        margin = diameter_bound(surface)
        centre = ((box[0] + box[2]) / 2, (box[1] + box[3]) / 2)
        reach = math.hypot(box[2] - box[0], box[3] - box[1]) / 2 + margin
        sites = [(s, g) for s, g in orbit(surface, p, centre, reach).points if _inside(s, box, margin)]
        sites.sort(key=lambda sg: (sg[1].k, sg[1].n))

        out.append('<g id="tiling">')
        if isinstance(surface, TorusSpec):
            segs = []
            for s, _ in sites:
                segs.append((s, s + surface.u))
                segs.append((s, s + surface.v))
        else:
            segs = _klein_tiling(surface, p, box, margin)
        for q0, q1 in segs:
            out.append(_line(q0, q1, stroke=style.tiling_color, stroke_width=sw,
                             vector_effect="non-scaling-stroke"))
        out.append("</g>")

        if isinstance(surface, KleinSpec):
            out.append('<g id="main-geodesics">')
            half = surface.b / 2
            for n in range(math.floor((box[1] - margin) / half), math.ceil((box[3] + margin) / half) + 1):
                y = n * half
                out.append(_line((box[0] - margin, y), (box[2] + margin, y), stroke=style.tiling_color,
                                 stroke_width=sw, stroke_dasharray="2,4",
                                 vector_effect="non-scaling-stroke"))
            out.append("</g>")

        out.append('<g id="voronoi">')
        for _, g in sites:
            cell = [deck_apply(surface, g, c) for c in graph.cell]
            out.append(_polyline(cell + [cell[0]], stroke=style.voronoi_color, stroke_width=sw,
                                 vector_effect="non-scaling-stroke"))
        out.append("</g>")

        out.append('<g id="sites">')
        for s, g in sites:
            colour = style.site_colors[g.k % 2] if isinstance(surface, KleinSpec) else style.site_colors[0]
            out.append(_circle(s, dot, colour))
        out.append("</g>")

        out.append('<g id="farthest">')
        for fp in report.points:
            for _, g in sites:
                out.append(_circle(deck_apply(surface, g, fp.lift), 1.3 * dot, style.farthest_color))
        out.append("</g>")

    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"

