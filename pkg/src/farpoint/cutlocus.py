"""Cut loci and farthest points on flat tori and flat Klein bottles."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .canonicalize import KleinCanonicalPoint, klein_canonicalize
from .orbit import distance, orbit
from .surface import (
    TAU_ANGLE,
    TAU_LAMBDA,
    KleinSpec,
    PlanePoint,
    Surface,
    SurfacePoint,
    TorusSpec,
    diameter_bound,
    dot,
    wrap,
)


class LambdaOutOfRange(ValueError):
    pass


class KleinCase(str, enum.Enum):
    LAMBDA_ZERO = "LambdaZero"
    DELTA_POSITIVE = "DeltaPositive"
    DELTA_ZERO = "DeltaZero"
    DELTA_NEGATIVE_INTERIOR = "DeltaNegativeInterior"
    DELTA_NEGATIVE_HALF = "DeltaNegativeHalf"


TORUS_GENERIC = "TorusGeneric"
TORUS_RECTANGULAR = "TorusRectangular"


def circumcenter(p, q, r) -> PlanePoint:
    """Circumcenter of a non-degenerate triangle."""
    bx, by = q[0] - p[0], q[1] - p[1]
    cx, cy = r[0] - p[0], r[1] - p[1]
    d = 2.0 * (bx * cy - by * cx)
    b2, c2 = bx * bx + by * by, cx * cx + cy * cy
    return PlanePoint(p[0] + (cy * b2 - by * c2) / d, p[1] + (bx * c2 - cx * b2) / d)


@dataclass(frozen=True)
class TorusCutData:
    c1: PlanePoint
    c2: PlanePoint
    degenerate: bool


def torus_cut_data(spec: TorusSpec, p: SurfacePoint) -> TorusCutData:
    """Circumcenters of ``(o, u, v)`` and ``(u, v, h)`` for the tile at ``p``'s lift."""
    o = p.rep
    u, v, h = spec.u, spec.v, spec.h
    c1 = circumcenter((0.0, 0.0), u, v) + o
    c2 = circumcenter(u, v, h) + o
    return TorusCutData(c1, c2, abs(spec.alpha - math.pi / 2) < TAU_ANGLE)


@dataclass(frozen=True)
class KleinCutData:
    """Circumcenters of the kite ``p0, h+, v, h-`` in the canonical frame.

    ``p0 = (0, -xi)``, ``v = (0, b - xi)`` and ``h+- = (+-a, xi)``.
    """

    a: float
    b: float
    lam: float
    delta: float
    lambda0: Optional[float]
    c_plus: PlanePoint
    c_minus: PlanePoint
    c0: Optional[PlanePoint]
    c1: PlanePoint
    case: KleinCase

    @property
    def xi(self) -> float:
        return self.lam * self.b / 2.0

    @property
    def p0(self) -> PlanePoint:
        return PlanePoint(0.0, -self.xi)

    @property
    def v(self) -> PlanePoint:
        return PlanePoint(0.0, self.b - self.xi)

    @property
    def h_plus(self) -> PlanePoint:
        return PlanePoint(self.a, self.xi)

    @property
    def h_minus(self) -> PlanePoint:
        return PlanePoint(-self.a, self.xi)


def klein_lambda0(spec: KleinSpec) -> Optional[float]:
    """Critical lambda where the discriminant vanishes; ``None`` when ``b < 2a``."""
    disc = 0.25 - (spec.a / spec.b) ** 2
    if disc < 0:
        return None
    return 0.5 - math.sqrt(disc)


def klein_delta(spec: KleinSpec, lam: float) -> float:
    return spec.a**2 - spec.b**2 * lam * (1.0 - lam)


def klein_cut_data(spec: KleinSpec, lam: float) -> KleinCutData:
    if not (-TAU_LAMBDA <= lam <= 0.5 + TAU_LAMBDA):
        raise LambdaOutOfRange(f"lambda must lie in [0, 1/2], got {lam!r}")
    lam = min(max(lam, 0.0), 0.5)
    a, b = spec.a, spec.b
    delta = klein_delta(spec, lam)
    tau_delta = 1e-12 * max(a * a, b * b)
    y_mid = b * (1.0 - lam) / 2.0
    c_plus = PlanePoint(delta / (2.0 * a), y_mid)
    c_minus = PlanePoint(-delta / (2.0 * a), y_mid)
    c0 = PlanePoint(0.0, a * a / (2.0 * b * lam)) if lam >= TAU_LAMBDA else None
    c1 = PlanePoint(0.0, (b * b * (1.0 - lam) ** 2 - delta) / (2.0 * b * (1.0 - lam)))
    if lam < TAU_LAMBDA:
        case = KleinCase.LAMBDA_ZERO
    elif delta > tau_delta:
        case = KleinCase.DELTA_POSITIVE
    elif delta >= -tau_delta:
        case = KleinCase.DELTA_ZERO
    elif lam < 0.5 - TAU_LAMBDA:
        case = KleinCase.DELTA_NEGATIVE_INTERIOR
    else:
        case = KleinCase.DELTA_NEGATIVE_HALF
    return KleinCutData(a, b, lam, delta, klein_lambda0(spec), c_plus, c_minus, c0, c1, case)


def delta_negative_gap(spec: KleinSpec, lam: float) -> float:
    """Closed form of ``d(p, c0)^2 - d(p, c1)^2`` in the negative-discriminant regime."""
    a, b = spec.a, spec.b
    delta = klein_delta(spec, lam)
    return (
        (1.0 - 2.0 * lam) * delta * (a * a + b * b * (1.0 - lam) * lam)
        / (4.0 * b * b * (1.0 - lam) ** 2 * lam * lam)
    )


@dataclass(frozen=True)
class CutVertex:
    point: SurfacePoint
    degree: int
    distance: float


@dataclass(frozen=True)
class CutEdge:
    start: int
    end: int
    length: float


@dataclass(frozen=True)
class CutLocusGraph:
    vertices: list[CutVertex]
    edges: list[CutEdge]
    # Voronoi cell of the base lift; its boundary covers the cut locus twice.
    cell: list[PlanePoint]

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges)


@dataclass(frozen=True)
class FarthestPoint:
    point: SurfacePoint
    n_segments: int
    distance: float
    lift: PlanePoint


@dataclass(frozen=True)
class FarthestReport:
    points: list[FarthestPoint]
    case: str
    radius: float
    klein: Optional[KleinCutData] = None
    canonical: Optional[KleinCanonicalPoint] = None


def analytic_vertices(surface: Surface, p: SurfacePoint) -> list[PlanePoint]:
    """Plane lifts of the cut-locus vertices predicted by the circumcenter formulas."""
    if isinstance(surface, TorusSpec):
        data = torus_cut_data(surface, p)
        return [data.c1] if data.degenerate else [data.c1, data.c2]
    kc = klein_canonicalize(surface, p)
    data = klein_cut_data(surface, kc.lam)
    if data.case is KleinCase.LAMBDA_ZERO:
        pts = [PlanePoint(surface.a / 2.0, surface.b / 2.0)]
    elif data.case is KleinCase.DELTA_POSITIVE:
        pts = [data.c_plus, data.c_minus]
    elif data.case is KleinCase.DELTA_ZERO:
        pts = [data.c0]
    else:
        pts = [data.c0, data.c1]
    return [kc.frame.apply(c) for c in pts]


def farthest_points(surface: Surface, p: SurfacePoint) -> FarthestReport:
    """Farthest-point set of ``p`` with segment multiplicities."""
    if isinstance(surface, TorusSpec):
        data = torus_cut_data(surface, p)
        o = p.rep
        if data.degenerate:
            r = (data.c1 - o).norm()
            pts = [FarthestPoint(wrap(surface, data.c1), 4, r, data.c1)]
            return FarthestReport(pts, TORUS_RECTANGULAR, r)
        r1, r2 = (data.c1 - o).norm(), (data.c2 - o - surface.u).norm()
        pts = [
            FarthestPoint(wrap(surface, data.c1), 3, r1, data.c1),
            FarthestPoint(wrap(surface, data.c2), 3, r2, data.c2),
        ]
        return FarthestReport(pts, TORUS_GENERIC, max(r1, r2))

    kc = klein_canonicalize(surface, p)
    data = klein_cut_data(surface, kc.lam)
    p0, v = data.p0, data.v
    if data.case is KleinCase.LAMBDA_ZERO:
        c = PlanePoint(surface.a / 2.0, surface.b / 2.0)
        found = [(c, 4, (c - p0).norm())]
    elif data.case is KleinCase.DELTA_POSITIVE:
        r = (data.c_plus - p0).norm()
        found = [(data.c_plus, 3, r), (data.c_minus, 3, r)]
    elif data.case is KleinCase.DELTA_ZERO:
        found = [(data.c0, 4, (data.c0 - p0).norm())]
    elif data.case is KleinCase.DELTA_NEGATIVE_INTERIOR:
        found = [(data.c1, 3, (data.c1 - v).norm())]
    else:
        found = [(data.c0, 3, (data.c0 - p0).norm()), (data.c1, 3, (data.c1 - v).norm())]
    pts = []
    for c, n, r in found:
        lift = kc.frame.apply(c)
        pts.append(FarthestPoint(wrap(surface, lift), n, r, lift))
    return FarthestReport(pts, data.case.value, max(r for _, _, r in found), data, kc)


def _clip(poly, labels, normal, offset, label):
    """Clip a convex polygon by ``dot(normal, x) <= offset``.

    ``labels[i]`` names the constraint owning edge ``poly[i] -> poly[i+1]``;
    the new edge along the clipping line gets ``label``.
    """
    out, out_labels = [], []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        fp, fq = dot(normal, p) - offset, dot(normal, q) - offset
        if fp <= 0:
            out.append(p)
            out_labels.append(labels[i])
        if (fp <= 0) != (fq <= 0):
            t = fp / (fp - fq)
            out.append(PlanePoint(p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
            out_labels.append(label if fp <= 0 else labels[i])
    return out, out_labels


def voronoi_cell(surface: Surface, p: SurfacePoint) -> tuple[list[PlanePoint], list]:
    """Voronoi cell of the lift ``p.rep`` among all lifts of ``p``.

    Returns the polygon (counter-clockwise) and, per edge, the deck element
    whose site the edge bisects.  Vertices closer than ``tau_dist`` are merged.
    """
    o = p.rep
    R = diameter_bound(surface)
    sites = orbit(surface, p, o, 2.0 * R).points
    poly = [o + (-R, -R), o + (R, -R), o + (R, R), o + (-R, R)]
    labels = [None] * 4
    for s, g in sites:
        w = s - o
        if w.norm() <= surface.tau_dist:
            continue
        offset = dot(w, o) + w.norm2() / 2.0
        poly, labels = _clip(poly, labels, w, offset, g)
    tau = surface.tau_dist
    merged, merged_labels = [], []
    for pt, lab in zip(poly, labels):
        if merged and (pt - merged[-1]).norm() <= tau:
            merged_labels[-1] = lab
            continue
        merged.append(pt)
        merged_labels.append(lab)
    while len(merged) > 1 and (merged[0] - merged[-1]).norm() <= tau:
        merged.pop()
        merged_labels.pop()
    return merged, merged_labels


def _same_point(surface: Surface, x: SurfacePoint, y: SurfacePoint) -> bool:
    return distance(surface, x, y).distance <= 10 * surface.tau_dist


def cut_locus(surface: Surface, p: SurfacePoint) -> CutLocusGraph:
    """Cut locus of ``p`` as a graph.

    The boundary of the base lift's Voronoi cell is glued by the deck group:
    every cut-locus edge appears twice on it and every vertex once per
    incident edge end.  Vertex positions are snapped to the circumcenter
    formulas when they agree.
    """
    cell, labels = voronoi_cell(surface, p)
    if any(lab is None for lab in labels):
        raise RuntimeError("Voronoi cell not bounded by orbit sites; enlarge the search radius")
    candidates = [wrap(surface, c) for c in analytic_vertices(surface, p)]

    classes: list[SurfacePoint] = []
    corner_class = []
    corner_count: list[int] = []
    for c in cell:
        w = wrap(surface, c)
        for idx, rep in enumerate(classes):
            if _same_point(surface, w, rep):
                break
        else:
            idx = len(classes)
            classes.append(w)
            corner_count.append(0)
        corner_class.append(idx)
        corner_count[idx] += 1

    vertices = []
    for rep, deg in zip(classes, corner_count):
        for cand in candidates:
            if _same_point(surface, rep, cand):
                rep = cand
                break
        vertices.append(CutVertex(rep, deg, distance(surface, p, rep).distance))

    n = len(cell)
    used = [False] * n
    mids = [wrap(surface, (cell[i] + cell[(i + 1) % n]) * 0.5) for i in range(n)]
    edges = []
    for i in range(n):
        if used[i]:
            continue
        used[i] = True
        for j in range(i + 1, n):
            if not used[j] and _same_point(surface, mids[i], mids[j]):
                used[j] = True
                break
        else:
            raise RuntimeError("unpaired Voronoi cell edge")
        length = (cell[(i + 1) % n] - cell[i]).norm()
        edges.append(CutEdge(corner_class[i], corner_class[(i + 1) % n], length))
    return CutLocusGraph(vertices, edges, cell)
