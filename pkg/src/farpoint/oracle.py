"""Brute-force ground truth for the analytic cut-locus results.

Nothing here consults the circumcenter formulas: farthest points come from
maximizing the sampled distance field, Voronoi vertices from an
empty-circumdisk search, and the tile restriction claims from direct
nearest-site comparisons.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .orbit import distance, orbit, orbit_distances
from .surface import (
    PlanePoint,
    Surface,
    SurfacePoint,
    TorusSpec,
    cross,
    diameter_bound,
    wrap,
)

_ROW_CHUNK = 32


@dataclass(frozen=True)
class DistanceField:
    resolution: tuple[int, int]
    points: np.ndarray  # (nx, ny, 2) cell centres
    distances: np.ndarray  # (nx, ny)
    cell_diagonal: float


@dataclass(frozen=True)
class OracleFarthest:
    points: list[SurfacePoint]
    distance: float
    resolution_bound: float
    cluster_sizes: list[int] = field(default_factory=list)


def _grid(surface: Surface, resolution: tuple[int, int]):
    nx, ny = resolution
    s = (np.arange(nx) + 0.5) / nx
    t = (np.arange(ny) + 0.5) / ny
    S, T = np.meshgrid(s, t, indexing="ij")
    if isinstance(surface, TorusSpec):
        u, v = surface.u, surface.v
        pts = np.stack([S * u.x + T * v.x, S * u.y + T * v.y], axis=-1)
        du = np.array(u) / nx
        dv = np.array(v) / ny
        diag = max(np.hypot(*(du + dv)), np.hypot(*(du - dv)))
    else:
        pts = np.stack([S * surface.a, T * surface.b], axis=-1)
        diag = math.hypot(surface.a / nx, surface.b / ny)
    return pts, float(diag)


def distance_field(
    surface: Surface,
    p: SurfacePoint,
    resolution: tuple[int, int] = (512, 512),
    workers: int | None = None,
) -> DistanceField:
    """Intrinsic distance from ``p`` sampled at cell centres of the fundamental domain."""
    nx, ny = resolution
    if nx < 16 or ny < 16:
        raise ValueError("resolution must be at least 16 per axis")
    pts, diag = _grid(surface, (nx, ny))
    out = np.empty((nx, ny))
    chunks = [(i, min(i + _ROW_CHUNK, nx)) for i in range(0, nx, _ROW_CHUNK)]

    def work(bounds):
        lo, hi = bounds
        out[lo:hi] = orbit_distances(surface, p, pts[lo:hi])

    if workers == 1:
        for c in chunks:
            work(c)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(work, chunks))
    return DistanceField((nx, ny), pts, out, diag)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def _seam_pairs(surface: Surface, nx: int, ny: int):
    """Cell index pairs adjacent across the identified domain boundary."""
    for j in range(ny):
        for dj in (-1, 0, 1):
            if isinstance(surface, TorusSpec):
                yield (nx - 1, j), (0, (j + dj) % ny)
            else:
                # x = a glues to x = 0 through the glide reflection
                jj = ny - 1 - j + dj
                if 0 <= jj < ny:
                    yield (nx - 1, j), (0, jj)
    for i in range(nx):
        for di in (-1, 0, 1):
            ii = i + di
            if 0 <= ii < nx:
                yield (i, ny - 1), (ii, 0)
    if not isinstance(surface, TorusSpec):
        # corner cells meet across both seams at once
        yield (nx - 1, ny - 1), (0, ny - 1)
        yield (nx - 1, 0), (0, 0)


def cluster_cells(surface: Surface, mask: np.ndarray) -> np.ndarray:
    """Label 8-connected components of ``mask``, gluing across the domain seams.

    Labels are consecutive from 1, ordered by the first cell in row-major order.
    """
    nx, ny = mask.shape
    labels, count = ndimage.label(mask, structure=np.ones((3, 3), dtype=int))
    uf = _UnionFind(count + 1)
    for c1, c2 in _seam_pairs(surface, nx, ny):
        l1, l2 = labels[c1], labels[c2]
        if l1 and l2:
            uf.union(l1, l2)
    roots = np.array([uf.find(i) for i in range(count + 1)])
    merged = roots[labels]
    out = np.zeros_like(labels)
    seen: dict[int, int] = {}
    for flat in np.flatnonzero(merged):
        r = int(merged.flat[flat])
        if r not in seen:
            seen[r] = len(seen) + 1
    for r, new in seen.items():
        out[merged == r] = new
    return out


def _linked(surface: Surface, p: SurfacePoint, x: SurfacePoint, y: SurfacePoint,
            level: float, step: float) -> bool:
    """True if the straight segment from ``x`` to the nearest lift of ``y`` stays above ``level``."""
    lifts = orbit(surface, y, x.rep, diameter_bound(surface)).array()
    start = np.asarray(x.rep)
    end = lifts[np.argmin(np.hypot(*(lifts - start).T))]
    n = max(2, int(math.ceil(np.hypot(*(end - start)) / step)) + 1)
    seg = start + np.linspace(0.0, 1.0, n)[:, None] * (end - start)
    return bool(orbit_distances(surface, p, seg).min() >= level)


def grid_farthest(
    surface: Surface,
    p: SurfacePoint,
    resolution: tuple[int, int] = (512, 512),
    workers: int | None = None,
) -> OracleFarthest:
    """Farthest points of ``p`` found by exhaustive sampling.

    Cells within half a cell diagonal of the sampled maximum are grouped into
    8-connected clusters (glued across the domain seams), each represented by
    its best cell.  Clusters whose representatives are joined by a straight
    path staying within one cell diagonal of the maximum are then merged;
    this reunites pieces of a thin threshold set along a flat ridge.
    """
    field_ = distance_field(surface, p, resolution, workers)
    dist, diag = field_.distances, field_.cell_diagonal
    dmax = float(dist.max())
    # any true farthest point lies in a cell whose centre is within diag/2 of it
    threshold = dmax - 0.5 * diag * (1.0 + 1e-9)
    labels = cluster_cells(surface, dist >= threshold)
    clusters = []
    for lab in range(1, int(labels.max()) + 1):
        members = np.flatnonzero(labels == lab)
        best = members[np.argmax(dist.flat[members])]
        i, j = np.unravel_index(best, dist.shape)
        clusters.append((float(dist[i, j]), wrap(surface, field_.points[i, j]), int(members.size)))

    uf = _UnionFind(len(clusters))
    for i, j in itertools.combinations(range(len(clusters)), 2):
        if uf.find(i) != uf.find(j) and _linked(
            surface, p, clusters[i][1], clusters[j][1], dmax - diag, diag / 4.0
        ):
            uf.union(i, j)
    groups: dict[int, list[int]] = {}
    for i in range(len(clusters)):
        groups.setdefault(uf.find(i), []).append(i)
    reps, sizes = [], []
    for members in groups.values():
        best = max(members, key=lambda k: clusters[k][0])
        reps.append(clusters[best][1])
        sizes.append(sum(clusters[k][2] for k in members))
    return OracleFarthest(reps, dmax, 2.0 * diag, sizes)


def _circumcenter(p, q, r):
    A = 2.0 * np.array([[q[0] - p[0], q[1] - p[1]], [r[0] - p[0], r[1] - p[1]]])
    rhs = np.array([
        q[0] ** 2 - p[0] ** 2 + q[1] ** 2 - p[1] ** 2,
        r[0] ** 2 - p[0] ** 2 + r[1] ** 2 - p[1] ** 2,
    ])
    if abs(np.linalg.det(A)) < 1e-14 * max(1.0, float(np.abs(A).max()) ** 2):
        return None
    return np.linalg.solve(A, rhs)


def voronoi_vertex_oracle(sites, region, tol: float | None = None) -> list[tuple[PlanePoint, int]]:
    """Voronoi vertices of ``sites`` inside ``region = (xmin, ymin, xmax, ymax)``.

    Brute force over site triples with the empty-circumdisk test.
    """
    pts = np.asarray(sites, dtype=float)
    if len(pts) < 3:
        raise ValueError("need at least three sites")
    xmin, ymin, xmax, ymax = region
    if tol is None:
        tol = 1e-9 * float(np.ptp(pts, axis=0).sum() or 1.0)
    found: list[tuple[PlanePoint, int]] = []
    for i, j, k in itertools.combinations(range(len(pts)), 3):
        c = _circumcenter(pts[i], pts[j], pts[k])
        if c is None:
            continue
        if not (xmin - tol <= c[0] <= xmax + tol and ymin - tol <= c[1] <= ymax + tol):
            continue
        r = np.hypot(*(pts[i] - c))
        d = np.hypot(pts[:, 0] - c[0], pts[:, 1] - c[1])
        if np.any(d < r - tol):
            continue
        if any(math.hypot(c[0] - q.x, c[1] - q.y) <= tol for q, _ in found):
            continue
        found.append((PlanePoint(float(c[0]), float(c[1])), int(np.sum(np.abs(d - r) <= tol))))
    found.sort(key=lambda item: (item[0].y, item[0].x))
    return found


@dataclass(frozen=True)
class RestrictionReport:
    passed: bool
    n_samples: int
    counterexamples: list[PlanePoint]
    tile: list[PlanePoint]


def _tile(surface: Surface, p: SurfacePoint) -> tuple[list[PlanePoint], SurfacePoint]:
    """Tile vertices (in convex order) and a point whose orbit they belong to."""
    if isinstance(surface, TorusSpec):
        o = p.rep
        u, v = surface.u, surface.v
        return [o, o + u, o + u + v, o + v], p
    a, b = surface.a, surface.b
    y = p.rep.y
    xi = min(abs(y - n * b / 2.0) for n in range(3))
    p0 = PlanePoint(0.0, -xi)
    kite = [p0, PlanePoint(a, xi), PlanePoint(0.0, b - xi), PlanePoint(-a, xi)]
    return kite, wrap(surface, p0)


def _sample_convex(poly: list[PlanePoint], n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform samples in a convex polygon by fan triangulation."""
    P = np.asarray(poly, dtype=float)
    tris = [(P[0], P[i], P[i + 1]) for i in range(1, len(P) - 1)]
    areas = np.array([abs(cross(b - a, c - a)) / 2.0 for a, b, c in tris])
    which = rng.choice(len(tris), size=n, p=areas / areas.sum())
    r1, r2 = rng.random(n), rng.random(n)
    flip = r1 + r2 > 1.0
    r1[flip], r2[flip] = 1.0 - r1[flip], 1.0 - r2[flip]
    A = np.array([tris[w][0] for w in which])
    B = np.array([tris[w][1] for w in which])
    C = np.array([tris[w][2] for w in which])
    return A + r1[:, None] * (B - A) + r2[:, None] * (C - A)


def restriction_check(
    surface: Surface,
    p: SurfacePoint,
    n_samples: int = 10_000,
    seed: int | None = 0,
) -> RestrictionReport:
    """Check that the tile's four vertices are always among the nearest sites.

    For random points ``x`` of the tile (parallelogram for a torus, kite for a
    Klein bottle), the nearest of the four tile vertices must be as close as
    the nearest lift of ``p`` overall, searched within ``3 (a + b)``.
    """
    rng = np.random.default_rng(seed)
    tile, base = _tile(surface, p)
    xs = _sample_convex(tile, n_samples, rng)
    centre = np.mean(np.asarray(tile), axis=0)
    sites = orbit(surface, base, centre, 3.0 * diameter_bound(surface)).array()
    T = np.asarray(tile)
    tile_d2 = ((xs[:, None, :] - T[None, :, :]) ** 2).sum(-1).min(axis=1)
    all_d2 = np.full(n_samples, np.inf)
    for s in sites:
        np.minimum(all_d2, ((xs - s) ** 2).sum(-1), out=all_d2)
    # squared-distance slack corresponding to tau_dist on the distance
    tau = surface.tau_dist
    slack = 2.0 * np.sqrt(all_d2) * tau + tau * tau
    bad = tile_d2 > all_d2 + slack
    cex = [PlanePoint(float(x), float(y)) for x, y in xs[bad]]
    return RestrictionReport(not cex, n_samples, cex, tile)


def surface_gap(surface: Surface, x: SurfacePoint, y: SurfacePoint) -> float:
    """Intrinsic distance between two surface points."""
    return distance(surface, x, y).distance


def match_points(surface: Surface, found: list[SurfacePoint], expected: list[SurfacePoint], tol: float) -> bool:
    """True when ``found`` and ``expected`` pair up one-to-one within ``tol``."""
    if len(found) != len(expected):
        return False
    remaining = list(expected)
    for f in found:
        gaps = [surface_gap(surface, f, e) for e in remaining]
        k = int(np.argmin(gaps))
        if gaps[k] > tol:
            return False
        remaining.pop(k)
    return True


__all__ = [
    "DistanceField",
    "OracleFarthest",
    "RestrictionReport",
    "distance_field",
    "grid_farthest",
    "voronoi_vertex_oracle",
    "restriction_check",
    "match_points",
]
