"""Orbits of the deck group and the intrinsic distance they induce."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .surface import (
    DeckElement,
    PlanePoint,
    Surface,
    SurfacePoint,
    TorusSpec,
    cross,
    diameter_bound,
)

MAX_ORBIT_POINTS = 10**6

# Minimizers within LOW_CONFIDENCE_FACTOR * tau_dist (but outside tau_dist)
# flag a near-coincidence.
LOW_CONFIDENCE_FACTOR = 100.0


class RadiusTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class OrbitSet:
    center: PlanePoint
    radius: float
    points: list[tuple[PlanePoint, DeckElement]]

    def __len__(self) -> int:
        return len(self.points)

    def array(self) -> np.ndarray:
        if not self.points:
            return np.empty((0, 2))
        return np.array([pt for pt, _ in self.points], dtype=float)


@dataclass(frozen=True)
class DistanceResult:
    distance: float
    n_segments: int
    directions: list[PlanePoint] = field(default_factory=list)
    low_confidence: bool = False


def _index_ranges(surface: Surface, base, center, radius: float):
    """Integer index ranges guaranteed to cover every lift within ``radius``."""
    if isinstance(surface, TorusSpec):
        u, v = surface.u, surface.v
        det = cross(u, v)
        w = (center[0] - base[0], center[1] - base[1])
        s_c, t_c = cross(w, v) / det, cross(u, w) / det
        ds = radius * math.hypot(*v) / abs(det)
        dt = radius * math.hypot(*u) / abs(det)
        ks = range(math.floor(s_c - ds) - 2, math.ceil(s_c + ds) + 3)
        ns = range(math.floor(t_c - dt) - 2, math.ceil(t_c + dt) + 3)
        return ks, ns
    a, b = surface.a, surface.b
    ks = range(math.floor((center[0] - radius - base[0]) / a) - 2,
               math.ceil((center[0] + radius - base[0]) / a) + 3)
    lo = min(center[1] - radius - base[1], center[1] - radius + base[1])
    hi = max(center[1] + radius - base[1], center[1] + radius + base[1])
    ns = range(math.floor(lo / b) - 2, math.ceil(hi / b) + 3)
    return ks, ns


def _lift_grid(surface: Surface, base, ks: range, ns: range):
    K, N = np.meshgrid(np.arange(ks.start, ks.stop), np.arange(ns.start, ns.stop), indexing="ij")
    K, N = K.ravel(), N.ravel()
    if isinstance(surface, TorusSpec):
        u, v = surface.u, surface.v
        X = base[0] + K * u.x + N * v.x
        Y = base[1] + K * u.y + N * v.y
    else:
        sign = np.where(K % 2 == 0, 1.0, -1.0)
        X = base[0] + K * surface.a
        Y = sign * base[1] + N * surface.b
    return K, N, X, Y


def orbit(
    surface: Surface,
    p: SurfacePoint,
    center,
    radius: float,
    max_points: int = MAX_ORBIT_POINTS,
) -> OrbitSet:
    """All lifts of ``p`` within ``radius`` of ``center``.

    Sorted by distance to ``center``, then by polar angle around it.
    """
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius!r}")
    center = PlanePoint(float(center[0]), float(center[1]))
    base = p.rep
    ks, ns = _index_ranges(surface, base, center, radius)
    if len(ks) * len(ns) > max_points:
        raise RadiusTooLarge(
            f"orbit enumeration over {len(ks)} x {len(ns)} indices exceeds the cap of {max_points}"
        )
    K, N, X, Y = _lift_grid(surface, base, ks, ns)
    dx, dy = X - center.x, Y - center.y
    d = np.hypot(dx, dy)
    keep = d <= radius
    K, N, X, Y, d = K[keep], N[keep], X[keep], Y[keep], d[keep]
    ang = np.arctan2(dy[keep], dx[keep])
    order = np.lexsort((ang, d))
    pts = [
        (PlanePoint(float(X[i]), float(Y[i])), DeckElement(int(K[i]), int(N[i])))
        for i in order
    ]
    return OrbitSet(center, float(radius), pts)


def distance(surface: Surface, p: SurfacePoint, q: SurfacePoint) -> DistanceResult:
    """Intrinsic distance from ``p`` to ``q`` with segment multiplicity.

    ``directions`` are the initial unit directions of the segments at the
    lift ``p.rep``.
    """
    if p.surface != surface or q.surface != surface:
        raise ValueError("points do not belong to the given surface")
    tau = surface.tau_dist
    lifts = orbit(surface, q, p.rep, diameter_bound(surface)).array()
    diff = lifts - np.asarray(p.rep)
    d = np.hypot(diff[:, 0], diff[:, 1])
    dmin = float(d.min())
    if dmin <= tau:
        return DistanceResult(0.0, 1, [], False)
    near = d <= dmin + tau
    low = bool(np.any((d > dmin + tau) & (d <= dmin + LOW_CONFIDENCE_FACTOR * tau)))
    dirs = [PlanePoint(float(x / r), float(y / r)) for (x, y), r in zip(diff[near], d[near])]
    return DistanceResult(dmin, int(near.sum()), dirs, low)


def orbit_distances(surface: Surface, p: SurfacePoint, xy: np.ndarray) -> np.ndarray:
    """Vectorized intrinsic distance from ``p`` to each plane point in ``xy``.

    ``xy`` has shape ``(..., 2)``; points need not be wrapped.
    """
    xy = np.asarray(xy, dtype=float)
    flat = xy.reshape(-1, 2)
    if flat.shape[0] == 0:
        return np.empty(xy.shape[:-1])
    lo, hi = flat.min(axis=0), flat.max(axis=0)
    center = (lo + hi) / 2.0
    reach = float(np.hypot(*(hi - lo))) / 2.0 + diameter_bound(surface)
    lifts = orbit(surface, p, center, reach).array()
    best = np.full(flat.shape[0], np.inf)
    for lx, ly in lifts:
        np.minimum(best, (flat[:, 0] - lx) ** 2 + (flat[:, 1] - ly) ** 2, out=best)
    return np.sqrt(best).reshape(xy.shape[:-1])
