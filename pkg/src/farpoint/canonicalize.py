"""Reduction of lattice bases and Klein-bottle points to canonical form."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .surface import (
    DEFAULT_RTOL,
    DegenerateBasis,
    KleinSpec,
    PlanePoint,
    SurfacePoint,
    TorusSpec,
    cross,
    dot,
    make_torus_spec,
)

_MAX_ITER = 10_000


@dataclass(frozen=True)
class ReductionResult:
    """Outcome of :func:`reduce_basis`.

    ``change_of_basis`` is the unimodular integer matrix ``M`` with
    ``M @ [u; v]`` equal to the reduced basis before the sign flips recorded
    in ``sign_flips`` are applied.  ``basis`` holds the final reduced
    vectors (as rows) in the input frame; ``spec`` is their canonical
    presentation, which differs from ``basis`` by a plane isometry.
    """

    spec: TorusSpec
    change_of_basis: np.ndarray
    sign_flips: tuple[bool, bool]
    basis: np.ndarray


def reduce_basis(u, v, rtol: float = DEFAULT_RTOL) -> ReductionResult:
    """Lagrange-Gauss reduction of the lattice ``Zu + Zv``.

    The result satisfies ``2 b cos(alpha) <= a <= b`` and spans the same
    lattice as the input.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    nu, nv = math.hypot(*u), math.hypot(*v)
    if nu == 0 or nv == 0 or abs(cross(u, v)) <= rtol * nu * nv:
        raise DegenerateBasis("basis vectors are (numerically) collinear")

    M = np.eye(2, dtype=np.int64)
    for _ in range(_MAX_ITER):
        # near-ties keep the current order
        if dot(v, v) < dot(u, u) * (1.0 - 1e-12):
            u, v = v, u
            M = M[::-1].copy()
        ratio = dot(u, v) / dot(u, u)
        if abs(ratio) <= 0.5 * (1.0 + 1e-12):
            break
        mu = int(round(ratio))
        v = v - mu * u
        M[1] -= mu * M[0]
    else:  # pragma: no cover
        raise RuntimeError("lattice reduction did not converge")

    flip_v = dot(u, v) < 0
    if flip_v:
        v = -v
    a, b = math.hypot(*u), math.hypot(*v)
    alpha = math.atan2(abs(cross(u, v)), dot(u, v))
    spec = make_torus_spec(a, b, alpha, rtol)
    return ReductionResult(spec, M, (False, bool(flip_v)), np.array([u, v]))


def same_lattice(basis_a, basis_b, tol: float = 1e-9) -> bool:
    """True when each vector of ``basis_a`` has integer coordinates in ``basis_b``."""
    A = np.asarray(basis_a, dtype=float)
    B = np.asarray(basis_b, dtype=float)
    coeffs = np.linalg.solve(B.T, A.T).T
    if np.max(np.abs(coeffs - np.round(coeffs))) > tol * max(1.0, np.max(np.abs(coeffs))):
        return False
    return abs(abs(round(np.linalg.det(np.round(coeffs)))) - 1) == 0


@dataclass(frozen=True)
class KleinFrame:
    """Plane isometry ``(X, Y) -> (X + x_offset, flip * Y + y_shift)``.

    It maps the canonical lift ``(0, -xi)`` of a Klein-bottle point to a lift
    of the original point.  ``y_shift`` is a multiple of ``b/2``, so the map
    normalizes the deck group and descends to an isometry of the surface.
    """

    x_offset: float
    y_shift: float
    flip: int

    def apply(self, p) -> PlanePoint:
        return PlanePoint(p[0] + self.x_offset, self.flip * p[1] + self.y_shift)

    def invert(self, p) -> PlanePoint:
        return PlanePoint(p[0] - self.x_offset, self.flip * (p[1] - self.y_shift))


@dataclass(frozen=True)
class KleinCanonicalPoint:
    xi: float
    lam: float
    frame: KleinFrame

    @property
    def p0(self) -> PlanePoint:
        return PlanePoint(0.0, -self.xi)

    @property
    def x_offset(self) -> float:
        return self.frame.x_offset


def klein_canonicalize(spec: KleinSpec, p: SurfacePoint) -> KleinCanonicalPoint:
    """Distance of ``p`` to the nearest main geodesic and the frame realizing it."""
    b = spec.b
    x, y = p.rep
    half = b / 2.0
    # ties at y = b/4 (mod b/2) go to the geodesic below
    n = math.ceil(y / half - 0.5)
    d = y - n * half
    xi = min(abs(d), b / 4.0)
    flip = -1 if d > 0 else 1
    frame = KleinFrame(x, n * half, flip)
    return KleinCanonicalPoint(xi, 2.0 * xi / b, frame)
