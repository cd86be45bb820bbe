"""Plane points, flat surface specifications and their deck groups.

A flat torus ``T(a, b, alpha)`` is the plane modulo the lattice spanned by
``u = (a, 0)`` and ``v = (b cos alpha, b sin alpha)``.  A flat Klein bottle
``K(a, b)`` is the plane modulo the group generated by the vertical
translation ``t: (x, y) -> (x, y + b)`` and the glide reflection
``g: (x, y) -> (x + a, -y)`` whose axis is the x-axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

DEFAULT_RTOL = 1e-9

# Absolute tolerances used by the case classifiers.
TAU_LAMBDA = 1e-12
TAU_ANGLE = 1e-12


class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class NonPositiveSide(GeometryError):
    pass


class AngleOutOfRange(GeometryError):
    pass


class NotCanonical(GeometryError):
    pass


class DegenerateBasis(GeometryError):
    pass


class PlanePoint(NamedTuple):
    x: float
    y: float

    def __add__(self, other):
        return PlanePoint(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return PlanePoint(self.x - other[0], self.y - other[1])

    def __mul__(self, c):
        return PlanePoint(self.x * c, self.y * c)

    __rmul__ = __mul__

    def __neg__(self):
        return PlanePoint(-self.x, -self.y)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def norm2(self) -> float:
        return self.x * self.x + self.y * self.y


def cross(p, q) -> float:
    return p[0] * q[1] - p[1] * q[0]


def dot(p, q) -> float:
    return p[0] * q[0] + p[1] * q[1]


@dataclass(frozen=True)
class TorusSpec:
    """Canonical flat torus with ``2 b cos(alpha) <= a <= b``."""

    a: float
    b: float
    alpha: float
    rtol: float = DEFAULT_RTOL

    @property
    def u(self) -> PlanePoint:
        return PlanePoint(self.a, 0.0)

    @property
    def v(self) -> PlanePoint:
        return PlanePoint(self.b * math.cos(self.alpha), self.b * math.sin(self.alpha))

    @property
    def h(self) -> PlanePoint:
        return self.u + self.v

    @property
    def area(self) -> float:
        return self.a * self.b * math.sin(self.alpha)

    @property
    def tau_param(self) -> float:
        return self.rtol * max(self.a, self.b)

    @property
    def tau_dist(self) -> float:
        return self.rtol * (self.a + self.b)

    @property
    def kind(self) -> str:
        return "torus"


@dataclass(frozen=True)
class KleinSpec:
    """Flat Klein bottle built on an ``a x b`` rectangle."""

    a: float
    b: float
    rtol: float = DEFAULT_RTOL

    @property
    def area(self) -> float:
        return self.a * self.b

    @property
    def tau_param(self) -> float:
        return self.rtol * max(self.a, self.b)

    @property
    def tau_dist(self) -> float:
        return self.rtol * (self.a + self.b)

    @property
    def kind(self) -> str:
        return "klein"


Surface = Union[TorusSpec, KleinSpec]


class DeckElement(NamedTuple):
    """Deck transformation as an integer pair.

    Torus: ``(m, n)`` is the translation by ``m u + n v``.
    Klein: ``(k, n)`` is ``t^n o g^k``, i.e. ``(x, y) -> (x + k a, (-1)^k y + n b)``.
    """

    k: int
    n: int


@dataclass(frozen=True)
class SurfacePoint:
    surface: Surface
    rep: PlanePoint


def _check_sides(a: float, b: float) -> None:
    for name, value in (("a", a), ("b", b)):
        if not math.isfinite(value) or value <= 0:
            raise NonPositiveSide(f"side {name} must be a positive finite length, got {value!r}")


def make_torus_spec(a: float, b: float, alpha: float, rtol: float = DEFAULT_RTOL) -> TorusSpec:
    """Validate ``(a, b, alpha)`` against the canonical torus inequalities."""
    a, b, alpha = float(a), float(b), float(alpha)
    _check_sides(a, b)
    if not (math.isfinite(alpha) and 0.0 < alpha <= math.pi / 2 + TAU_ANGLE):
        raise AngleOutOfRange(f"alpha must lie in (0, pi/2], got {alpha!r}")
    alpha = min(alpha, math.pi / 2)
    tol = rtol * max(a, b)
    if a * math.sin(alpha) * b <= tol * max(a, b):
        raise DegenerateBasis("parallelogram has (numerically) zero area")
    if a > b + tol:
        raise NotCanonical(
            f"need a <= b, got a={a!r} > b={b!r}; use reduce_basis (CLI: `reduce`) "
            "to obtain the canonical presentation"
        )
    if 2.0 * b * math.cos(alpha) > a + tol:
        raise NotCanonical(
            f"need 2 b cos(alpha) <= a, got 2 b cos(alpha)={2 * b * math.cos(alpha)!r} > a={a!r}; "
            "use reduce_basis (CLI: `reduce`) to obtain the canonical presentation"
        )
    return TorusSpec(a, b, alpha, rtol)


def make_klein_spec(a: float, b: float, rtol: float = DEFAULT_RTOL) -> KleinSpec:
    a, b = float(a), float(b)
    _check_sides(a, b)
    return KleinSpec(a, b, rtol)


def deck_apply(surface: Surface, g: DeckElement, p) -> PlanePoint:
    k, n = g
    if isinstance(surface, TorusSpec):
        u, v = surface.u, surface.v
        return PlanePoint(p[0] + k * u.x + n * v.x, p[1] + k * u.y + n * v.y)
    sign = -1.0 if k % 2 else 1.0
    return PlanePoint(p[0] + k * surface.a, sign * p[1] + n * surface.b)


def deck_compose(surface: Surface, g: DeckElement, h: DeckElement) -> DeckElement:
    """Element acting as ``g`` after ``h``."""
    if isinstance(surface, TorusSpec):
        return DeckElement(g.k + h.k, g.n + h.n)
    sign = -1 if g.k % 2 else 1
    return DeckElement(g.k + h.k, sign * h.n + g.n)


def deck_inverse(surface: Surface, g: DeckElement) -> DeckElement:
    if isinstance(surface, TorusSpec):
        return DeckElement(-g.k, -g.n)
    sign = -1 if g.k % 2 else 1
    return DeckElement(-g.k, -sign * g.n)


def lattice_coords(spec: TorusSpec, p) -> tuple[float, float]:
    """Coordinates ``(s, t)`` with ``p = s u + t v``."""
    u, v = spec.u, spec.v
    det = cross(u, v)
    return cross(p, v) / det, cross(u, p) / det


def _unit_floor(s: float) -> tuple[int, float]:
    m = math.floor(s)
    r = s - m
    if r >= 1.0:
        m, r = m + 1, 0.0
    return m, r


def wrap(surface: Surface, p) -> SurfacePoint:
    """Canonical representative of ``p`` in the half-open fundamental domain."""
    p = PlanePoint(float(p[0]), float(p[1]))
    if isinstance(surface, TorusSpec):
        s, t = lattice_coords(surface, p)
        if 0.0 <= s < 1.0 and 0.0 <= t < 1.0:
            return SurfacePoint(surface, p)
        m, _ = _unit_floor(s)
        n, _ = _unit_floor(t)
        q = deck_apply(surface, DeckElement(-m, -n), p)
        # round-off can push the image just outside the domain
        s, t = lattice_coords(surface, q)
        if not (0.0 <= s < 1.0 and 0.0 <= t < 1.0):
            s = min(max(s, 0.0), math.nextafter(1.0, 0.0))
            t = min(max(t, 0.0), math.nextafter(1.0, 0.0))
            u, v = surface.u, surface.v
            q = PlanePoint(s * u.x + t * v.x, s * u.y + t * v.y)
        return SurfacePoint(surface, q)

    a, b = surface.a, surface.b
    x, y = p
    if 0.0 <= x < a and 0.0 <= y < b:
        return SurfacePoint(surface, p)
    k, _ = _unit_floor(x / a)
    x = x - k * a
    if k % 2:
        y = -y
    n, _ = _unit_floor(y / b)
    y = y - n * b
    x = min(max(x, 0.0), math.nextafter(a, 0.0))
    y = min(max(y, 0.0), math.nextafter(b, 0.0))
    return SurfacePoint(surface, PlanePoint(x, y))


def point(surface: Surface, x: float, y: float) -> SurfacePoint:
    return wrap(surface, (x, y))


def fundamental_domain(surface: Surface) -> np.ndarray:
    """Corners of the fundamental domain, counter-clockwise."""
    if isinstance(surface, TorusSpec):
        u, v = surface.u, surface.v
        return np.array([(0.0, 0.0), tuple(u), tuple(u + v), tuple(v)])
    a, b = surface.a, surface.b
    return np.array([(0.0, 0.0), (a, 0.0), (a, b), (0.0, b)])


def diameter_bound(surface: Surface) -> float:
    """Upper bound on the intrinsic diameter."""
    return surface.a + surface.b
