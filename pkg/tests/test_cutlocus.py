import math

import numpy as np
import pytest

from farpoint.cutlocus import (
    KleinCase,
    LambdaOutOfRange,
    cut_locus,
    delta_negative_gap,
    farthest_points,
    klein_cut_data,
    klein_lambda0,
    torus_cut_data,
)
from farpoint.orbit import distance
from farpoint.oracle import voronoi_vertex_oracle
from farpoint.surface import PlanePoint, make_klein_spec, make_torus_spec, wrap

from conftest import random_klein, random_torus

SQRT3 = math.sqrt(3)


def _d2(p, q):
    return (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2


def _equidistant(c, pts, tol):
    d = [math.dist(c, q) for q in pts]
    return max(d) - min(d) <= tol


# --- torus -----------------------------------------------------------------

def test_torus_cut_data_square(square):
    data = torus_cut_data(square, wrap(square, (0, 0)))
    assert data.degenerate
    assert data.c1 == pytest.approx((0.5, 0.5))
    assert data.c2 == pytest.approx((0.5, 0.5))


def test_torus_cut_data_hexagonal(hexagonal):
    data = torus_cut_data(hexagonal, wrap(hexagonal, (0, 0)))
    assert not data.degenerate
    assert data.c1 == pytest.approx((0.5, SQRT3 / 6))
    assert data.c2 == pytest.approx((1.0, 1 / SQRT3))
    # oracle: the brute-force Voronoi vertices of the tile corners
    u, v, h = hexagonal.u, hexagonal.v, hexagonal.h
    verts = voronoi_vertex_oracle([(0, 0), u, v, h], (-0.1, -0.1, 1.6, 1.0))
    got = sorted((round(p.x, 9), round(p.y, 9), d) for p, d in verts)
    assert got == [(0.5, round(SQRT3 / 6, 9), 3), (1.0, round(1 / SQRT3, 9), 3)]


def test_torus_cut_data_translates_with_p(hexagonal):
    d0 = torus_cut_data(hexagonal, wrap(hexagonal, (0, 0)))
    p = wrap(hexagonal, (0.3, 0.2))
    d1 = torus_cut_data(hexagonal, p)
    assert d1.c1 == pytest.approx(d0.c1 + p.rep)
    assert d1.c2 == pytest.approx(d0.c2 + p.rep)


def test_torus_circumcenters_equidistant(rng):
    for _ in range(100):
        spec = random_torus(rng, ratio=(1.0, 4.0))
        data = torus_cut_data(spec, wrap(spec, (0, 0)))
        u, v, h = spec.u, spec.v, spec.h
        assert _equidistant(data.c1, [(0, 0), u, v], spec.tau_dist)
        assert _equidistant(data.c2, [u, v, h], spec.tau_dist)


# --- Klein -----------------------------------------------------------------

def test_klein_cut_data_k11_quarter():
    data = klein_cut_data(make_klein_spec(1, 1), 0.25)
    assert data.delta == pytest.approx(0.8125)
    assert data.c_plus == pytest.approx((0.40625, 0.375))
    assert data.c_minus == pytest.approx((-0.40625, 0.375))
    assert data.case is KleinCase.DELTA_POSITIVE
    assert _equidistant(data.c_plus, [(0, -0.125), (0, 0.875), (1, 0.125)], 1e-12)


def test_klein_cut_data_k14_quarter():
    data = klein_cut_data(make_klein_spec(1, 4), 0.25)
    assert data.delta == pytest.approx(-2)
    assert data.c1 == pytest.approx((0, 11 / 6))
    assert data.case is KleinCase.DELTA_NEGATIVE_INTERIOR


def test_klein_cut_data_delta_zero():
    spec = make_klein_spec(1, 4)
    lam0 = klein_lambda0(spec)
    assert lam0 == pytest.approx(0.5 - SQRT3 / 4)
    data = klein_cut_data(spec, lam0)
    assert data.case is KleinCase.DELTA_ZERO
    for c in (data.c_minus, data.c0, data.c1):
        assert c == pytest.approx(data.c_plus, abs=1e-12)


def test_klein_lambda0_absent_for_short_bottles():
    assert klein_lambda0(make_klein_spec(1, 1)) is None
    assert klein_lambda0(make_klein_spec(1, 2)) == 0.5


def test_klein_lambda_out_of_range():
    with pytest.raises(LambdaOutOfRange):
        klein_cut_data(make_klein_spec(1, 1), 0.6)


def test_klein_centres_are_circumcentres(rng):
    for _ in range(200):
        spec = random_klein(rng)
        lam = rng.uniform(1e-3, 0.5)
        d = klein_cut_data(spec, lam)
        tol = 1e-9 * (spec.a + spec.b) * 10
        assert _equidistant(d.c_plus, [d.p0, d.v, d.h_plus], tol)
        assert _equidistant(d.c_minus, [d.p0, d.v, d.h_minus], tol)
        assert _equidistant(d.c0, [d.p0, d.h_plus, d.h_minus], tol)
        assert _equidistant(d.c1, [d.v, d.h_plus, d.h_minus], tol)


def test_short_bottles_never_have_negative_delta(rng):
    for _ in range(500):
        a = rng.uniform(0.5, 2)
        spec = make_klein_spec(a, a * rng.uniform(0.1, 1.999))
        d = klein_cut_data(spec, rng.uniform(1e-6, 0.5))
        assert d.case is KleinCase.DELTA_POSITIVE


def test_delta_negative_gap_sign(rng):
    for _ in range(200):
        spec = make_klein_spec(1, rng.uniform(2.1, 8))
        lam0 = klein_lambda0(spec)
        lam = rng.uniform(lam0 + 1e-3, 0.5)
        assert delta_negative_gap(spec, lam) < 0
    spec = make_klein_spec(1, 4)
    assert delta_negative_gap(spec, 0.5) == 0


# --- graphs and farthest sets ---------------------------------------------

def _check_graph(surface, p, graph):
    assert len(graph.vertices) - len(graph.edges) == -1
    assert sum(v.degree for v in graph.vertices) == 2 * len(graph.edges)
    for v in graph.vertices:
        r = distance(surface, p, v.point)
        assert r.distance == pytest.approx(v.distance, abs=surface.tau_dist)
        assert r.n_segments == v.degree


def test_cut_locus_square(square):
    p = wrap(square, (0, 0))
    g = cut_locus(square, p)
    assert [(v.point.rep, v.degree) for v in g.vertices] == [(pytest.approx((0.5, 0.5)), 4)]
    assert sorted(e.length for e in g.edges) == pytest.approx([1, 1])
    assert all(e.start == e.end == 0 for e in g.edges)
    _check_graph(square, p, g)


def test_cut_locus_hexagonal(hexagonal):
    p = wrap(hexagonal, (0, 0))
    g = cut_locus(hexagonal, p)
    assert sorted(v.degree for v in g.vertices) == [3, 3]
    assert [e.length for e in g.edges] == pytest.approx([1 / SQRT3] * 3)
    assert all(e.start != e.end for e in g.edges)
    _check_graph(hexagonal, p, g)


def test_cut_locus_klein_delta_negative():
    spec = make_klein_spec(1, 4)
    p = wrap(spec, (0, -0.5))  # lambda = 1/4
    g = cut_locus(spec, p)
    assert sorted(v.degree for v in g.vertices) == [3, 3]
    assert len(g.edges) == 3
    reps = sorted(round(v.point.rep.y, 9) for v in g.vertices)
    d = klein_cut_data(spec, 0.25)
    # c1 = (0, 11/6) and c0 in the canonical frame; p0 = (0, -1/2) is the lift here
    assert reps == sorted(round(c.y, 9) for c in (d.c0, d.c1))
    _check_graph(spec, p, g)


def test_farthest_square_any_point(square, rng):
    for _ in range(10):
        x = rng.uniform(-2, 2, 2)
        p = wrap(square, x)
        rep = farthest_points(square, p)
        assert len(rep.points) == 1
        f = rep.points[0]
        assert f.n_segments == 4
        assert f.distance == pytest.approx(math.sqrt(2) / 2, abs=1e-12)
        assert distance(square, f.point, wrap(square, x + 0.5)).distance < 1e-9


def test_farthest_hexagonal(hexagonal):
    rep = farthest_points(hexagonal, wrap(hexagonal, (0, 0)))
    assert [f.n_segments for f in rep.points] == [3, 3]
    assert [f.distance for f in rep.points] == pytest.approx([1 / SQRT3] * 2)


@pytest.mark.parametrize(
    "b, y, case, count, segs",
    [
        (2, -0.5, KleinCase.DELTA_ZERO, 1, 4),  # b = 2a, lambda = 1/2
        (4, -0.5, KleinCase.DELTA_NEGATIVE_INTERIOR, 1, 3),  # lambda = 1/4
        (4, -1.0, KleinCase.DELTA_NEGATIVE_HALF, 2, 3),  # lambda = 1/2
        (1, -0.125, KleinCase.DELTA_POSITIVE, 2, 3),
        (3, 0.0, KleinCase.LAMBDA_ZERO, 1, 4),
    ],
)
def test_farthest_klein_cases(b, y, case, count, segs):
    spec = make_klein_spec(1, b)
    p = wrap(spec, (0.25, y))
    rep = farthest_points(spec, p)
    assert rep.case == case.value
    assert len(rep.points) == count
    assert all(f.n_segments == segs for f in rep.points)
    for f in rep.points:
        r = distance(spec, p, f.point)
        assert r.distance == pytest.approx(f.distance, abs=spec.tau_dist)
        assert r.n_segments == segs


def test_farthest_k14_quarter_canonical_point():
    spec = make_klein_spec(1, 4)
    rep = farthest_points(spec, wrap(spec, (0, -0.5)))
    assert rep.klein.c1 == pytest.approx((0, 11 / 6))
    (f,) = rep.points
    assert rep.canonical.frame.invert(f.lift) == pytest.approx((0, 11 / 6))


def test_mirror_symmetry_delta_positive(rng):
    for _ in range(100):
        spec = random_klein(rng)
        d = klein_cut_data(spec, rng.uniform(1e-3, 0.5))
        assert _d2(d.p0, d.c_plus) == _d2(d.p0, d.c_minus)


@pytest.mark.parametrize("seed", range(4))
def test_farthest_points_are_cut_vertices(seed):
    rng = np.random.default_rng(seed)
    surfaces = [random_torus(rng), random_klein(rng), make_klein_spec(1, 4), make_klein_spec(1, 2)]
    for s in surfaces:
        for _ in range(5):
            p = wrap(s, rng.uniform(-3, 3, 2))
            g = cut_locus(s, p)
            _check_graph(s, p, g)
            rep = farthest_points(s, p)
            for f in rep.points:
                matches = [v for v in g.vertices if distance(s, v.point, f.point).distance < 1e-8]
                assert len(matches) == 1
                assert matches[0].degree == f.n_segments
                assert matches[0].distance == pytest.approx(f.distance, abs=s.tau_dist)
            # nothing on the cut locus is farther than the reported radius
            assert max(v.distance for v in g.vertices) <= rep.radius + s.tau_dist
