import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slembed.errors import RayUnbounded
from slembed.polytope.hpoly import (INFEASIBLE, UNBOUNDED, AffineForm, HPolytope, affine_dimension,
                                    canonical_direction, centroid, feasible_interior, is_bounded,
                                    lp_extremum, radial_chart, radial_to_boundary, triangulate,
                                    unbounded_directions, vertices, volume)
from slembed.polytope.volume import VolumeSystem, build_system, star_kernel, triangle_form

H = F(1, 2)


def square():
    # x >= 0, 1 - x >= 0, y >= 0, 1 - y >= 0
    return HPolytope.of([((1, 0), 0), ((-1, 0), 1), ((0, 1), 0), ((0, -1), 1)])


def simplex():
    return HPolytope.of([((1, 0), 0), ((0, 1), 0), ((-1, -1), 1)])


def forms_set(P):
    return {(f.coeffs, f.const) for f in P.forms}


def test_feasible_interior_examples():
    z = feasible_interior(square())
    assert square().strictly_contains(z)
    assert feasible_interior(HPolytope.of([((1,), 0), ((-1,), -1)])) is INFEASIBLE
    ray = HPolytope.of([((1,), 0)])
    assert ray.strictly_contains(feasible_interior(ray))


def test_lp_extremum_examples():
    assert lp_extremum(square(), (0, 1)) == 1
    assert lp_extremum(HPolytope.of([((1,), 0)]), (1,)) is UNBOUNDED
    tent_y = HPolytope.of([((-2,), 1), ((1,), 3)])  # y <= 1/2
    assert lp_extremum(tent_y, (1,)) == H


def test_vertices_examples():
    assert sorted(vertices(square())) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert len(vertices(simplex())) == 3
    interval = HPolytope.of([((1,), 0), ((-1,), 1)])
    assert sorted(vertices(interval)) == [(0,), (1,)]


def test_centroid_examples():
    assert centroid(square()) == (H, H)
    assert centroid(simplex()) == (F(1, 3), F(1, 3))


def test_centroid_independent_of_cone_apex():
    quad = HPolytope.of([((0, 1), 0), ((-1, 0), 3), ((-1, -2), 5), ((1, -1), 1)])
    verts = vertices(quad)
    a = centroid(quad)
    b = centroid(quad, apex=verts[0])
    c = centroid(quad, apex=verts[-1])
    assert a == b == c
    assert quad.strictly_contains(a)


def test_volume_of_simplex():
    assert volume(simplex()) == H
    assert sum(volume_of(s) for s in triangulate(square())) == 1


def volume_of(simplex_pts):
    (x0, y0), (x1, y1), (x2, y2) = simplex_pts
    return abs((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)) / 2


def test_radial_examples():
    P = square()
    c = (H, H)
    pt, active = radial_to_boundary(P, c, (1, 0))
    assert pt == (1, H) and len(active) == 1
    pt, active = radial_to_boundary(P, c, (1, 1))
    assert pt == (1, 1) and len(active) == 2
    with pytest.raises(RayUnbounded):
        radial_to_boundary(HPolytope.of([((0, 1), 0)]), (0, 1), (0, 1))


def test_radial_chart_examples():
    ch = radial_chart(square())
    assert ch.forward((1, 0), 0) == (H, H)
    assert ch.forward((1, 0), 1) == (1, H)


@settings(max_examples=100)
@given(st.tuples(st.integers(-9, 9), st.integers(-9, 9)).filter(any),
       st.fractions(min_value=0, max_value=1, max_denominator=16))
def test_radial_chart_round_trip(direction, t):
    ch = radial_chart(simplex())
    p = ch.forward(direction, t)
    d, s = ch.inverse(p)
    if t == 0:
        assert p == ch.center
        return
    assert d == canonical_direction(direction)
    assert s == t
    if t < 1:
        assert simplex().strictly_contains(p)


def test_boundedness():
    assert is_bounded(square())
    ray = HPolytope.of([((0, 1), 0), ((1, 0), 0), ((-1, 0), 1)])
    assert not is_bounded(ray)
    assert unbounded_directions(ray) == [(1, 1)]


def test_affine_dimension():
    assert affine_dimension(square()) == 2
    segment = HPolytope.of([((0, 1), 0), ((0, -1), 0), ((1, 0), 0), ((-1, 0), 1)])
    assert affine_dimension(segment) == 1
    empty = HPolytope.of([((1, 0), 0), ((-1, 0), -1)])
    assert affine_dimension(empty) == -1


def test_fan_forms_at_half(fan):
    vals = dict(fan.points)
    vs = VolumeSystem.vertical(fan, [4], vals)
    forms = {t: triangle_form(vs, t) for t in fan.triangles}
    # hand expansion with e = (1/2, y)
    assert forms[(0, 1, 4)] == AffineForm((F(1),), F(0))
    assert forms[(1, 2, 4)] == AffineForm((F(0),), H)
    assert forms[(2, 3, 4)] == AffineForm((F(-1),), F(1))
    assert forms[(3, 0, 4)] == AffineForm((F(0),), H)
    P = build_system(vs)
    assert sorted(vertices(P)) == [(0,), (1,)]


def test_single_triangle_is_constant():
    from slembed.disk import SLDisk

    d = SLDisk.from_lists([(0, 0), (2, 0), (0, 3)], [(0, 1, 2)])
    (f,) = build_system(VolumeSystem(d, (), d.points)).forms
    assert f.is_constant() and f.const == 6


def test_star_kernel_of_fan_centre(fan):
    K = star_kernel(fan, fan.points, 4)
    # x >= 0, 1 - x >= 0, y >= 0, 1 - y >= 0
    assert forms_set(K) == forms_set(square())
    moved = dict(fan.points)
    moved[4] = (F(1, 10), F(1, 10))
    assert forms_set(star_kernel(fan, moved, 4)) == forms_set(square())


def test_canonical_direction():
    assert canonical_direction((F(2, 3), F(-4, 3))) == (1, -2)
    assert canonical_direction((0, F(-5))) == (0, -1)
