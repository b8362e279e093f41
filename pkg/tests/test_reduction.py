from fractions import Fraction as F

import pytest

from slembed.disk import NOT_CONVEX, STRICTLY_CONVEX, SLCircle, SLDisk, boundary_circle, convexity, natural_edges
from slembed.errors import NoPlateau, NotConvex, NotNaturalEdge
from slembed.geometry import AT_INFINITY, Point
from slembed.reduction import (base_run, choose_vanishing_line, plateau_collapse, reduce,
                               reduced_form_problems, reduction_map, simple_reduction_map)

H = F(1, 2)


def P(x, y):
    return Point.of(x, y)


def unit_square():
    return SLDisk.from_lists([(0, 0), (1, 0), (1, 1), (0, 1)], [(0, 1, 2), (0, 2, 3)])


def test_unit_square_reduces():
    d = unit_square()
    assert reduced_form_problems(boundary_circle(d), (0, 1))  # (1,1) has x = 1
    rf = reduce(d, 0)
    assert rf.base_edge == (0, 1)
    assert reduced_form_problems(boundary_circle(rf.disk), rf.base_edge) == []
    back = rf.map.inverse()
    assert all(back(rf.disk.points[v]) == p for v, p in d.points.items())


def test_every_edge_of_a_pentagon():
    d = SLDisk.from_lists([(0, 0), (3, 0), (4, 2), (1, 4), (-1, 2)], [(0, 1, 2), (0, 2, 3), (0, 3, 4)])
    for i in range(5):
        rf = reduce(d, i)
        assert reduced_form_problems(boundary_circle(rf.disk), rf.base_edge) == []


def test_parallel_neighbours_use_a_projective_step():
    # the sides next to the base are parallel: their lines meet at infinity
    rf = reduce(unit_square(), 0)
    assert not rf.map.is_affine()


def test_non_convex_is_rejected():
    ell = SLDisk.from_lists([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)],
                            [(0, 1, 2), (0, 2, 3), (0, 3, 5), (3, 4, 5)])
    with pytest.raises(NotConvex):
        reduce(ell, 0)


def test_bad_edge_is_rejected():
    with pytest.raises(NotNaturalEdge):
        reduce(unit_square(), (0, 2))
    with pytest.raises(NotNaturalEdge):
        reduce(unit_square(), 9)


def test_vanishing_line_example():
    t, s1, s2 = P(H, -H), P(0, 0), P(1, 0)
    hull = [P(-1, 1), P(0, 0), P(1, 0), P(2, 1)]
    line = choose_vanishing_line(t, s1, s2, hull)
    assert line.value(P(F(1, 4), F(-1, 4))) == 0 and line.value(P(F(3, 4), F(-1, 4))) == 0
    assert all(line.side(p) == line.side(hull[0]) for p in hull)
    assert line.side(t) != line.side(hull[0])


def test_vanishing_line_at_infinity():
    hull = [P(0, 0), P(1, 0), P(1, 1), P(0, 1)]
    line = choose_vanishing_line(AT_INFINITY, P(0, 0), P(1, 0), hull)
    assert line.a == 0
    assert all(line.side(p) == line.side(hull[2]) for p in hull)


def test_vanishing_line_degenerate():
    with pytest.raises(ValueError):
        choose_vanishing_line(P(0, 0), P(0, 0), P(1, 0), [P(0, 1)])


def circle(*pts):
    return SLCircle(tuple(range(len(pts))), tuple(P(*p) for p in pts))


def test_plateau_single_midpoint():
    c = circle((0, 0), (H, 0), (1, 0), (H, 1))
    new = plateau_collapse(c, depth=F(1, 8))
    assert new[1] == P(H, F(-1, 8))
    assert new[0] == P(0, 0) and new[2] == P(1, 0)


def test_plateau_two_vertices():
    c = circle((0, 0), (F(1, 3), 0), (F(2, 3), 0), (1, 0), (H, 1))
    new = plateau_collapse(c)
    assert new[1].y < 0 and new[2].y < 0
    assert convexity(SLCircle(c.ids, tuple(new[v] for v in c.ids))) == STRICTLY_CONVEX


def test_no_plateau():
    with pytest.raises(NoPlateau):
        plateau_collapse(circle((0, 0), (1, 0), (H, 1)))


def test_base_run():
    assert base_run(circle((0, 0), (H, 0), (1, 0), (H, 1))) == (0, 1, 2)


def test_simple_map_is_a_reduction(corpus):
    for name, d in corpus[:60]:
        c = boundary_circle(d)
        if convexity(c) == NOT_CONVEX:
            continue
        for run in natural_edges(c):
            g = simple_reduction_map(c, run)
            img = SLCircle(c.ids, tuple(g(p) for p in c.points))
            assert reduced_form_problems(img, run) == [], name
