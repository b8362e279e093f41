from fractions import Fraction as F

import pytest

from slembed import fixtures
from slembed.disk import (CONVEX, NOT_CONVEX, STRICTLY_CONVEX, SLCircle, SLDisk, boundary_circle,
                          check_key_finding, convexity, count_extrema, find_key_or_twinkey,
                          is_simple, is_TrH, is_TrV, natural_edges, piece_containing, roof,
                          roof_vertices, spanning_simplices, split_at, validate)
from slembed.errors import NotSpanning
from slembed.generate import generate_disk, relabel, subdivide_spanning
from slembed.geometry import Point

H = F(1, 2)


def circle(*pts):
    pts = tuple(Point.of(*p) for p in pts)
    return SLCircle(tuple(range(len(pts))), pts)


def test_fan_is_valid(fan):
    assert validate(fan).valid
    assert fan.boundary == (0, 1, 2, 3)
    assert fan.interior_vertices == (4,)


def test_reversed_triangle_is_invalid():
    d = SLDisk.from_lists([(0, 0), (1, 0), (1, 1), (0, 1), (H, H)],
                          [(0, 4, 1), (1, 2, 4), (2, 3, 4), (3, 0, 4)])
    report = validate(d)
    assert not report.valid
    assert any("volume" in p for p in report.problems)


def test_pinched_disk_is_invalid():
    d = SLDisk.from_lists([(0, 0), (1, 0), (0, 1), (-1, 0), (0, -1)], [(0, 1, 2), (0, 3, 4)])
    assert not validate(d).valid


def test_boundary_after_subdivision():
    d = SLDisk.from_lists([(0, 0), (1, 0), (1, 1), (0, 1), (H, H), (H, 0)],
                          [(0, 5, 4), (5, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4)])
    assert validate(d).valid
    assert d.boundary == (0, 5, 1, 2, 3)


def test_natural_edges_examples():
    assert natural_edges(circle((0, 0), (1, 0), (1, 1), (0, 1))) == [(0, 1), (1, 2), (2, 3), (3, 0)]
    runs = natural_edges(circle((0, 0), (H, 0), (1, 0), (1, 1), (0, 1)))
    assert (0, 1, 2) in runs and len(runs) == 4
    assert len(natural_edges(circle((0, 0), (1, 0), (0, 1)))) == 3


def test_convexity_examples():
    assert convexity(circle((0, 0), (1, 0), (1, 1), (0, 1))) == STRICTLY_CONVEX
    assert convexity(circle((0, 0), (H, 0), (1, 0), (1, 1), (0, 1))) == CONVEX
    ell = circle((0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2))
    assert convexity(ell) == NOT_CONVEX
    assert convexity(circle((0, 0), (0, 1), (1, 0))) == NOT_CONVEX  # clockwise


def test_spanning_examples(fan, square_diag):
    assert spanning_simplices(square_diag) == [(0, 2)]
    assert spanning_simplices(fan) == []
    assert spanning_simplices(generate_disk(1, 0, 3)) == []
    assert is_simple(fan) and not is_simple(square_diag)


def test_trv_examples(fan):
    assert is_TrV(fan) and is_TrH(fan)
    # the top folds back over the bottom strip: x = 3/2 meets two pieces
    s = SLDisk.from_lists([(0, 0), (3, 0), (3, 1), (1, 1), (2, 2), (0, 2)],
                          [(0, 1, 2), (0, 2, 3), (0, 3, 5), (3, 4, 5)])
    assert validate(s).valid
    assert not is_TrV(s)
    assert is_TrV(SLDisk.from_lists([(0, 0), (1, 0), (0, 1)], [(0, 1, 2)]))
    assert count_extrema([0, 1, 1, 0]) == 2


def test_roof_examples(fan):
    assert roof(fan) == [(0, 3), (3, 2), (2, 1)]
    tri = SLDisk.from_lists([(0, 0), (1, 0), (H, 1)], [(0, 1, 2)])
    assert roof(tri) == [(0, 2), (2, 1)]


def test_roof_of_flat_top():
    box = SLDisk.from_lists([(0, 0), (1, 0), (1, 1), (0, 1)], [(0, 1, 2), (0, 2, 3)])
    assert roof(box) == [(0, 3), (3, 2), (2, 1)]
    assert roof_vertices(box) == [0, 3, 2, 1]


def test_key_of_fan(fan):
    kf = find_key_or_twinkey(fan)
    assert kf.kind == "Key"
    assert kf.triangles == ((2, 3, 4),)
    assert kf.roof_faces == ((3, 2),)
    assert kf.apex == 4
    assert kf.foot == Point(H, F(1))
    assert check_key_finding(fan, kf) == []


def test_single_roof_edge_is_a_key():
    d = SLDisk.from_lists([(0, 0), (1, -1), (2, 0), (1, F(-1, 3))], [(0, 1, 3), (1, 2, 3), (2, 0, 3)])
    assert roof(d) == [(0, 2)]
    kf = find_key_or_twinkey(d)
    assert kf.kind == "Key"
    assert kf.roof_faces == ((0, 2),)
    assert kf.apex == 3


def test_twin_key_fixture():
    d = fixtures.twin_key()
    kf = find_key_or_twinkey(d)
    assert kf.kind == "TwinKey"
    assert len(kf.triangles) == 2
    assert kf.apex == 3
    assert check_key_finding(d, kf) == []


def test_split_at(square_diag):
    a, b = split_at(square_diag, (0, 2))
    assert len(a.triangles) == 1 and len(b.triangles) == 1
    with pytest.raises(NotSpanning):
        split_at(square_diag, (0, 1))


def test_split_pentagon():
    d = SLDisk.from_lists([(0, 0), (2, 0), (3, 1), (1, 3), (-1, 1)], [(0, 1, 2), (0, 2, 3), (0, 3, 4)])
    d = SLDisk(d.points, ((0, 1, 2), (0, 2, 3), (0, 3, 4)))
    spans = spanning_simplices(d)
    assert spans == [(0, 2), (0, 3)]
    a, b = split_at(d, (0, 2))
    assert sorted(len(x.triangles) for x in (a, b)) == [1, 2]
    assert piece_containing(d, (0, 2), 1).triangles == ((0, 1, 2),)


def test_generator_is_deterministic_and_valid():
    for seed in range(8):
        d = generate_disk(seed, 3, 5)
        assert validate(d).valid
        assert d == generate_disk(seed, 3, 5)
    assert len(generate_disk(1, 0, 3).triangles) == 1


def test_subdivide_spanning_makes_simple(square_diag):
    d = relabel(subdivide_spanning(square_diag))
    assert validate(d).valid and is_simple(d)
