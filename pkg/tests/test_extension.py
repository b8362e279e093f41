from fractions import Fraction as F

import pytest

from slembed import fixtures
from slembed.disk import SLDisk, is_TrV, validate
from slembed.errors import NotConvexImage, NotTrV, NotVertical, Obstructive, PreconditionViolated
from slembed.extension import (evaluation_bound, extend, is_vertical, obstructive_simplices,
                               transpose, transpose_map, vertical_extend)
from slembed.geometry import Point, signed_vol
from slembed.oracle import is_embedding
from slembed.polytope.hpoly import HPolytope, lp_extremum
from slembed.polytope.volume import VolumeSystem, build_system

H = F(1, 2)
ident = fixtures.identity_boundary


def P(x, y):
    return Point.of(x, y)


def assert_extends(d, f, out, vertical=False):
    assert is_embedding(d, out)
    assert all(out[v] == f[v] for v in d.boundary)
    if vertical:
        assert is_vertical(d, out)


def test_is_vertical(fan):
    assert is_vertical(fan, fan.points)
    assert is_vertical(fan, {v: P(p.x, p.y + 1) for v, p in fan.points.items()})
    moved = dict(fan.points)
    moved[4] = P(F(1, 3), H)
    assert not is_vertical(fan, moved)


def test_obstructive_examples(square_diag, fan):
    assert obstructive_simplices(square_diag, square_diag.points) == []
    assert obstructive_simplices(square_diag, fixtures.squashed_square_map()) == [(0, 2)]
    assert obstructive_simplices(fan, fan.points) == []


def test_vertical_extend_fan_identity(fan):
    trace = []
    out = vertical_extend(fan, ident(fan), trace)
    assert_extends(fan, ident(fan), out, vertical=True)
    assert out[4] == P(H, H)
    assert [s.kind for s in trace] == ["Key"]


def test_vertical_extend_fan_lifted(fan):
    v = ident(fan)
    v[3], v[2] = P(0, 2), P(1, 3)
    out = vertical_extend(fan, v)
    assert_extends(fan, v, out, vertical=True)


def test_flat_roof_special_case():
    d = fixtures.flat_roof()
    trace = []
    out = vertical_extend(d, ident(d), trace)
    assert_extends(d, ident(d), out, vertical=True)
    first = trace[0]
    assert first.kind == "Key" and first.apex == 5
    assert first.left is not None and first.right is None


def test_twin_key_extension():
    d = fixtures.twin_key()
    trace = []
    out = vertical_extend(d, ident(d), trace)
    assert_extends(d, ident(d), out, vertical=True)
    assert trace[0].kind == "TwinKey"


def test_vertical_extend_preconditions(fan, square_diag):
    with pytest.raises(NotVertical):
        v = ident(fan)
        v[2] = P(2, 1)
        vertical_extend(fan, v)
    with pytest.raises(Obstructive) as err:
        extend(square_diag, fixtures.squashed_square_map())
    assert err.value.edges == [(0, 2)]
    notrv = SLDisk.from_lists([(0, 0), (3, 0), (3, 1), (1, 1), (2, 2), (0, 2)],
                              [(0, 1, 2), (0, 2, 3), (0, 3, 5), (3, 4, 5)])
    with pytest.raises(NotTrV):
        vertical_extend(notrv, ident(notrv))


def test_tent_bound():
    assert evaluation_bound(fixtures.tent()) == H
    assert evaluation_bound(fixtures.tent(F(1))) == 1


def test_tent_bound_matches_primal_lp():
    d = fixtures.tent()
    vs = VolumeSystem.vertical(d, [3])
    P_ = build_system(vs)
    assert lp_extremum(P_, (F(1),)) == H
    for y, ok in ((F(0), True), (F(1, 4), True), (H, False)):
        img = dict(d.points)
        img[3] = P(H, y)
        vols = [signed_vol(*(img[v] for v in t)) for t in d.triangles]
        assert all(v > 0 for v in vols) == ok


def test_bound_rejects_chord():
    # the roof endpoints are joined by an edge
    d = SLDisk.from_lists([(0, 0), (H, H), (1, 0), (H, -H)], [(0, 2, 1), (0, 3, 2)])
    with pytest.raises(PreconditionViolated) as err:
        evaluation_bound(d)
    assert err.value.clause == "no-chord"


def test_bound_rejects_straight_roof():
    d = SLDisk.from_lists([(0, 0), (H, 0), (1, 0), (H, -1)], [(0, 3, 1), (3, 2, 1)])
    with pytest.raises(PreconditionViolated) as err:
        evaluation_bound(d)
    assert err.value.clause == "concave-roof"
    # the supremum is the roof itself, never above it
    vs = VolumeSystem.vertical(d, [3])
    assert lp_extremum(build_system(vs), (F(1),)) == 0


def test_extend_single_triangle():
    d = SLDisk.from_lists([(0, 0), (1, 0), (0, 1)], [(0, 1, 2)])
    f = {0: P(2, 2), 1: P(5, 3), 2: P(1, 7)}
    assert extend(d, f) == f


def test_extend_fan_identity(fan):
    out = extend(fan, ident(fan))
    assert_extends(fan, ident(fan), out)


def test_extend_projective_images(corpus, corpus_maps):
    for name, d in corpus[:40]:
        f = corpus_maps[name]["projective"]
        assert_extends(d, f, extend(d, f))


def test_extend_rejects_bad_boundary(fan):
    f = ident(fan)
    f[1], f[3] = f[3], f[1]
    with pytest.raises(NotConvexImage):
        extend(fan, f)


def test_transpose_is_an_involution(fan):
    t = transpose(transpose(fan))
    assert t == fan
    tt = transpose(fan)
    assert validate(tt).valid
    p, q, r = P(0, 0), P(1, 0), P(0, 1)
    sw = transpose_map({0: p, 1: q, 2: r})
    assert signed_vol(sw[0], sw[1], sw[2]) == -signed_vol(p, q, r)
    assert signed_vol(sw[0], sw[2], sw[1]) == signed_vol(p, q, r)


def test_transpose_of_trh_is_trv():
    # a disk narrow in y and wavy in x
    d = SLDisk.from_lists([(0, 0), (1, 0), (1, 3), (0, 3), (H, F(3, 2))],
                          [(0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4)])
    assert is_TrV(transpose(d)) == is_TrV(d)
