from slembed.disk import (NOT_CONVEX, boundary_circle, convexity, image_circle, is_TrV,
                          spanning_simplices, validate)
from slembed.extension import is_vertical, obstructive_simplices
from slembed.generate import boundary_maps, build_corpus
from slembed.geometry import is_simple_polygon


def test_corpus_is_deterministic(corpus):
    assert build_corpus(5, 20) == build_corpus(5, 20)
    again = build_corpus(0, 200)
    assert [n for n, _ in again] == [n for n, _ in corpus]
    assert all(a == b for (_, a), (_, b) in zip(again, corpus))


def test_corpus_mix(corpus):
    assert len(corpus) >= 200
    shapes = {name.split("-")[1] for name, _ in corpus}
    assert shapes == {"StrictlyConvex", "Convex", "TrV"}
    tags = {name.split("-")[2] for name, _ in corpus}
    assert tags == {"simple", "spanning"}
    for name, d in corpus:
        assert validate(d).valid, name
        assert 3 <= len(d.triangles) <= 30
        assert (not spanning_simplices(d)) == name.endswith("simple")


def test_boundary_maps(corpus, corpus_maps):
    for name, d in corpus:
        maps = corpus_maps[name]
        assert set(maps) == {"identity", "vertical", "projective", "parabolic"}
        valid = 0
        for label, f in maps.items():
            pts = [f[v] for v in d.boundary]
            assert is_simple_polygon(pts), (name, label)
            if label in ("vertical", "parabolic"):
                assert is_vertical(d, f)
            if convexity(image_circle(d, f)) != NOT_CONVEX and not obstructive_simplices(d, f):
                valid += 1
        assert valid >= 3, name
        if convexity(boundary_circle(d)) == NOT_CONVEX:
            assert is_TrV(d)
