from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st

from slembed import fixtures
from slembed.geometry import Point
from slembed.oracle import embedding_violations, is_embedding


def images(d, **moves):
    out = dict(d.points)
    for k, v in moves.items():
        out[int(k[1:])] = Point.of(*v)
    return out


def test_identity_fan(fan):
    assert is_embedding(fan, fan.points)


def test_centre_outside(fan):
    assert not is_embedding(fan, images(fan, v4=(2, 2)))


def test_centre_collapsed(fan):
    assert not is_embedding(fan, images(fan, v4=(0, 0)))


def test_missing_image(fan):
    img = dict(fan.points)
    del img[4]
    assert embedding_violations(fan, img)


def test_folded_square(square_diag):
    # both triangles positive but overlapping is impossible for two triangles
    # sharing an edge; a flip shows up as a volume problem
    bad = images(square_diag, v3=(2, F(1, 2)))
    assert not is_embedding(square_diag, bad)


@settings(max_examples=60)
@given(st.fractions(min_value=-1, max_value=2, max_denominator=8),
       st.fractions(min_value=-1, max_value=2, max_denominator=8))
def test_fan_centre_inside_square_iff_embedding(x, y):
    # an interior placement works exactly when e is strictly inside the square
    fan = fixtures.fan()
    inside = 0 < x < 1 and 0 < y < 1
    assert is_embedding(fan, images(fan, v4=(x, y))) == inside
