from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slembed import fixtures, io
from slembed.errors import ParseError
from slembed.generate import relabel
from slembed.geometry import Point
from slembed.polytope.hpoly import HPolytope
from slembed.reduction import reduce


def round_trip(obj, to, frm):
    text = io.dumps(to(obj))
    back = frm(io.loads(text))
    assert io.dumps(to(back)) == text
    return back


def test_disk_round_trip(corpus):
    for _, d in corpus[:50]:
        assert round_trip(d, io.disk_to_json, io.disk_from_json) == d


def test_disk_with_labels_round_trip(fan):
    d = fan.sub_disk([t for t in fan.triangles if 0 not in t])
    assert 0 not in d.vertex_ids
    assert round_trip(d, io.disk_to_json, io.disk_from_json) == d
    assert relabel(d).vertex_ids == tuple(range(4))


coords = st.fractions(min_value=-10 ** 6, max_value=10 ** 6, max_denominator=10 ** 6)


@settings(max_examples=50)
@given(st.dictionaries(st.integers(0, 50), st.tuples(coords, coords), min_size=1, max_size=8))
def test_map_round_trip(m):
    m = {v: Point(*p) for v, p in m.items()}
    assert round_trip(m, io.map_to_json, io.map_from_json) == m


def test_hpoly_round_trip():
    P = HPolytope.of([((F(1, 3), 0), F(-2, 7)), ((0, -1), 1)])
    assert round_trip(P, io.hpoly_to_json, io.hpoly_from_json) == P


def test_reduced_round_trip(fan):
    rf = reduce(fan, 1)
    back = round_trip(rf, io.reduced_to_json, io.reduced_from_json)
    assert back.map == rf.map and back.disk == rf.disk and back.base_edge == rf.base_edge


def test_malformed_json_reports_position():
    with pytest.raises(ParseError) as err:
        io.loads('{"vertices": [1, 2,,]}', "bad.json")
    assert err.value.line == 1 and err.value.column is not None
    assert "bad.json" in str(err.value)


@pytest.mark.parametrize("obj", [
    {"version": "sl-disk/9", "vertices": [], "triangles": []},
    {"vertices": [{"x": "1/0", "y": "0"}], "triangles": []},
    {"vertices": [{"x": "0", "y": "0"}], "triangles": [[0, 1, 2]]},
    {"triangles": []},
])
def test_bad_disks(obj):
    with pytest.raises(ParseError):
        io.disk_from_json(obj)


def test_bad_map():
    with pytest.raises(ParseError):
        io.map_from_json({"images": {"a": ["0", "0"]}})
    with pytest.raises(ParseError):
        io.map_from_json({"images": {"0": ["0"]}})


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        io.read_disk(tmp_path / "nope.json")


def test_written_text_is_stable(tmp_path):
    d = fixtures.fan()
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    io.write_json(a, io.disk_to_json(d))
    io.write_json(b, io.disk_to_json(io.read_disk(a)))
    assert a.read_bytes() == b.read_bytes()
    assert '"1/2"' in a.read_text()
