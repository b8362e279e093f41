"""JSON reading and writing for disks, maps, polytopes and reduced forms.

Rationals are written as "p/q" strings ("p" when q = 1).  Output is
deterministic: fixed key order, two-space indent, trailing newline.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .disk import SLDisk
from .errors import ParseError
from .geometry import Point, ProjectiveMap, format_rational, parse_rational
from .polytope.hpoly import AffineForm, HPolytope

DISK_VERSION = "sl-disk/1"


def _q(text, what="rational") -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad {what}: {text!r}") from exc


def _fmt(q) -> str:
    return format_rational(Fraction(q))


def loads(text: str, path=None):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, path) from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def read_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", path=str(path)) from exc
    return loads(text, str(path))


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj))


def _require(obj, key, kind, ctx):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{ctx}: missing key {key!r}")
    val = obj[key]
    if not isinstance(val, kind):
        raise ParseError(f"{ctx}: {key!r} has the wrong type")
    return val


# -- disks ----------------------------------------------------------------------


def disk_to_json(d: SLDisk) -> dict:
    ids = d.vertex_ids
    plain = ids == tuple(range(len(ids)))
    verts = []
    for v in ids:
        p = d.points[v]
        entry = {"x": _fmt(p.x), "y": _fmt(p.y)}
        if not plain:
            entry = {"id": v, **entry}
        verts.append(entry)
    index = {v: i for i, v in enumerate(ids)}
    tris = [[v if not plain else index[v] for v in t] for t in d.triangles]
    return {"version": DISK_VERSION, "vertices": verts, "triangles": tris}


def disk_from_json(obj) -> SLDisk:
    version = obj.get("version", DISK_VERSION) if isinstance(obj, dict) else None
    if version != DISK_VERSION:
        raise ParseError(f"unsupported disk version {version!r}")
    verts = _require(obj, "vertices", list, "disk")
    tris = _require(obj, "triangles", list, "disk")
    points = {}
    for i, entry in enumerate(verts):
        ctx = f"vertex {i}"
        x, y = _require(entry, "x", (str, int), ctx), _require(entry, "y", (str, int), ctx)
        label = entry.get("id", i)
        if not isinstance(label, int) or isinstance(label, bool) or label in points:
            raise ParseError(f"{ctx}: bad or repeated id {label!r}")
        points[label] = Point(_q(x), _q(y))
    triangles = []
    for k, t in enumerate(tris):
        if (not isinstance(t, list) or len(t) != 3
                or not all(isinstance(v, int) and v in points for v in t)):
            raise ParseError(f"triangle {k}: expected three known vertex ids")
        triangles.append(tuple(t))
    try:
        return SLDisk(points, tuple(triangles))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# -- maps -----------------------------------------------------------------------


def map_to_json(m: Mapping) -> dict:
    return {"images": {str(v): [_fmt(m[v][0]), _fmt(m[v][1])] for v in sorted(m)}}


def map_from_json(obj) -> dict:
    images = _require(obj, "images", dict, "map")
    out = {}
    for key, val in images.items():
        try:
            v = int(key)
        except ValueError as exc:
            raise ParseError(f"map: bad vertex key {key!r}") from exc
        if not isinstance(val, list) or len(val) != 2:
            raise ParseError(f"map: image of {key} must be a pair")
        out[v] = Point(_q(val[0]), _q(val[1]))
    return out


# -- polytopes ------------------------------------------------------------------


def hpoly_to_json(P: HPolytope) -> dict:
    return {"dimension": P.dimension,
            "forms": [{"coeffs": [_fmt(a) for a in f.coeffs], "const": _fmt(f.const)} for f in P.forms]}


def hpoly_from_json(obj) -> HPolytope:
    forms = _require(obj, "forms", list, "polytope")
    parsed = []
    for k, f in enumerate(forms):
        coeffs = _require(f, "coeffs", list, f"form {k}")
        const = _require(f, "const", (str, int), f"form {k}")
        parsed.append(AffineForm(tuple(_q(a) for a in coeffs), _q(const)))
    dim = obj.get("dimension", len(parsed[0].coeffs) if parsed else 0)
    if any(len(f.coeffs) != dim for f in parsed):
        raise ParseError("polytope: forms disagree on the dimension")
    return HPolytope(tuple(parsed), dim)


# -- reduced forms --------------------------------------------------------------


def projective_to_json(g: ProjectiveMap) -> list:
    return [[_fmt(a) for a in row] for row in g.m]


def projective_from_json(rows) -> ProjectiveMap:
    if not isinstance(rows, list) or len(rows) != 3 or not all(isinstance(r, list) and len(r) == 3 for r in rows):
        raise ParseError("projective map must be a 3x3 matrix")
    try:
        return ProjectiveMap([[_q(a) for a in r] for r in rows])
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def reduced_to_json(rf) -> dict:
    return {"map": projective_to_json(rf.map), "base_edge": list(rf.base_edge),
            "disk": disk_to_json(rf.disk)}


def reduced_from_json(obj):
    from .reduction import ReducedForm

    g = projective_from_json(_require(obj, "map", list, "reduced form"))
    base = _require(obj, "base_edge", list, "reduced form")
    d = disk_from_json(_require(obj, "disk", dict, "reduced form"))
    return ReducedForm(g, d, tuple(base))


def read_disk(path) -> SLDisk:
    return disk_from_json(read_json(path))


def read_map(path) -> dict:
    return map_from_json(read_json(path))
