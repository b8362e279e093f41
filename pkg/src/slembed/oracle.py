"""Brute-force injectivity oracle for simplexwise linear maps.

Deliberately shares nothing with the extension algorithms beyond the
orientation predicate: every pair of triangle images is tested directly,
after a bounding-box filter for pairs without a common vertex.
"""

from __future__ import annotations

from itertools import combinations
from typing import Mapping

from .geometry import cross, is_simple_polygon, orientation, signed_vol


def _in_closed_sector(apex, p, q, d) -> bool:
    # sector from direction p-apex to q-apex, counterclockwise, angle < pi
    u = (p[0] - apex[0], p[1] - apex[1])
    w = (q[0] - apex[0], q[1] - apex[1])
    z = (d[0] - apex[0], d[1] - apex[1])
    return cross(u, z) >= 0 and cross(z, w) >= 0


def _separated(P, Q) -> bool:
    """Closed ccw triangles P, Q are disjoint (separating edge exists)."""
    for A, B in ((P, Q), (Q, P)):
        for i in range(3):
            a, b = A[i], A[(i + 1) % 3]
            if all(orientation(a, b, q) < 0 for q in B):
                return True
    return False


def _pair_problem(t1, t2, img) -> str | None:
    shared = set(t1) & set(t2)
    P = [img[v] for v in t1]
    Q = [img[v] for v in t2]
    if not shared:
        if not _separated(P, Q):
            return f"triangles {t1} and {t2} overlap"
        return None
    if len(shared) == 1:
        (v,) = shared
        apex = img[v]
        i, j = t1.index(v), t2.index(v)
        p, q = img[t1[(i + 1) % 3]], img[t1[(i + 2) % 3]]
        r, s = img[t2[(j + 1) % 3]], img[t2[(j + 2) % 3]]
        if (_in_closed_sector(apex, p, q, r) or _in_closed_sector(apex, p, q, s)
                or _in_closed_sector(apex, r, s, p) or _in_closed_sector(apex, r, s, q)):
            return f"triangles {t1} and {t2} meet beyond their common vertex {v}"
        return None
    if len(shared) == 2:
        a, b = shared
        c1 = next(w for w in t1 if w not in shared)
        c2 = next(w for w in t2 if w not in shared)
        if orientation(img[a], img[b], img[c1]) * orientation(img[a], img[b], img[c2]) >= 0:
            return f"triangles {t1} and {t2} fold over their common edge"
        return None
    return f"triangles {t1} and {t2} coincide"


def _box(pts) -> tuple:
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return min(xs), max(xs), min(ys), max(ys)


def _boxes_apart(a, b) -> bool:
    # closed boxes strictly apart: the triangles inside cannot meet
    return a[1] < b[0] or b[1] < a[0] or a[3] < b[2] or b[3] < a[2]


def embedding_violations(d, images: Mapping) -> list:
    problems = []
    missing = [v for v in d.points if v not in images]
    if missing:
        return [f"no image for vertices {missing}"]
    for t in d.triangles:
        if signed_vol(*(images[v] for v in t)) <= 0:
            problems.append(f"triangle {t} image has non-positive volume")
    if problems:
        return problems
    boxes = {t: _box([images[v] for v in t]) for t in d.triangles}
    for t1, t2 in combinations(d.triangles, 2):
        if _boxes_apart(boxes[t1], boxes[t2]) and not set(t1) & set(t2):
            continue
        msg = _pair_problem(t1, t2, images)
        if msg:
            problems.append(msg)
            return problems
    if not is_simple_polygon([images[v] for v in d.boundary]):
        problems.append("boundary image is not a simple polygon")
    return problems


def is_embedding(d, images: Mapping) -> bool:
    return not embedding_violations(d, images)
