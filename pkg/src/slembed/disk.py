"""Triangulated planar disks and their combinatorial classification.

An :class:`SLDisk` is a set of positively oriented triangles over labelled
rational points.  Vertex labels are arbitrary ints so that sub-disks cut out
of a parent keep the parent's labels.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import InvalidDisk, NoKeyFound, NotSpanning, NotTrV
from .geometry import Point, orientation, polygon_signed_vol, signed_vol

Triangle = tuple  # (i, j, k), counterclockwise
Edge = tuple  # (i, j)

NOT_CONVEX = "NotConvex"
CONVEX = "Convex"
STRICTLY_CONVEX = "StrictlyConvex"


def edge_key(i, j) -> Edge:
    return (i, j) if i < j else (j, i)


def _canonical_triangle(t) -> Triangle:
    # rotate so the smallest label comes first; keeps orientation
    i = t.index(min(t))
    return tuple(t[i:]) + tuple(t[:i])


@dataclass(frozen=True, eq=False)
class SLDisk:
    points: Mapping[int, Point]
    triangles: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", {int(k): Point(*v) for k, v in self.points.items()})
        object.__setattr__(self, "triangles", tuple(tuple(int(i) for i in t) for t in self.triangles))

    @classmethod
    def from_lists(cls, vertices: Sequence, triangles: Iterable) -> "SLDisk":
        return cls({i: Point.of(*v) for i, v in enumerate(vertices)}, tuple(triangles))

    def __eq__(self, other):
        if not isinstance(other, SLDisk):
            return NotImplemented
        return (self.points == other.points
                and sorted(map(_canonical_triangle, self.triangles))
                == sorted(map(_canonical_triangle, other.triangles)))

    def __hash__(self):
        return hash((tuple(sorted(self.points.items())),
                     tuple(sorted(map(_canonical_triangle, self.triangles)))))

    def __repr__(self):
        return f"SLDisk(n={len(self.points)}, p={len(self.triangles)})"

    # -- combinatorics -------------------------------------------------

    @cached_property
    def vertex_ids(self) -> tuple:
        return tuple(sorted(self.points))

    @cached_property
    def edge_triangles(self) -> dict:
        """Undirected edge -> list of triangles containing it."""
        out = defaultdict(list)
        for t in self.triangles:
            for a, b in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
                out[edge_key(a, b)].append(t)
        return dict(out)

    @cached_property
    def directed_boundary(self) -> dict:
        """Boundary edges as a successor map following the ccw orientation."""
        directed = set()
        for t in self.triangles:
            directed.update(((t[0], t[1]), (t[1], t[2]), (t[2], t[0])))
        succ = {}
        for a, b in directed:
            if (b, a) not in directed:
                if a in succ:
                    raise InvalidDisk([f"vertex {a} has two outgoing boundary edges"])
                succ[a] = b
        return succ

    @cached_property
    def boundary(self) -> tuple:
        """The boundary cycle, counterclockwise, starting at the smallest label."""
        succ = self.directed_boundary
        if not succ:
            raise InvalidDisk(["no boundary"])
        start = min(succ)
        cycle = [start]
        v = succ[start]
        while v != start:
            if v not in succ or len(cycle) > len(succ):
                raise InvalidDisk(["boundary is not a single cycle"])
            cycle.append(v)
            v = succ[v]
        if len(cycle) != len(succ):
            raise InvalidDisk(["boundary is not a single cycle"])
        return tuple(cycle)

    @cached_property
    def boundary_set(self) -> frozenset:
        return frozenset(self.boundary)

    @cached_property
    def interior_vertices(self) -> tuple:
        return tuple(v for v in self.vertex_ids if v not in self.boundary_set)

    def is_boundary_edge(self, i, j) -> bool:
        return len(self.edge_triangles.get(edge_key(i, j), ())) == 1

    def triangles_at(self, v) -> list:
        return [t for t in self.triangles if v in t]

    def link(self, edge) -> list:
        """Vertices opposite to ``edge`` in the triangles containing it."""
        return [next(w for w in t if w not in edge) for t in self.edge_triangles[edge_key(*edge)]]

    def boundary_points(self) -> list:
        return [self.points[v] for v in self.boundary]

    def sub_disk(self, triangles) -> "SLDisk":
        used = {v for t in triangles for v in t}
        return SLDisk({v: self.points[v] for v in used}, tuple(triangles))

    def with_points(self, points: Mapping[int, Point]) -> "SLDisk":
        """Same triangulation, new coordinates (for every vertex)."""
        return SLDisk({v: points[v] for v in self.vertex_ids}, self.triangles)


@dataclass
class ValidationReport:
    problems: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.problems

    def __bool__(self):
        return self.valid


def validate(d: SLDisk, geometric: bool = True) -> ValidationReport:
    problems = []
    if not d.triangles:
        return ValidationReport(["no triangles"])
    used = set()
    for t in d.triangles:
        if len(t) != 3 or len(set(t)) != 3:
            problems.append(f"triangle {t} is degenerate")
            continue
        missing = [v for v in t if v not in d.points]
        if missing:
            problems.append(f"triangle {t} references unknown vertices {missing}")
            continue
        used.update(t)
        if signed_vol(*(d.points[v] for v in t)) <= 0:
            problems.append(f"triangle {t} has non-positive volume")
    unused = sorted(set(d.points) - used)
    if unused:
        problems.append(f"vertices {unused} belong to no triangle")
    if problems:
        return ValidationReport(problems)

    directed = defaultdict(int)
    for t in d.triangles:
        for a, b in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
            directed[(a, b)] += 1
    for e, ts in d.edge_triangles.items():
        if len(ts) > 2:
            problems.append(f"edge {e} is shared by {len(ts)} triangles")
        elif len(ts) == 2:
            a, b = e
            if directed[(a, b)] != 1 or directed[(b, a)] != 1:
                problems.append(f"edge {e} has inconsistent orientations")
    if problems:
        return ValidationReport(problems)

    try:
        cycle = d.boundary
    except InvalidDisk as exc:
        return ValidationReport(problems + exc.problems)

    V, E, F = len(d.points), len(d.edge_triangles), len(d.triangles)
    if V - E + F != 1:
        problems.append(f"Euler characteristic {V - E + F} != 1")

    # each vertex star must be a single fan (no pinching)
    for v in d.vertex_ids:
        star = d.triangles_at(v)
        nbr = defaultdict(list)
        for t in star:
            i = t.index(v)
            nbr[t[(i + 1) % 3]].append(t)
            nbr[t[(i + 2) % 3]].append(t)
        seen = {star[0]}
        stack = [star[0]]
        while stack:
            t = stack.pop()
            for w in t:
                if w == v:
                    continue
                for u in nbr[w]:
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
        if len(seen) != len(star):
            problems.append(f"vertex {v} has a disconnected star")
    if problems:
        return ValidationReport(problems)

    if geometric:
        from .oracle import embedding_violations

        identity = dict(d.points)
        problems.extend(embedding_violations(d, identity))
        if polygon_signed_vol([d.points[v] for v in cycle]) <= 0:
            problems.append("boundary is not counterclockwise")
    return ValidationReport(problems)


def require_valid(d: SLDisk) -> SLDisk:
    report = validate(d)
    if not report.valid:
        raise InvalidDisk(report.problems)
    return d


# -- circles -------------------------------------------------------------


@dataclass(frozen=True)
class SLCircle:
    ids: tuple
    points: tuple

    def __len__(self):
        return len(self.ids)

    @classmethod
    def of_points(cls, points: Sequence) -> "SLCircle":
        return cls(tuple(range(len(points))), tuple(Point.of(*p) for p in points))


def boundary_circle(d: SLDisk) -> SLCircle:
    return SLCircle(d.boundary, tuple(d.points[v] for v in d.boundary))


def image_circle(d: SLDisk, images: Mapping[int, Point]) -> SLCircle:
    return SLCircle(d.boundary, tuple(Point(*images[v]) for v in d.boundary))


def _flat_flags(pts) -> list:
    n = len(pts)
    return [orientation(pts[i - 1], pts[i], pts[(i + 1) % n]) == 0 for i in range(n)]


def natural_edges(c: SLCircle) -> list:
    """Maximal collinear runs of edges, as tuples of vertex labels.

    Each run starts and ends at a corner; its inner labels are flat vertices.
    Runs are listed in cyclic order starting from the first corner.
    """
    flat = _flat_flags(c.points)
    n = len(c.ids)
    corners = [i for i in range(n) if not flat[i]]
    if len(corners) < 3:
        raise ValueError("circle has fewer than three corners")
    runs = []
    for k, i in enumerate(corners):
        j = corners[(k + 1) % len(corners)]
        idx = list(range(i, j + 1)) if j > i else list(range(i, n)) + list(range(0, j + 1))
        runs.append(tuple(c.ids[t] for t in idx))
    return runs


def strictly_convex_circle(c: SLCircle) -> SLCircle:
    flat = _flat_flags(c.points)
    keep = [i for i in range(len(c.ids)) if not flat[i]]
    return SLCircle(tuple(c.ids[i] for i in keep), tuple(c.points[i] for i in keep))


def convexity(c: SLCircle) -> str:
    pts = c.points
    n = len(pts)
    if n < 3 or polygon_signed_vol(pts) <= 0:
        return NOT_CONVEX
    turns = [orientation(pts[i - 1], pts[i], pts[(i + 1) % n]) for i in range(n)]
    if any(t < 0 for t in turns):
        return NOT_CONVEX
    # a simple polygon with only left or straight turns; straight turns must
    # not be fold-backs
    for i in range(n):
        if turns[i] == 0:
            a, b, c2 = pts[i - 1], pts[i], pts[(i + 1) % n]
            if (b[0] - a[0]) * (c2[0] - b[0]) + (b[1] - a[1]) * (c2[1] - b[1]) <= 0:
                return NOT_CONVEX
    # total turning must be one revolution: count corners' winding via the
    # edge directions making exactly one ccw turn
    if not _single_turn(pts):
        return NOT_CONVEX
    return STRICTLY_CONVEX if all(t > 0 for t in turns) else CONVEX


def _single_turn(pts) -> bool:
    """Edge directions sweep exactly once around the circle."""
    n = len(pts)
    dirs = [(pts[(i + 1) % n][0] - pts[i][0], pts[(i + 1) % n][1] - pts[i][1]) for i in range(n)]

    def half(d):
        return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1

    wraps = 0
    for i in range(n):
        a, b = dirs[i], dirs[(i + 1) % n]
        if half(a) == 1 and half(b) == 0:
            wraps += 1
    return wraps == 1


# -- spanning simplices, TrV, roof ------------------------------------------------


def spanning_simplices(d: SLDisk) -> list:
    bset = d.boundary_set
    return sorted(e for e, ts in d.edge_triangles.items()
                  if len(ts) == 2 and e[0] in bset and e[1] in bset)


def is_simple(d: SLDisk) -> bool:
    return not spanning_simplices(d)


def _compressed_cycle(values) -> list:
    out = []
    for v in values:
        if not out or out[-1] != v:
            out.append(v)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def count_extrema(values) -> int:
    seq = _compressed_cycle(list(values))
    n = len(seq)
    if n < 2:
        return 0
    count = 0
    for i in range(n):
        if (seq[i] - seq[i - 1] > 0) != (seq[(i + 1) % n] - seq[i] > 0):
            count += 1
    return count


def is_TrV(d: SLDisk) -> bool:
    return count_extrema([d.points[v].x for v in d.boundary]) == 2


def is_TrH(d: SLDisk) -> bool:
    return count_extrema([d.points[v].y for v in d.boundary]) == 2


def roof_vertices(d: SLDisk, points: Mapping[int, Point] | None = None) -> list:
    """Roof vertices listed left to right (vertical end edges included)."""
    pts = d.points if points is None else points
    cyc = d.boundary
    xs = [pts[v][0] for v in cyc]
    if count_extrema(xs) != 2:
        raise NotTrV("disk is not transverse to the verticals")
    n = len(cyc)
    xmax, xmin = max(xs), min(xs)
    start = next(i for i in range(n) if xs[i] == xmax and xs[i - 1] != xmax)
    end = next(i for i in range(n) if xs[i] == xmin and xs[(i + 1) % n] != xmin)
    path = [cyc[start]]
    i = start
    while i != end:
        i = (i + 1) % n
        path.append(cyc[i])
    path.reverse()
    return path


def roof(d: SLDisk) -> list:
    """Roof edges left to right, each as (left vertex, right vertex)."""
    r = roof_vertices(d)
    return list(zip(r, r[1:]))


# -- keys and twin-keys ------------------------------------------------------

KEY = "Key"
TWIN_KEY = "TwinKey"


@dataclass(frozen=True)
class KeyFinding:
    kind: str
    triangles: tuple
    roof_faces: tuple
    apex: int
    foot: Point


def _roof_triangle(d, face):
    ts = d.edge_triangles[edge_key(*face)]
    assert len(ts) == 1, "roof face must be a boundary edge"
    t = ts[0]
    return t, next(w for w in t if w not in face)


def _is_key_face(d: SLDisk, face) -> bool:
    a, b = face
    pa, pb = d.points[a], d.points[b]
    if pa.x == pb.x:
        return False
    _, apex = _roof_triangle(d, face)
    if apex in d.boundary_set:
        return False
    lo, hi = min(pa.x, pb.x), max(pa.x, pb.x)
    return lo < d.points[apex].x < hi


def _is_twin_key(d: SLDisk, face_l, face_r) -> bool:
    tl, al = _roof_triangle(d, face_l)
    tr, ar = _roof_triangle(d, face_r)
    if tl == tr or al != ar or al in d.boundary_set:
        return False
    shared = set(tl) & set(tr)
    if len(shared) != 2:
        return False
    u, w = shared
    return d.points[u].x == d.points[w].x


def _foot_on(pa: Point, pb: Point, x: Fraction) -> Point:
    t = (x - pa.x) / (pb.x - pa.x)
    return Point(x, pa.y + t * (pb.y - pa.y))


def find_key_or_twinkey(d: SLDisk) -> KeyFinding:
    """Left-to-right roof scan; a key at step i wins over the twin-key (i-1, i)."""
    faces = roof(d)
    for i, face in enumerate(faces):
        if _is_key_face(d, face):
            t, apex = _roof_triangle(d, face)
            foot = _foot_on(d.points[face[0]], d.points[face[1]], d.points[apex].x)
            return KeyFinding(KEY, (t,), (face,), apex, foot)
        if i > 0 and _is_twin_key(d, faces[i - 1], face):
            tl, apex = _roof_triangle(d, faces[i - 1])
            tr, _ = _roof_triangle(d, face)
            top = face[0]
            return KeyFinding(TWIN_KEY, (tl, tr), (faces[i - 1], face), apex, d.points[top])
    raise NoKeyFound("roof scan found neither a key nor a twin-key")


def check_key_finding(d: SLDisk, kf: KeyFinding) -> list:
    """Re-verify a finding against the definitions directly; returns problems."""
    problems = []
    roof_edges = {edge_key(*e) for e in roof(d)}
    tri_set = {_canonical_triangle(t) for t in d.triangles}
    for t in kf.triangles:
        if _canonical_triangle(t) not in tri_set:
            problems.append(f"{t} is not a triangle of the disk")
    if kf.apex in d.boundary_set:
        problems.append("apex is not interior")
    for t, face in zip(kf.triangles, kf.roof_faces):
        if edge_key(*face) not in roof_edges:
            problems.append(f"{face} is not a roof edge")
        if set(face) | {kf.apex} != set(t):
            problems.append(f"apex is not the link of {face} in {t}")
    s = d.points[kf.apex]
    if kf.kind == KEY:
        (face,) = kf.roof_faces
        pa, pb = d.points[face[0]], d.points[face[1]]
        lo, hi = min(pa.x, pb.x), max(pa.x, pb.x)
        if not lo < s.x < hi:
            problems.append("apex does not project into the open roof face")
        elif kf.foot != _foot_on(pa, pb, s.x) or orientation(pa, pb, kf.foot) != 0:
            problems.append("foot is not the vertical projection of the apex")
    elif kf.kind == TWIN_KEY:
        tl, tr = kf.triangles
        shared = set(tl) & set(tr)
        if len(shared) != 2 or kf.apex not in shared:
            problems.append("twin-key triangles are not adjacent along the apex")
        else:
            (top,) = shared - {kf.apex}
            if d.points[top].x != s.x:
                problems.append("shared edge is not vertical")
            if kf.foot != d.points[top]:
                problems.append("foot is not the upper end of the shared edge")
    else:
        problems.append(f"unknown kind {kf.kind}")
    return problems


# -- splitting ------------------------------------------------------------------


def split_at(d: SLDisk, e) -> tuple:
    """Cut along a spanning edge; the first piece holds the triangle that
    contains the directed edge (e[0], e[1])."""
    e = tuple(e)
    if edge_key(*e) not in set(spanning_simplices(d)):
        raise NotSpanning(f"{e} is not a spanning edge")
    ta, tb = d.edge_triangles[edge_key(*e)]
    first = ta if _has_directed(ta, e[0], e[1]) else tb
    cut = edge_key(*e)
    piece = _flood(d, first, cut)
    rest = [t for t in d.triangles if t not in piece]
    return d.sub_disk([t for t in d.triangles if t in piece]), d.sub_disk(rest)


def _has_directed(t, a, b) -> bool:
    i = t.index(a)
    return t[(i + 1) % 3] == b


def _flood(d: SLDisk, start, cut) -> set:
    seen = {start}
    stack = [start]
    while stack:
        t = stack.pop()
        for a, b in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
            k = edge_key(a, b)
            if k == cut:
                continue
            for u in d.edge_triangles[k]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
    return seen


def piece_containing(d: SLDisk, cut, vertex) -> SLDisk:
    """The piece of ``split_at(d, cut)`` that contains ``vertex``."""
    p1, p2 = split_at(d, cut)
    return p1 if vertex in p1.points else p2
