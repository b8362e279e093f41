"""Projective normalisation of convex disks and plateau collapsing.

A convex circle is in reduced form when one natural edge is exactly
``[0,1] x {0}`` and every other vertex has ``0 < x < 1`` and ``y > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .disk import (NOT_CONVEX, SLCircle, SLDisk, boundary_circle, convexity, natural_edges,
                   strictly_convex_circle)
from .errors import ConsistencyError, NoPlateau, NotConvex, NotNaturalEdge
from .geometry import AT_INFINITY, COINCIDENT, Line, Point, ProjectiveMap, line_intersection

DEFAULT_DEPTH = Fraction(1, 4)
MAX_HALVINGS = 20


@dataclass(frozen=True)
class ReducedForm:
    map: ProjectiveMap
    disk: SLDisk
    base_edge: tuple  # vertex labels of the natural edge sent to [0,1] x {0}


def _oriented_line(p, q, inside) -> Line:
    line = Line.through(p, q)
    if line.value(inside) < 0:
        line = Line(-line.a, -line.b, -line.c)
    return line


def choose_vanishing_line(t, s1, s2, hull: Sequence) -> Line:
    """A line crossing the open segments (t, s1), (t, s2) and missing ``hull``.

    The line is taken parallel to [s1, s2], halfway between t and the hull
    in the direction of t.  For t at infinity any parallel beyond the hull
    on the side away from it is returned.
    """
    if t is not AT_INFINITY and (tuple(t) == tuple(s1) or tuple(t) == tuple(s2)):
        raise ValueError("t must differ from s1 and s2")
    inside = next((p for p in hull if Line.through(s1, s2).value(p) != 0), None)
    if inside is None:
        raise ValueError("hull is flat")
    base = _oriented_line(s1, s2, inside)
    vals = [base.value(p) for p in hull]
    lo, hi = min(vals), max(vals)
    if t is AT_INFINITY:
        level = lo - 1
    else:
        vt = base.value(t)
        if vt < lo:
            level = (vt + lo) / 2
        elif vt > hi:
            level = (vt + hi) / 2
        else:
            raise ValueError("no line parallel to the base separates t from the hull")
    return Line(base.a, base.b, base.c - level)


def _corner_context(c: SLCircle, mu):
    sc = strictly_convex_circle(c)
    ids = list(sc.ids)
    pts = dict(zip(sc.ids, sc.points))
    i1, i2 = ids.index(mu[0]), ids.index(mu[-1])
    n = len(ids)
    if (i1 + 1) % n != i2:
        raise NotNaturalEdge(f"{mu} is not a natural edge")
    s0, s1, s2, s3 = ids[i1 - 1], ids[i1], ids[i2], ids[(i2 + 1) % n]
    return pts, (s0, s1, s2, s3)


def _apex(pts, s0, s1, s2, s3):
    return line_intersection(Line.through(pts[s0], pts[s1]), Line.through(pts[s2], pts[s3]))


def reduction_map(c: SLCircle, mu: Sequence) -> ProjectiveMap:
    """A projective map putting the convex circle ``c`` in reduced form on ``mu``."""
    pts, (s0, s1, s2, s3) = _corner_context(c, mu)
    delta = _oriented_line(pts[s1], pts[s2], pts[s0])
    t = _apex(pts, s0, s1, s2, s3)
    if t is COINCIDENT:
        raise ConsistencyError("adjacent natural edges are collinear")
    h = ProjectiveMap.identity()
    if t is AT_INFINITY or delta.value(t) < 0:
        vanish = choose_vanishing_line(t, pts[s1], pts[s2], list(pts.values()))
        # q -> (q - s1) / w(q), w > 0 on the disk
        p1 = pts[s1]
        w = vanish.value(p1)
        sgn = 1 if w > 0 else -1
        a, b, cc = vanish.a * sgn, vanish.b * sgn, vanish.c * sgn
        h = ProjectiveMap(((1, 0, -p1.x), (0, 1, -p1.y), (a, b, cc)))
        pts = {v: h(p) for v, p in pts.items()}
        delta = _oriented_line(pts[s1], pts[s2], pts[s0])
        t = _apex(pts, s0, s1, s2, s3)
        if t is AT_INFINITY or t is COINCIDENT or delta.value(t) <= 0:
            raise ConsistencyError("projective step did not bring the apex to the disk side")
    p1, p2 = pts[s1], pts[s2]
    u = Point((p1.x + p2.x) / 2, (p1.y + p2.y) / 2)
    w1 = (p2.x - p1.x, p2.y - p1.y)
    w2 = (t.x - u.x, t.y - u.y)
    det = w1[0] * w2[1] - w2[0] * w1[1]
    # linear part = inverse of the matrix with columns w1, w2
    m = ((w2[1] / det, -w2[0] / det), (-w1[1] / det, w1[0] / det))
    tx = -(m[0][0] * p1.x + m[0][1] * p1.y)
    ty = -(m[1][0] * p1.x + m[1][1] * p1.y)
    A = ProjectiveMap.affine(m[0][0], m[0][1], m[1][0], m[1][1], tx, ty)
    return A @ h


def reduced_form_problems(c: SLCircle, base: Sequence) -> list:
    problems = []
    pos = dict(zip(c.ids, c.points))
    base = list(base)
    if pos[base[0]] != Point(Fraction(0), Fraction(0)):
        problems.append(f"base start {pos[base[0]]} is not (0, 0)")
    if pos[base[-1]] != Point(Fraction(1), Fraction(0)):
        problems.append(f"base end {pos[base[-1]]} is not (1, 0)")
    for v in base[1:-1]:
        p = pos[v]
        if not (p.y == 0 and 0 < p.x < 1):
            problems.append(f"base vertex {v} at {p} is off the open unit segment")
    xs = [pos[v].x for v in base]
    if xs != sorted(xs):
        problems.append("base vertices are not ordered left to right")
    for v in c.ids:
        if v in base:
            continue
        p = pos[v]
        if not (0 < p.x < 1 and p.y > 0):
            problems.append(f"vertex {v} at {p} is outside (0,1) x R+")
    return problems


def _resolve_edge(c: SLCircle, mu) -> tuple:
    runs = natural_edges(c)
    if isinstance(mu, int):
        if not 0 <= mu < len(runs):
            raise NotNaturalEdge(f"natural edge index {mu} out of range")
        return runs[mu]
    mu = tuple(mu)
    for r in runs:
        if r == mu or (len(mu) == 2 and (r[0], r[-1]) == mu):
            return r
    raise NotNaturalEdge(f"{mu} is not a natural edge")


def reduce(d: SLDisk, mu) -> ReducedForm:
    """Reduced form of a convex disk; ``mu`` is a natural-edge index, the
    full run of labels, or its (start, end) corner pair."""
    c = boundary_circle(d)
    if convexity(c) == NOT_CONVEX:
        raise NotConvex("boundary is not convex")
    run = _resolve_edge(c, mu)
    g = reduction_map(c, run)
    image = d.with_points({v: g(p) for v, p in d.points.items()})
    problems = reduced_form_problems(boundary_circle(image), run)
    if problems:
        raise ConsistencyError("; ".join(problems))
    return ReducedForm(g, image, run)


# -- plateaus -------------------------------------------------------------------


def base_run(c: SLCircle) -> tuple:
    """Labels on the bottom edge [0,1] x {0}, left to right."""
    pos = dict(zip(c.ids, c.points))
    ids = list(c.ids)
    origin = next((v for v in ids if pos[v] == (0, 0)), None)
    if origin is None:
        raise ValueError("circle is not in reduced form")
    i = ids.index(origin)
    run = [origin]
    while pos[run[-1]] != (1, 0):
        i = (i + 1) % len(ids)
        v = ids[i]
        if pos[v].y != 0:
            raise ValueError("circle is not in reduced form")
        run.append(v)
    return tuple(run)


def parabola_point(x, depth) -> Point:
    """Point on the strictly convex arc y = -4 depth x (1 - x) through (0,0), (1,0)."""
    return Point(x, -4 * depth * x * (1 - x))


def plateau_count(c: SLCircle) -> int:
    return sum(1 for r in natural_edges(c) if len(r) > 2)


def plateau_collapse(c: SLCircle, depth=DEFAULT_DEPTH, disk: SLDisk | None = None,
                     images: Mapping | None = None) -> dict:
    """Move the flat vertices of the bottom edge straight down onto a parabola.

    Returns new positions for every vertex of ``c`` (unmoved ones included).
    When ``disk`` is given, the depth is halved until no obstructive spanning
    simplex appears that was not there before.
    """
    run = base_run(c)
    inner = run[1:-1]
    if not inner:
        raise NoPlateau("bottom natural edge has no interior vertex")
    pos = dict(zip(c.ids, c.points))
    before = plateau_count(c)
    obstructed_before = None
    if disk is not None:
        from .extension import obstructive_simplices

        obstructed_before = set(obstructive_simplices(disk, images or pos))
    depth = Fraction(depth)
    for _ in range(MAX_HALVINGS):
        new = dict(pos)
        for v in inner:
            new[v] = parabola_point(pos[v].x, depth)
        circ = SLCircle(c.ids, tuple(new[v] for v in c.ids))
        ok = convexity(circ) != NOT_CONVEX and plateau_count(circ) == before - 1
        if ok and disk is not None:
            ok = set(obstructive_simplices(disk, new)) <= obstructed_before
        if ok:
            return new
        depth /= 2
    raise ConsistencyError("plateau collapse failed for every tried depth")


# -- small-coefficient variant --------------------------------------------------


def _base_similarity(p1: Point, p2: Point) -> ProjectiveMap:
    """Rotation-scaling plus translation sending p1 to (0,0) and p2 to (1,0)."""
    wx, wy = p2.x - p1.x, p2.y - p1.y
    n = wx * wx + wy * wy
    a, b, c, d = wx / n, wy / n, -wy / n, wx / n
    return ProjectiveMap.affine(a, b, c, d, -(a * p1.x + b * p1.y), -(c * p1.x + d * p1.y))


def _base_fixing(a, b, e, gamma) -> ProjectiveMap:
    # fixes (0,0), (1,0) and the x-axis; weight 1 at the origin
    return ProjectiveMap(((a, b, 0), (0, gamma, 0), (a - 1, e, 1)))


def simple_reduction_map(c: SLCircle, mu: Sequence, max_bits: int = 64) -> ProjectiveMap:
    """A reduction map for ``mu`` whose free coefficients are small rationals.

    Any reduction map factors as (a map fixing the unit base segment) after
    the similarity placing the base; the four free coefficients of the first
    factor are replaced by low-denominator approximations that still give a
    reduced form.
    """
    pos = dict(zip(c.ids, c.points))
    exact = reduction_map(c, mu)
    T = _base_similarity(pos[mu[0]], pos[mu[-1]])
    G = (exact @ T.inverse()).m
    w = G[2][2]
    a, b, e, gamma = G[0][0] / w, G[0][1] / w, G[2][1] / w, G[1][1] / w
    for k in range(max_bits + 1):
        n = 2 ** k
        ra, rb, re, rg = (q.limit_denominator(n) for q in (a, b, e, gamma))
        if ra <= 0 or rg <= 0:
            continue
        g = _base_fixing(ra, rb, re, rg) @ T
        if g.det <= 0 or any(g.weight(p) <= 0 for p in c.points):
            continue
        image = SLCircle(c.ids, tuple(g(p) for p in c.points))
        if not reduced_form_problems(image, mu):
            return g
    return exact
