"""Extending boundary maps of SL disks to embeddings.

``vertical_extend`` keeps x-coordinates and solves the problem on disks
transverse to the verticals by peeling keys off the roof.  ``extend``
handles arbitrary convex boundary data by projective normalisation,
plateau collapsing and one vertical flattening step per level.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .disk import (KEY, NOT_CONVEX, SLCircle, SLDisk, convexity, edge_key, find_key_or_twinkey,
                   image_circle, is_TrV, natural_edges, roof_vertices, spanning_simplices, split_at,
                   validate)
from .errors import (ConsistencyError, GluingMismatch, InvalidDisk, NotBoundaryEmbedding,
                     NotConvexImage, NotTrV, NotVertical, Obstructive, PreconditionViolated)
from .geometry import (Point, is_simple_polygon, orientation, polygon_signed_vol, signed_vol,
                       simplest_between)
from .oracle import embedding_violations, is_embedding
from .reduction import plateau_collapse, simple_reduction_map

__all__ = [
    "is_vertical", "is_embedding", "obstructive_simplices", "vertical_extend",
    "evaluation_bound", "extend", "transpose", "transpose_map", "StepRecord",
]

DEFAULT_BELOW = Fraction(1, 2)
MAX_HALVINGS = 20


def is_vertical(d: SLDisk, m: Mapping) -> bool:
    return all(Fraction(m[v][0]) == d.points[v].x for v in m)


def _collinear(points) -> bool:
    a, b = points[0], points[-1]
    return all(orientation(a, b, p) == 0 for p in points[1:-1])


def obstructive_simplices(d: SLDisk, f: Mapping) -> list:
    """Spanning edges one of whose boundary arcs has a collinear image."""
    cyc = d.boundary
    n = len(cyc)
    pos = {v: i for i, v in enumerate(cyc)}
    out = []
    for u, w in spanning_simplices(d):
        i, j = pos[u], pos[w]
        arcs = ([cyc[(i + k) % n] for k in range((j - i) % n + 1)],
                [cyc[(j + k) % n] for k in range((i - j) % n + 1)])
        if any(_collinear([f[v] for v in arc]) for arc in arcs):
            out.append((u, w))
    return out


# -- vertical extension ---------------------------------------------------------


@dataclass(frozen=True)
class StepRecord:
    """One key-removal step: which flat pieces were split off next to the apex."""

    kind: str
    apex: int
    left: tuple | None
    right: tuple | None
    epsilon: Fraction


def _restrict(m: Mapping, d: SLDisk) -> dict:
    return {v: m[v] for v in d.boundary}


def _glue(*parts) -> dict:
    out = {}
    for part in parts:
        for v, p in part.items():
            q = out.setdefault(v, p)
            if q != p:
                raise GluingMismatch(f"vertex {v}: {q} vs {p}")
    return out


def _vertical_problems(d: SLDisk, v: Mapping) -> None:
    """Raise the first failed precondition of ``vertical_extend``."""
    missing = [w for w in d.boundary if w not in v]
    if missing:
        raise NotVertical(f"no boundary value for vertices {missing}")
    if not is_TrV(d):
        raise NotTrV("disk is not transverse to the verticals")
    if not is_vertical(d, {w: v[w] for w in d.boundary}):
        raise NotVertical("boundary data moves some x-coordinate")
    if convexity(image_circle(d, v)) == NOT_CONVEX:
        raise NotConvexImage("boundary image is not a convex ccw polygon")
    obs = obstructive_simplices(d, v)
    if obs:
        raise Obstructive(obs)


def vertical_extend(d: SLDisk, v: Mapping, trace: list | None = None, check: bool = True) -> dict:
    """Vertical embedding of ``d`` with the given boundary values.

    ``trace`` (if a list) collects a :class:`StepRecord` per key step.
    With ``check`` the input disk is validated and the result is run
    through the embedding oracle.
    """
    v = {w: Point.of(*v[w]) for w in v}
    if check:
        report = validate(d)
        if not report.valid:
            raise InvalidDisk(report.problems)
    _vertical_problems(d, v)
    out = _vext(d, _restrict(v, d), trace)
    if not is_vertical(d, out) or any(out[w] != v[w] for w in d.boundary):
        raise ConsistencyError("vertical extension lost its boundary data")
    if any(signed_vol(*(out[w] for w in t)) <= 0 for t in d.triangles):
        raise ConsistencyError("vertical extension has a non-positive triangle")
    if check and embedding_violations(d, out):
        raise ConsistencyError("vertical extension failed the embedding oracle")
    return out


def _foot(kf, d: SLDisk, v: Mapping) -> Point:
    if kf.kind == KEY:
        a, b = kf.roof_faces[0]
        pa, pb = v[a], v[b]
        x = d.points[kf.apex].x
        return Point(x, pa.y + (x - pa.x) / (pb.x - pa.x) * (pb.y - pa.y))
    return v[kf.roof_faces[1][0]]


def _flat_piece(k: SLDisk, e, v: Mapping):
    """Split along e; return (flat piece, other piece)."""
    p1, p2 = split_at(k, e)
    if _collinear([v[w] for w in p1.boundary]):
        return p1, p2
    if _collinear([v[w] for w in p2.boundary]):
        return p2, p1
    raise ConsistencyError(f"obstructive edge {e} bounds no flat piece")


def _descent_limit(d: SLDisk, images: Mapping, s, base: Point) -> Fraction | None:
    """Largest e0 such that moving s to base - (0, e) keeps every triangle of
    d at s positive for 0 <= e < e0 (None when unconstrained)."""
    limits = []
    for t in d.triangles_at(s):
        pts0 = [base if w == s else images[w] for w in t]
        pts1 = [Point(base.x, base.y - 1) if w == s else images[w] for w in t]
        vol0, vol1 = signed_vol(*pts0), signed_vol(*pts1)
        if vol0 <= 0:
            raise ConsistencyError(f"triangle {t} is not positive before the descent")
        slope = vol1 - vol0
        if slope < 0:
            limits.append(vol0 / -slope)
    return min(limits) if limits else None


def _vext(d: SLDisk, v: dict, trace) -> dict:
    if len(d.triangles) == 1:
        return dict(v)
    spanning = spanning_simplices(d)
    if spanning:
        d1, d2 = split_at(d, spanning[0])
        return _glue(_vext(d1, _restrict(v, d1), trace), _vext(d2, _restrict(v, d2), trace))

    kf = find_key_or_twinkey(d)
    s = kf.apex
    removed = set(kf.triangles)
    k1 = d.sub_disk([t for t in d.triangles if t not in removed])
    foot = _foot(kf, d, v)
    v1 = {w: v[w] for w in k1.boundary if w != s}
    v1[s] = foot

    obs = obstructive_simplices(k1, v1)
    left = right = None
    sx = d.points[s].x
    ends = []
    for e in obs:
        if s not in e:
            raise ConsistencyError(f"obstructive edge {e} misses the apex")
        w = e[0] if e[1] == s else e[1]
        if d.points[w].x == sx:
            raise ConsistencyError(f"obstructive edge {e} is vertical")
        ends.append((d.points[w].x, w))
    lefts = [w for x, w in sorted(ends) if x < sx]
    rights = [w for x, w in sorted(ends) if x > sx]
    flat_pieces = []
    k2 = k1
    if lefts:
        left = (s, lefts[0])
        piece, k2 = _flat_piece(k2, left, v1)
        flat_pieces.append(piece)
    if rights:
        right = (s, rights[-1])
        piece, k2 = _flat_piece(k2, right, v1)
        flat_pieces.append(piece)

    core = _vext(k2, _restrict(v1, k2), trace)
    limit = _descent_limit(k2, core, s, foot)
    s_eps = Point(foot.x, simplest_between(foot.y - (1 if limit is None else limit), foot.y))
    eps = foot.y - s_eps.y
    core[s] = s_eps
    if trace is not None:
        trace.append(StepRecord(kf.kind, s, left, right, eps))

    parts = [core]
    for piece in flat_pieces:
        pv = {w: v1[w] for w in piece.boundary}
        pv[s] = s_eps
        parts.append(_vext(piece, pv, trace))
    key_part = {w: v[w] for t in kf.triangles for w in t if w != s}
    key_part[s] = s_eps
    parts.append(key_part)
    out = _glue(*parts)
    for t in kf.triangles:
        if signed_vol(*(out[w] for w in t)) <= 0:
            raise ConsistencyError(f"key triangle {t} is not positive")
    return out


# -- evaluation bound -------------------------------------------------------------


def _concave(points) -> bool:
    return all(orientation(a, b, c) <= 0 for a, b, c in zip(points, points[1:], points[2:]))


def evaluation_bound_setup(d: SLDisk, u=None):
    """Check the preconditions; return (roof vertex list, u)."""
    if not is_TrV(d):
        raise PreconditionViolated("TrV", "disk is not transverse to the verticals")
    top = roof_vertices(d)
    pts = [d.points[w] for w in top]
    if not _concave(pts):
        raise PreconditionViolated("concave-roof", "roof is not concave")
    if all(orientation(a, b, c) == 0 for a, b, c in zip(pts, pts[1:], pts[2:])):
        # the roof is the segment itself, so no vertex can rise above it
        raise PreconditionViolated("concave-roof", "roof is a straight segment")
    if edge_key(top[0], top[-1]) in d.edge_triangles:
        raise PreconditionViolated("no-chord", "an edge joins the roof endpoints")
    rest = [w for w in d.boundary if w not in set(top)]
    if len(rest) != 1:
        raise PreconditionViolated("single-vertex", f"{len(rest)} boundary vertices lie off the roof")
    if u is not None and u != rest[0]:
        raise PreconditionViolated("single-vertex", f"vertex {u} is not the one off the roof")
    return top, rest[0]


def bound_system(d: SLDisk, u):
    """Volume system with y free at u and the interior vertices, rest pinned."""
    from .polytope.volume import VolumeSystem, build_system

    free = [u] + [w for w in d.interior_vertices]
    vs = VolumeSystem.vertical(d, free)
    return vs, build_system(vs)


def evaluation_bound(d: SLDisk, u=None) -> Fraction:
    """Supremum of the height of ``u`` over vertical embeddings fixing the roof.

    Computed from the dual program: minimise sum(const_j * lam_j) subject to
    sum(lam_j * grad_j) = -e_u, lam >= 0.
    """
    from .polytope import lp

    top, u = evaluation_bound_setup(d, u)
    vs, P = bound_system(d, u)
    n, m = vs.dimension, len(P.forms)
    # primal: max y_u s.t. -grad_j . z <= const_j ; dual: min const.lam, -grad^T lam = e_u
    rows, rhs = [], []
    for i in range(n):
        row = [-f.coeffs[i] for f in P.forms]
        target = Fraction(1 if i == 0 else 0)
        rows.append(row)
        rhs.append(target)
        rows.append([-a for a in row])
        rhs.append(-target)
    for j in range(m):
        row = [Fraction(0)] * m
        row[j] = Fraction(-1)
        rows.append(row)
        rhs.append(Fraction(0))
    res = lp.solve(rows, rhs, [f.const for f in P.forms], maximize=False)
    if res.status != lp.OPTIMAL:
        raise ConsistencyError(f"dual program is {res.status}")
    b = res.value
    a, c = d.points[top[0]], d.points[top[-1]]
    x = d.points[u].x
    chord = a.y + (x - a.x) / (c.x - a.x) * (c.y - a.y)
    if not b > chord:
        raise ConsistencyError(f"bound {b} is not above the roof chord ({chord})")
    return b


# -- general extension ------------------------------------------------------------


def _check_boundary_map(d: SLDisk, f: Mapping) -> None:
    missing = [w for w in d.boundary if w not in f]
    if missing:
        raise NotBoundaryEmbedding(f"no image for boundary vertices {missing}")
    pts = [f[w] for w in d.boundary]
    if not is_simple_polygon(pts):
        raise NotBoundaryEmbedding("boundary image is not a simple polygon")
    if polygon_signed_vol(pts) < 0:
        raise NotConvexImage("boundary image is clockwise")
    if convexity(image_circle(d, f)) == NOT_CONVEX:
        raise NotConvexImage("boundary image is not convex")
    obs = obstructive_simplices(d, f)
    if obs:
        raise Obstructive(obs)


def extend(d: SLDisk, f: Mapping, check: bool = True) -> dict:
    """An SL embedding of ``d`` agreeing with ``f`` on the boundary."""
    f = {w: Point.of(*f[w]) for w in f}
    if check:
        report = validate(d, geometric=False)
        if not report.valid:
            raise InvalidDisk(report.problems)
    _check_boundary_map(d, f)
    out = _extend(d, _restrict(f, d))
    if any(out[w] != f[w] for w in d.boundary):
        raise ConsistencyError("extension lost its boundary data")
    if check and embedding_violations(d, out):
        raise ConsistencyError("extension failed the embedding oracle")
    return out


def _lift_limit(d: SLDisk, images: Mapping, u, base: Point) -> Fraction | None:
    limits = []
    for t in d.triangles_at(u):
        pts0 = [base if w == u else images[w] for w in t]
        pts1 = [Point(base.x, base.y + 1) if w == u else images[w] for w in t]
        vol0, vol1 = signed_vol(*pts0), signed_vol(*pts1)
        if vol0 <= 0:
            raise ConsistencyError(f"triangle {t} is not positive before the lift")
        if vol1 < vol0:
            limits.append(vol0 / (vol0 - vol1))
    return min(limits) if limits else None


def _extend(d: SLDisk, f: dict) -> dict:
    if len(d.triangles) == 1:
        return dict(f)
    spanning = spanning_simplices(d)
    if spanning:
        d1, d2 = split_at(d, spanning[0])
        return _glue(_extend(d1, _restrict(f, d1)), _extend(d2, _restrict(f, d2)))

    circle = image_circle(d, f)
    runs = natural_edges(circle)
    plateaus = [r for r in runs if len(r) > 2]
    mu = min(plateaus or runs, key=lambda r: _bits(f[r[0]]) + _bits(f[r[-1]]))
    g = simple_reduction_map(circle, mu)
    fr = {w: g(p) for w, p in f.items()}
    if plateaus:
        reduced = SLCircle(circle.ids, tuple(fr[w] for w in circle.ids))
        f1 = plateau_collapse(reduced, disk=d, images=fr)
        flat = _extend(d, f1)
        res = _vext(d.with_points(flat), fr, None)
    else:
        res = _drop_base_triangle(d, fr, mu)
    ginv = g.inverse()
    out = {w: ginv(p) for w, p in res.items()}
    for w in f:
        if out[w] != f[w]:
            raise ConsistencyError(f"vertex {w} left its prescribed image")
    return simplify_interior(d, out)


def _bits(p: Point) -> int:
    return sum(q.numerator.bit_length() + q.denominator.bit_length() for q in p)


def simplify_interior(d: SLDisk, images: Mapping) -> dict:
    """Move each interior vertex to a low-denominator point of its star kernel.

    Every incident triangle stays positive, so with a simple boundary image
    the result is still an embedding.
    """
    out = dict(images)
    for v in d.interior_vertices:
        p = out[v]
        tris = d.triangles_at(v)
        k = 0
        while True:
            n = 2 ** k
            cand = Point(p.x.limit_denominator(n), p.y.limit_denominator(n))
            if cand == p or all(signed_vol(*(cand if w == v else out[w] for w in t)) > 0
                                for t in tris):
                out[v] = cand
                break
            k += 1
    return out


def _drop_base_triangle(d: SLDisk, fr: dict, mu) -> dict:
    """Reduced data whose base edge is a single edge: remove the triangle on
    it, push its apex below the base, extend, flatten, then lift."""
    a, b = mu
    (tau,) = d.edge_triangles[edge_key(a, b)]
    (u,) = [w for w in tau if w not in (a, b)]
    if u in d.boundary_set:
        raise ConsistencyError("triangle on the base edge has a boundary apex")
    rest = d.sub_disk([t for t in d.triangles if t != tau])
    below = DEFAULT_BELOW
    for _ in range(MAX_HALVINGS):
        f1 = {w: fr[w] for w in rest.boundary if w != u}
        f1[u] = Point(Fraction(1, 2), -below)
        if convexity(image_circle(rest, f1)) != NOT_CONVEX and not obstructive_simplices(rest, f1):
            break
        below /= 2
    else:
        raise ConsistencyError("no position below the base gives convex data")
    placed = _extend(rest, f1)
    v = {w: placed[w] for w in rest.boundary}
    on_base = Point(Fraction(1, 2), Fraction(0))
    v[u] = on_base
    flat = _vext(rest.with_points(placed), v, None)
    limit = _lift_limit(rest, flat, u, on_base)
    delta = simplest_between(0, 1 if limit is None else limit)
    out = dict(flat)
    out[u] = Point(on_base.x, delta)
    return out


# -- transposition ----------------------------------------------------------------


def transpose_map(m: Mapping) -> dict:
    return {w: Point(p[1], p[0]) for w, p in m.items()}


def transpose(d: SLDisk) -> SLDisk:
    """Swap x and y; each triangle's last two vertices swap to stay positive."""
    return SLDisk(transpose_map(d.points), tuple((t[0], t[2], t[1]) for t in d.triangles))
