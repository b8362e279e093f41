"""Random SL disks for tests and the acceptance corpus.

All randomness flows through a ``random.Random(seed)`` so output is a pure
function of the arguments.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .disk import (CONVEX, NOT_CONVEX, STRICTLY_CONVEX, SLDisk, boundary_circle, convexity,
                   edge_key, is_TrV, spanning_simplices, validate)
from .errors import GenerationFailed
from .geometry import Point, orientation

TRV = "TrV"
SHAPES = (STRICTLY_CONVEX, CONVEX, TRV)
MAX_RETRIES = 50


def _circle_point(t: Fraction) -> Point:
    # rational parametrisation of the unit circle, scaled to keep numbers small
    d = 1 + t * t
    return Point(4 * (1 - t * t) / d, 4 * 2 * t / d)


def _circle_points(rng, k) -> list:
    ts = set()
    while len(ts) < k:
        ts.add(Fraction(rng.randint(-12, 12), rng.randint(1, 4)))
    return [_circle_point(t) for t in sorted(ts)]


def _random_inner_point(rng, pts, tri):
    a, b, c = (pts[v] for v in tri)
    if rng.random() < 1 / 3:
        # try to share an x-coordinate with an existing vertex so that
        # vertical alignments (twin-keys, vertical edges) show up
        xs = sorted({p.x for p in pts.values()
                     if min(a.x, b.x, c.x) < p.x < max(a.x, b.x, c.x)})
        if xs:
            x = rng.choice(xs)
            ys = []
            for p, q in ((a, b), (b, c), (c, a)):
                if min(p.x, q.x) <= x <= max(p.x, q.x) and p.x != q.x:
                    ys.append(p.y + (q.y - p.y) * (x - p.x) / (q.x - p.x))
            lo, hi = min(ys), max(ys)
            if lo < hi:
                w = Fraction(rng.randint(1, 5), 6)
                return Point(x, lo + w * (hi - lo))
    w = [rng.randint(1, 6) for _ in range(3)]
    s = sum(w)
    return Point(sum(wi * p.x for wi, p in zip(w, (a, b, c))) / s,
                 sum(wi * p.y for wi, p in zip(w, (a, b, c))) / s)


def _insert_interior(rng, pts, tris):
    i = rng.randrange(len(tris))
    a, b, c = tris[i]
    p = _random_inner_point(rng, pts, tris[i])
    if p in pts.values():
        return False
    v = max(pts) + 1
    pts[v] = p
    tris[i:i + 1] = [(a, b, v), (b, c, v), (c, a, v)]
    return True


def _boundary_edges(tris):
    directed = {(t[k], t[(k + 1) % 3]) for t in tris for k in range(3)}
    return [(a, b) for a, b in directed if (b, a) not in directed]


def _subdivide_boundary_edge(rng, pts, tris):
    a, b = sorted(_boundary_edges(tris))[rng.randrange(len(_boundary_edges(tris)))]
    t = next(t for t in tris if a in t and b in t)
    c = next(w for w in t if w not in (a, b))
    lam = Fraction(rng.randint(1, 5), 6)
    m = Point(pts[a].x + lam * (pts[b].x - pts[a].x), pts[a].y + lam * (pts[b].y - pts[a].y))
    v = max(pts) + 1
    pts[v] = m
    tris.remove(t)
    tris.extend([(a, v, c), (v, b, c)])


def _ear_clip(pts, cycle) -> list:
    poly = list(cycle)
    tris = []
    while len(poly) > 3:
        n = len(poly)
        for i in range(n):
            a, b, c = poly[i - 1], poly[i], poly[(i + 1) % n]
            if orientation(pts[a], pts[b], pts[c]) <= 0:
                continue
            if any(_in_closed_triangle(pts[w], pts[a], pts[b], pts[c])
                   for w in poly if w not in (a, b, c)):
                continue
            tris.append((a, b, c))
            poly.pop(i)
            break
        else:
            raise GenerationFailed("ear clipping stalled")
    tris.append(tuple(poly))
    return tris


def _in_closed_triangle(p, a, b, c) -> bool:
    return orientation(a, b, p) >= 0 and orientation(b, c, p) >= 0 and orientation(c, a, p) >= 0


def _monotone_polygon(rng, n):
    """x-monotone polygon with n vertices; returns points and ccw cycle."""
    vertical_left = n >= 4 and rng.random() < 0.3
    vertical_right = n >= 4 + vertical_left and rng.random() < 0.3
    n_x = n - vertical_left - vertical_right
    xs = sorted(rng.sample(range(0, 6 * n), n_x))
    lower, upper = [], []
    pts = {}

    def add(x, y):
        v = len(pts)
        pts[v] = Point(Fraction(x), Fraction(y))
        return v

    for k, x in enumerate(xs):
        end = k in (0, n_x - 1)
        if end and ((k == 0 and vertical_left) or (k == n_x - 1 and vertical_right)):
            lo = add(x, Fraction(rng.randint(-8, 0), 2))
            hi = add(x, Fraction(rng.randint(4, 12), 2))
            lower.append(lo)
            upper.append(hi)
        elif end:
            v = add(x, Fraction(rng.randint(1, 6), 2))
            lower.append(v)
            upper.append(v)
        elif rng.random() < 0.5:
            lower.append(add(x, Fraction(rng.randint(-8, 2), 2)))
        else:
            upper.append(add(x, Fraction(rng.randint(4, 14), 2)))
    # ccw: lower chain left to right, then upper chain right to left
    cycle = list(lower)
    for v in reversed(upper):
        if v not in cycle:
            cycle.append(v)
    return pts, cycle


def generate_disk(seed: int, n_interior: int, n_boundary: int, shape: str = STRICTLY_CONVEX) -> SLDisk:
    """A valid random disk with the requested vertex counts and boundary class."""
    if n_boundary < 3:
        raise ValueError("n_boundary must be at least 3")
    if shape not in SHAPES:
        raise ValueError(f"unknown shape {shape!r}")
    rng = random.Random(seed)
    for _ in range(MAX_RETRIES):
        d = _attempt(rng, n_interior, n_boundary, shape)
        if d is not None:
            return d
    raise GenerationFailed(f"no valid disk after {MAX_RETRIES} attempts")


def _attempt(rng, n_interior, n_boundary, shape):
    if shape == TRV:
        pts, cycle = _monotone_polygon(rng, n_boundary)
        tris = _ear_clip(pts, cycle)
        n_flat = 0
    else:
        n_flat = 0
        if shape == CONVEX:
            n_flat = rng.randint(1, n_boundary - 3) if n_boundary > 3 else 0
        circ = _circle_points(rng, n_boundary - n_flat)
        pts = {i: p for i, p in enumerate(circ)}
        first = sorted(rng.sample(range(len(circ)), 3))
        tris = [tuple(first)]
        hull = list(first)
        rest = [i for i in range(len(circ)) if i not in first]
        rng.shuffle(rest)
        pending_interior = n_interior
        for v in rest:
            # interleave interior insertions with ear appends
            while pending_interior and rng.random() < 0.5:
                if _insert_interior(rng, pts, tris):
                    pending_interior -= 1
            pos = next((k for k in range(len(hull))
                        if _between(hull[k], v, hull[(k + 1) % len(hull)])), None)
            a, b = hull[pos], hull[(pos + 1) % len(hull)]
            tris.append((a, v, b))
            hull.insert(pos + 1, v)
        n_interior = pending_interior
        for _ in range(n_flat):
            _subdivide_boundary_edge(rng, pts, tris)
    tries = 0
    while n_interior:
        tries += 1
        if tries > 20 * (n_interior + 1):
            return None
        if _insert_interior(rng, pts, tris):
            n_interior -= 1
    d = SLDisk(pts, tuple(tris))
    if not validate(d).valid:
        return None
    cls = convexity(boundary_circle(d))
    if shape == STRICTLY_CONVEX and cls != STRICTLY_CONVEX:
        return None
    if shape == CONVEX and n_flat and cls != CONVEX:
        return None
    if shape == TRV and not is_TrV(d):
        return None
    return d


def _between(a, v, b):
    # circle points are labelled in ccw angular order; v lies on the arc a->b
    if a < b:
        return a < v < b
    return v > a or v < b


def subdivide_spanning(d: SLDisk) -> SLDisk:
    """Insert a midpoint on every spanning edge until the disk is simple."""
    pts = dict(d.points)
    tris = list(d.triangles)
    while True:
        cur = SLDisk(pts, tuple(tris))
        sp = spanning_simplices(cur)
        if not sp:
            return cur
        u, w = sp[0]
        t1, t2 = cur.edge_triangles[edge_key(u, w)]
        m = max(pts) + 1
        pts[m] = Point((pts[u].x + pts[w].x) / 2, (pts[u].y + pts[w].y) / 2)
        for t in (t1, t2):
            tris.remove(t)
            i = t.index(u)
            if t[(i + 1) % 3] == w:
                a = t[(i + 2) % 3]
                tris.extend([(u, m, a), (m, w, a)])
            else:
                b = t[(i + 1) % 3]
                tris.extend([(w, m, b), (m, u, b)])


def relabel(d: SLDisk) -> SLDisk:
    """Relabel vertices 0..n-1 in sorted label order."""
    order = {v: i for i, v in enumerate(d.vertex_ids)}
    return SLDisk({order[v]: p for v, p in d.points.items()},
                  tuple(tuple(order[v] for v in t) for t in d.triangles))


def build_corpus(seed: int = 0, size: int = 200, max_triangles: int = 30) -> list:
    """Named disks: a mix of shapes, with and without spanning simplices.

    Returns ``[(name, disk), ...]`` sorted by name; every disk has between
    3 and ``max_triangles`` triangles.
    """
    rng = random.Random(seed)
    out = []
    k = 0
    while len(out) < size:
        shape = SHAPES[k % 3]
        nb = rng.randint(3, 9)
        ni = rng.randint(0, 6)
        make_simple = k % 2 == 0
        sub_seed = rng.randrange(2 ** 31)
        k += 1
        try:
            d = generate_disk(sub_seed, ni, nb, shape)
        except GenerationFailed:
            continue
        if make_simple:
            d = subdivide_spanning(d)
        d = relabel(d)
        if not 3 <= len(d.triangles) <= max_triangles:
            continue
        tag = "simple" if not spanning_simplices(d) else "spanning"
        out.append((f"disk{len(out):03d}-{shape}-{tag}", d))
    return sorted(out)



# -- boundary data ----------------------------------------------------------------


def _rand_q(rng, lo, hi, den=8) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), den)


def _chains(d: SLDisk):
    """Upper and lower boundary chains (as vertex sets) of a TrV disk."""
    from .disk import roof_vertices

    roof = roof_vertices(d)
    pts = d.points
    # a vertical end run belongs to the roof; only its top stays upper
    while len(roof) > 1 and pts[roof[0]].x == pts[roof[1]].x:
        roof = roof[1:]
    while len(roof) > 1 and pts[roof[-1]].x == pts[roof[-2]].x:
        roof = roof[:-1]
    upper = set(roof)
    return upper, set(d.boundary) - upper


def convex_vertical_map(d: SLDisk, seed: int) -> dict:
    """Vertical boundary data with a strictly convex image.

    Upper chain vertices go to a concave parabola, the rest to its mirror;
    a random vertical shear and scale follow.  x-coordinates are kept.
    """
    rng = random.Random(seed)
    pts = d.points
    upper, _ = _chains(d)
    xs = [pts[v].x for v in d.boundary]
    xmin, xmax = min(xs), max(xs)
    left_vertical = sum(1 for x in xs if x == xmin) > 1
    right_vertical = sum(1 for x in xs if x == xmax) > 1
    span = xmax - xmin
    lo = xmin - (span / 4 if left_vertical else 0)
    hi = xmax + (span / 4 if right_vertical else 0)
    scale = _rand_q(rng, 1, 3) / (span * span)
    shear = _rand_q(rng, -1, 1)
    lift = _rand_q(rng, -2, 2)
    out = {}
    for v in d.boundary:
        x = pts[v].x
        h = scale * (x - lo) * (hi - x)
        y = h if v in upper else -h
        if (x == xmin and left_vertical) or (x == xmax and right_vertical):
            # spread a vertical end run evenly between its two end images
            ys = [pts[w].y for w in d.boundary if pts[w].x == x]
            y = -h + 2 * h * (pts[v].y - min(ys)) / (max(ys) - min(ys))
        out[v] = Point(x, y + shear * x + lift)
    return out


def vertical_shear_map(d: SLDisk, seed: int) -> dict:
    """Random vertical shear of the identity; keeps flat runs flat."""
    rng = random.Random(seed)
    a = _rand_q(rng, 1, 3)
    b = _rand_q(rng, -2, 2)
    c = _rand_q(rng, -2, 2)
    return {v: Point(p.x, a * p.y + b * p.x + c) for v, p in ((v, d.points[v]) for v in d.boundary)}


def random_projective(rng, points, tries: int = 100):
    """A random projective map that is positive-weight on ``points``."""
    from .geometry import ProjectiveMap

    for _ in range(tries):
        m = [[1 + _rand_q(rng, -1, 1, 4), _rand_q(rng, -1, 1, 4), _rand_q(rng, -2, 2, 2)],
             [_rand_q(rng, -1, 1, 4), 1 + _rand_q(rng, -1, 1, 4), _rand_q(rng, -2, 2, 2)],
             [_rand_q(rng, -1, 1, 16) / 8, _rand_q(rng, -1, 1, 16) / 8, Fraction(1)]]
        try:
            g = ProjectiveMap(m)
        except ValueError:
            continue
        if g.det > 0 and all(g.weight(p) > 0 for p in points):
            return g
    return ProjectiveMap.identity()


def projective_map_of(images: dict, seed: int) -> dict:
    """Push boundary data through a random orientation-preserving projective map."""
    rng = random.Random(seed)
    g = random_projective(rng, list(images.values()))
    return {v: g(p) for v, p in images.items()}


def boundary_maps(d: SLDisk, seed: int) -> dict:
    """Named boundary data for one disk: identity, vertical, projective and a
    strictly convex vertical image (valid input even when the disk itself is
    not convex)."""
    ident = {v: d.points[v] for v in d.boundary}
    convex = convexity(boundary_circle(d)) != NOT_CONVEX
    vert = vertical_shear_map(d, seed) if convex else convex_vertical_map(d, seed)
    return {
        "identity": ident,
        "vertical": vert,
        "projective": projective_map_of(ident if convex else vert, seed + 1),
        "parabolic": convex_vertical_map(d, seed + 2),
    }
