"""Exact H-polytopes ``{z : l_j(z) >= 0}`` and the queries built on the LP."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, gcd
from typing import Sequence

from ..errors import DimensionTooHigh, RayUnbounded, UnboundedPolytope
from . import lp

_ZERO = Fraction(0)


class _Outcome:
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


INFEASIBLE = _Outcome("Infeasible")
UNBOUNDED = _Outcome("Unbounded")


@dataclass(frozen=True)
class AffineForm:
    coeffs: tuple
    const: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "const", Fraction(self.const))

    def __call__(self, z) -> Fraction:
        return self.const + sum((a * v for a, v in zip(self.coeffs, z)), _ZERO)

    def directional(self, d) -> Fraction:
        return sum((a * v for a, v in zip(self.coeffs, d)), _ZERO)

    def is_constant(self) -> bool:
        return not any(self.coeffs)


@dataclass(frozen=True)
class HPolytope:
    forms: tuple
    dimension: int

    def __post_init__(self):
        object.__setattr__(self, "forms", tuple(self.forms))
        for f in self.forms:
            if len(f.coeffs) != self.dimension:
                raise ValueError("form length does not match the dimension")

    @classmethod
    def of(cls, rows: Sequence, dimension: int | None = None) -> "HPolytope":
        """From ``[(coeffs, const), ...]``."""
        forms = tuple(AffineForm(tuple(c), k) for c, k in rows)
        if dimension is None:
            dimension = len(forms[0].coeffs)
        return cls(forms, dimension)

    def values(self, z) -> list:
        return [f(z) for f in self.forms]

    def contains(self, z) -> bool:
        return all(v >= 0 for v in self.values(z))

    def strictly_contains(self, z) -> bool:
        return all(v > 0 for v in self.values(z))

    def with_forms(self, extra) -> "HPolytope":
        return HPolytope(self.forms + tuple(extra), self.dimension)


def _as_lp(forms, n):
    # l(z) >= 0  <=>  -coeffs . z <= const
    A = [[-a for a in f.coeffs] for f in forms]
    b = [f.const for f in forms]
    return A, b


def lp_extremum(P: HPolytope, objective: Sequence, sense: str = "max"):
    """Exact optimum of ``objective . z`` over P, or UNBOUNDED / INFEASIBLE."""
    n = P.dimension
    if n == 0:
        return _ZERO if all(f.const >= 0 for f in P.forms) else INFEASIBLE
    A, b = _as_lp(P.forms, n)
    res = lp.solve(A, b, objective, maximize=(sense == "max"))
    if res.status == lp.INFEASIBLE:
        return INFEASIBLE
    if res.status == lp.UNBOUNDED:
        return UNBOUNDED
    return res.value


def lp_argextremum(P: HPolytope, objective: Sequence, sense: str = "max"):
    A, b = _as_lp(P.forms, P.dimension)
    return lp.solve(A, b, objective, maximize=(sense == "max"))


def max_margin(strict: Sequence[AffineForm], weak: Sequence[AffineForm], n: int):
    """Maximise t subject to l(z) >= t for strict forms, l(z) >= 0 for weak
    ones and t <= 1.  Returns (t, z) or None when the system is infeasible."""
    if n == 0:
        if any(f.const < 0 for f in weak):
            return None
        t = min([f.const for f in strict] + [Fraction(1)])
        return t, ()
    A, b = [], []
    for f in strict:
        A.append([-a for a in f.coeffs] + [Fraction(1)])
        b.append(f.const)
    for f in weak:
        A.append([-a for a in f.coeffs] + [_ZERO])
        b.append(f.const)
    A.append([_ZERO] * n + [Fraction(1)])
    b.append(Fraction(1))
    res = lp.solve(A, b, [_ZERO] * n + [Fraction(1)], maximize=True)
    if res.status != lp.OPTIMAL:
        # t -> -inf is always allowed, so only weak constraints can fail
        return None
    return res.value, res.point[:n]


def feasible_interior(P: HPolytope):
    """A point where every form is strictly positive, or INFEASIBLE."""
    out = max_margin(P.forms, (), P.dimension)
    if out is None or out[0] <= 0:
        return INFEASIBLE
    return tuple(out[1])


def strictly_feasible(strict, weak, n) -> bool:
    """Some z has l(z) > 0 for the strict forms and l(z) >= 0 for the weak ones."""
    if n == 0 or any(f.const < 0 for f in weak):
        out = max_margin(strict, weak, n)
        return out is not None and out[0] > 0
    # shift the margin so the origin is a feasible start: no phase 1, and we
    # stop as soon as the margin turns positive
    t0 = min([f.const for f in strict] + [Fraction(1)])
    A, b = [], []
    for f in strict:
        A.append([-a for a in f.coeffs] + [Fraction(1)])
        b.append(f.const - t0)
    for f in weak:
        A.append([-a for a in f.coeffs] + [_ZERO])
        b.append(f.const)
    A.append([_ZERO] * n + [Fraction(1)])
    b.append(1 - t0)
    res = lp.solve(A, b, [_ZERO] * n + [Fraction(1)], maximize=True, stop_above=-t0)
    return res.status in (lp.OPTIMAL, lp.REACHED) and res.value + t0 > 0


def is_bounded(P: HPolytope) -> bool:
    """True if P is empty or bounded in every coordinate direction."""
    n = P.dimension
    for i in range(n):
        e = [Fraction(int(i == j)) for j in range(n)]
        for sense in ("max", "min"):
            v = lp_extremum(P, e, sense)
            if v is INFEASIBLE:
                return True
            if v is UNBOUNDED:
                return False
    return True


def unbounded_directions(P: HPolytope) -> list:
    """Coordinate directions (index, +1/-1) along which P is unbounded."""
    out = []
    for i in range(P.dimension):
        e = [Fraction(int(i == j)) for j in range(P.dimension)]
        for sense, sgn in (("max", 1), ("min", -1)):
            if lp_extremum(P, e, sense) is UNBOUNDED:
                out.append((i, sgn))
    return out


# -- linear algebra helpers ------------------------------------------------


def _rank(rows) -> int:
    M = [list(r) for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c] != 0:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def _solve_square(A, b):
    """Unique solution of A z = b, or None if singular."""
    n = len(A)
    M = [list(map(Fraction, A[i])) + [Fraction(b[i])] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        p = M[c][c]
        M[c] = [v / p for v in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * r for a, r in zip(M[i], M[c])]
    return tuple(M[i][n] for i in range(n))


def affine_rank(points) -> int:
    pts = list(points)
    if not pts:
        return -1
    base = pts[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    return _rank(diffs) if diffs else 0


def affine_dimension(P: HPolytope) -> int:
    """Dimension of P (-1 when empty), using implicit equalities."""
    n = P.dimension
    if n == 0:
        return 0 if all(f.const >= 0 for f in P.forms) else -1
    if feasible_interior(P) is not INFEASIBLE:
        return n
    if lp_extremum(P, [_ZERO] * n) is INFEASIBLE:
        return -1
    equalities = []
    for f in P.forms:
        if f.is_constant():
            continue
        top = lp_extremum(P, f.coeffs, "max")
        if top is not UNBOUNDED and top + f.const == 0:
            equalities.append(f.coeffs)
    return n - (_rank(equalities) if equalities else 0)


# -- vertices and centroid ------------------------------------------------------

MAX_VERTEX_DIM = 4


def vertices(P: HPolytope) -> list:
    n = P.dimension
    if n > MAX_VERTEX_DIM:
        raise DimensionTooHigh(f"vertex enumeration limited to dimension {MAX_VERTEX_DIM}")
    if not is_bounded(P):
        raise UnboundedPolytope("polytope is unbounded")
    if n == 0:
        return [()] if P.contains(()) else []
    live = [f for f in P.forms if not f.is_constant()]
    if any(f.const < 0 for f in P.forms if f.is_constant()):
        return []
    found = set()
    for combo in combinations(live, n):
        z = _solve_square([f.coeffs for f in combo], [-f.const for f in combo])
        if z is not None and P.contains(z):
            found.add(z)
    return sorted(found)


def _simplex_volume(simplex) -> Fraction:
    base = simplex[0]
    rows = [[a - b for a, b in zip(p, base)] for p in simplex[1:]]
    k = len(rows)
    det = _det(rows)
    return abs(det) / factorial(k)


def _det(M) -> Fraction:
    n = len(M)
    if n == 0:
        return Fraction(1)
    M = [list(r) for r in M]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return _ZERO
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] / M[c][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return det


def _mean(points) -> tuple:
    k = len(points)
    return tuple(sum(cs, _ZERO) / k for cs in zip(*points))


def triangulate(P: HPolytope, verts=None, apex=None) -> list:
    """Full-dimensional simplices covering P, coned from ``apex``.

    ``apex`` defaults to the vertex average; faces are coned recursively
    from their own vertex averages.
    """
    n = P.dimension
    verts = vertices(P) if verts is None else verts
    if affine_rank(verts) != n:
        raise ValueError("polytope has empty interior")
    faces = _facets(P, verts, frozenset(), n)
    top = _mean(verts) if apex is None else tuple(apex)
    out = []
    for fv, active in faces:
        for s in _triangulate_face(P, fv, active, n - 1):
            out.append(s + [top])
    return out


def _facets(P, verts, active, k):
    """Faces of dimension k-1 of the face with the given active forms."""
    seen = set()
    out = []
    for j, f in enumerate(P.forms):
        if j in active or f.is_constant():
            continue
        on = frozenset(v for v in verts if f(v) == 0)
        if len(on) < k or on in seen:
            continue
        if affine_rank(on) == k - 1:
            seen.add(on)
            out.append((sorted(on), active | {j}))
    return out


def _triangulate_face(P, verts, active, k):
    if k == 0:
        return [[verts[0]]]
    c = _mean(verts)
    out = []
    for fv, act in _facets(P, verts, active, k):
        for s in _triangulate_face(P, fv, act, k - 1):
            out.append(s + [c])
    return out


def centroid(P: HPolytope, apex=None) -> tuple:
    """Exact volume centroid."""
    n = P.dimension
    if n == 0:
        return ()
    simplices = triangulate(P, apex=apex)
    total = _ZERO
    acc = [_ZERO] * n
    for s in simplices:
        w = _simplex_volume(s)
        if w == 0:
            continue
        m = _mean(s)
        total += w
        for i in range(n):
            acc[i] += w * m[i]
    return tuple(a / total for a in acc)


def volume(P: HPolytope) -> Fraction:
    return sum((_simplex_volume(s) for s in triangulate(P)), _ZERO)


# -- radial parametrisation -------------------------------------------------------


def canonical_direction(d) -> tuple:
    """Positive rescaling of d to coprime integers (sign is kept)."""
    d = [Fraction(v) for v in d]
    if not any(d):
        raise ValueError("zero direction")
    den = 1
    for v in d:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in d]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    return tuple(Fraction(v // g) for v in ints)


def radial_to_boundary(P: HPolytope, c, direction):
    """First boundary point on the ray from c; returns (point, active indices)."""
    direction = tuple(Fraction(v) for v in direction)
    if not any(direction):
        raise ValueError("zero direction")
    best = None
    active = []
    for j, f in enumerate(P.forms):
        slope = f.directional(direction)
        if slope < 0:
            t = f(c) / -slope
            if best is None or t < best:
                best, active = t, [j]
            elif t == best:
                active.append(j)
    if best is None:
        raise RayUnbounded("ray never leaves the polytope")
    point = tuple(ci + best * di for ci, di in zip(c, direction))
    return point, active


class RadialChart:
    """Cone-over-boundary chart of a bounded polytope around an interior centre.

    ``forward(direction, t)`` is ``c + t (a - c)`` with ``a`` the boundary
    point on the ray; ``inverse`` recovers the canonical direction and t.
    """

    def __init__(self, P: HPolytope, c=None):
        self.P = P
        self.center = tuple(Fraction(v) for v in (centroid(P) if c is None else c))
        if not P.strictly_contains(self.center):
            raise ValueError("chart centre must be strictly interior")

    def boundary_point(self, direction):
        return radial_to_boundary(self.P, self.center, direction)[0]

    def forward(self, direction, t) -> tuple:
        t = Fraction(t)
        if not 0 <= t <= 1:
            raise ValueError("t must lie in [0, 1]")
        a = self.boundary_point(direction)
        return tuple(ci + t * (ai - ci) for ci, ai in zip(self.center, a))

    def inverse(self, point):
        point = tuple(Fraction(v) for v in point)
        d = tuple(p - c for p, c in zip(point, self.center))
        if not any(d):
            return None, Fraction(0)
        a = self.boundary_point(d)
        k = next(i for i, v in enumerate(d) if v != 0)
        t = d[k] / (a[k] - self.center[k])
        return canonical_direction(d), t


def radial_chart(P: HPolytope, c=None) -> RadialChart:
    return RadialChart(P, c)
