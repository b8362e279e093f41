"""Exact rational planar geometry.

Scalars are :class:`fractions.Fraction` values (always reduced), points are
pairs of them.  Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence, Union

from .errors import VanishingLine

Rational = Fraction


def Q(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact coordinates")
    return Fraction(value)


def format_rational(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def simplest_between(lo, hi) -> Fraction:
    """The rational with the smallest denominator (then numerator) in the open
    interval (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("empty interval")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -simplest_between(-hi, -lo)
    n = lo.numerator // lo.denominator
    if n + 1 < hi:
        return Fraction(n + 1)
    if lo == n:
        return n + Fraction(1, int(1 / (hi - n)) + 1)
    return n + 1 / simplest_between(1 / (hi - n), 1 / (lo - n))


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, (str, int)) or isinstance(text, bool):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(Q(x), Q(y))

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def scale(self, k) -> "Point":
        return Point(self.x * k, self.y * k)

    def __repr__(self) -> str:
        return f"({format_rational(self.x)}, {format_rational(self.y)})"


def signed_vol(p, q, r) -> Fraction:
    """det [[1,px,py],[1,qx,qy],[1,rx,ry]], i.e. twice the signed area."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (r[0] - p[0]) * (q[1] - p[1])


def orientation(p, q, r) -> int:
    v = signed_vol(p, q, r)
    return (v > 0) - (v < 0)


def sign(v) -> int:
    return (v > 0) - (v < 0)


def cross(u, v) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def on_segment(p, a, b) -> bool:
    """True if p lies on the closed segment [a, b]."""
    if orientation(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segments_intersect(a, b, c, d) -> bool:
    """Closed segments [a,b] and [c,d] share at least one point."""
    o1, o2 = orientation(a, b, c), orientation(a, b, d)
    o3, o4 = orientation(c, d, a), orientation(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return ((o1 == 0 and on_segment(c, a, b)) or (o2 == 0 and on_segment(d, a, b))
            or (o3 == 0 and on_segment(a, c, d)) or (o4 == 0 and on_segment(b, c, d)))


class _Marker:
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


AT_INFINITY = _Marker("AtInfinity")
COINCIDENT = _Marker("Coincident")


class Line(NamedTuple):
    """The locus a*x + b*y + c = 0."""

    a: Fraction
    b: Fraction
    c: Fraction

    @classmethod
    def through(cls, p, q) -> "Line":
        if p[0] == q[0] and p[1] == q[1]:
            raise ValueError("a line needs two distinct points")
        a = q[1] - p[1]
        b = p[0] - q[0]
        return cls(Q(a), Q(b), Q(-(a * p[0] + b * p[1])))

    @classmethod
    def of(cls, a, b, c) -> "Line":
        a, b, c = Q(a), Q(b), Q(c)
        if a == 0 and b == 0:
            raise ValueError("(a, b) must not both vanish")
        return cls(a, b, c)

    def value(self, p) -> Fraction:
        return self.a * p[0] + self.b * p[1] + self.c

    def side(self, p) -> int:
        return sign(self.value(p))


def line_intersection(l1: Line, l2: Line) -> Union[Point, _Marker]:
    det = l1.a * l2.b - l2.a * l1.b
    if det == 0:
        # parallel; coincident iff (a, b, c) proportional
        if (l1.a * l2.c - l2.a * l1.c == 0) and (l1.b * l2.c - l2.b * l1.c == 0):
            return COINCIDENT
        return AT_INFINITY
    x = (l1.b * l2.c - l2.b * l1.c) / det
    y = (l2.a * l1.c - l1.a * l2.c) / det
    return Point(x, y)


def _det3(m) -> Fraction:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


class ProjectiveMap:
    """A projective transformation acting on (x, y, 1) column vectors.

    The image of p is (X/W, Y/W) where (X, Y, W) = m (p.x, p.y, 1)^T; the
    vanishing line is the zero set of the last row.
    """

    __slots__ = ("m",)

    def __init__(self, m: Sequence[Sequence]):
        rows = tuple(tuple(Q(v) for v in row) for row in m)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("projective map needs a 3x3 matrix")
        if _det3(rows) == 0:
            raise ValueError("singular projective matrix")
        self.m = rows

    @classmethod
    def identity(cls) -> "ProjectiveMap":
        return cls(((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    @classmethod
    def affine(cls, a, b, c, d, tx, ty) -> "ProjectiveMap":
        """(x, y) -> (a x + b y + tx, c x + d y + ty)."""
        return cls(((a, b, tx), (c, d, ty), (0, 0, 1)))

    @property
    def det(self) -> Fraction:
        return _det3(self.m)

    def is_affine(self) -> bool:
        return self.m[2][0] == 0 and self.m[2][1] == 0

    def vanishing_line(self) -> Line | None:
        a, b, c = self.m[2]
        if a == 0 and b == 0:
            return None
        return Line(a, b, c)

    def weight(self, p) -> Fraction:
        a, b, c = self.m[2]
        return a * p[0] + b * p[1] + c

    def __call__(self, p) -> Point:
        m = self.m
        w = m[2][0] * p[0] + m[2][1] * p[1] + m[2][2]
        if w == 0:
            raise VanishingLine(f"{p!r} lies on the vanishing line")
        x = m[0][0] * p[0] + m[0][1] * p[1] + m[0][2]
        y = m[1][0] * p[0] + m[1][1] * p[1] + m[1][2]
        return Point(x / w, y / w)

    def __matmul__(self, other: "ProjectiveMap") -> "ProjectiveMap":
        a, b = self.m, other.m
        return ProjectiveMap(tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
            for i in range(3)))

    def inverse(self) -> "ProjectiveMap":
        m = self.m
        det = _det3(m)
        cof = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                r = [k for k in range(3) if k != i]
                c = [k for k in range(3) if k != j]
                minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
                cof[i][j] = minor if (i + j) % 2 == 0 else -minor
        # adjugate / det
        return ProjectiveMap(tuple(tuple(cof[j][i] / det for j in range(3))
                                   for i in range(3)))

    def normalized(self) -> "ProjectiveMap":
        """Same map, matrix scaled so the bottom-right nonzero entry is 1."""
        flat = [v for row in self.m for v in row]
        pivot = next(v for v in reversed(flat) if v != 0)
        return ProjectiveMap(tuple(tuple(v / pivot for v in row) for row in self.m))

    def __eq__(self, other):
        if not isinstance(other, ProjectiveMap):
            return NotImplemented
        return self.normalized().m == other.normalized().m

    def __hash__(self):
        return hash(self.normalized().m)

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(format_rational(v) for v in r) + "]"
                         for r in self.m)
        return f"ProjectiveMap([{rows}])"


def apply_projective(g: ProjectiveMap, p) -> Point:
    return g(p)


def polygon_signed_vol(points: Sequence) -> Fraction:
    """Sum of fan determinants; twice the signed area of the polygon."""
    n = len(points)
    total = Fraction(0)
    for i in range(n):
        p, q = points[i], points[(i + 1) % n]
        total += p[0] * q[1] - q[0] * p[1]
    return total


def is_simple_polygon(points: Sequence) -> bool:
    """Brute-force simplicity test for a closed polygon (O(n^2))."""
    n = len(points)
    if n < 3 or len(set(points)) != n:
        return False
    edges = [(points[i], points[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        a, b = edges[i]
        # consecutive edges [a,b], [b,c] may only share b
        c = edges[(i + 1) % n][1]
        if on_segment(c, a, b) or on_segment(a, b, c):
            return False
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if segments_intersect(a, b, *edges[j]):
                return False
    return polygon_signed_vol(points) != 0
