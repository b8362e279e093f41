"""Signed-volume systems: one affine form per triangle of a disk.

Each triangle's determinant is expanded in the free coordinates, with all
other coordinates substituted.  The expansion is exact and refuses to
produce a form when two free coordinates multiply each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..disk import SLDisk
from ..geometry import Point
from .hpoly import AffineForm, HPolytope

_ZERO = Fraction(0)
X, Y = "x", "y"


@dataclass(frozen=True)
class VolumeSystem:
    """Which vertex coordinates are unknowns, and the values of the rest.

    ``variables`` orders the unknowns as ``(vertex, "x" | "y")`` pairs;
    ``values`` supplies every coordinate that is not an unknown.
    """

    disk: SLDisk
    variables: tuple
    values: Mapping[int, Point] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple((int(v), a) for v, a in self.variables))
        free = set(self.variables)
        for v in self.disk.vertex_ids:
            for axis in (X, Y):
                if (v, axis) not in free and v not in self.values:
                    raise ValueError(f"coordinate {axis} of vertex {v} is neither free nor pinned")

    @classmethod
    def vertical(cls, disk: SLDisk, free_vertices: Sequence, values: Mapping | None = None) -> "VolumeSystem":
        """y free for ``free_vertices``; x (and the rest) from ``values``."""
        values = disk.points if values is None else values
        return cls(disk, tuple((v, Y) for v in free_vertices), values)

    @property
    def dimension(self) -> int:
        return len(self.variables)

    def coordinate(self, v, axis):
        """Affine expression (coeff list, const) of one coordinate."""
        n = self.dimension
        try:
            k = self.variables.index((v, axis))
        except ValueError:
            p = self.values[v]
            return [_ZERO] * n, Fraction(p[0] if axis == X else p[1])
        coeffs = [_ZERO] * n
        coeffs[k] = Fraction(1)
        return coeffs, _ZERO

    def point_of(self, z, v) -> Point:
        """Coordinates of vertex v at the solution vector z."""
        out = []
        for axis in (X, Y):
            c, k = self.coordinate(v, axis)
            out.append(k + sum((a * b for a, b in zip(c, z)), _ZERO))
        return Point(*out)

    def images(self, z) -> dict:
        return {v: self.point_of(z, v) for v in self.disk.vertex_ids}


def _sub(a, b):
    return [x - y for x, y in zip(a[0], b[0])], a[1] - b[1]


def _mul(a, b, n):
    """Product of two affine expressions as (quadratic dict, linear, const)."""
    quad = {}
    for i, ai in enumerate(a[0]):
        if ai:
            for j, bj in enumerate(b[0]):
                if bj:
                    key = (min(i, j), max(i, j))
                    quad[key] = quad.get(key, _ZERO) + ai * bj
    lin = [a[0][i] * b[1] + b[0][i] * a[1] for i in range(n)]
    return quad, lin, a[1] * b[1]


def triangle_form(vs: VolumeSystem, tri) -> AffineForm:
    n = vs.dimension
    p, q, r = tri
    px, py = vs.coordinate(p, X), vs.coordinate(p, Y)
    qx, qy = vs.coordinate(q, X), vs.coordinate(q, Y)
    rx, ry = vs.coordinate(r, X), vs.coordinate(r, Y)
    q1, l1, c1 = _mul(_sub(qx, px), _sub(ry, py), n)
    q2, l2, c2 = _mul(_sub(rx, px), _sub(qy, py), n)
    for key in set(q1) | set(q2):
        if q1.get(key, _ZERO) != q2.get(key, _ZERO):
            raise ValueError(f"triangle {tri} is not affine in the chosen unknowns")
    return AffineForm(tuple(a - b for a, b in zip(l1, l2)), c1 - c2)


def build_system(vs: VolumeSystem, extra: Sequence[AffineForm] = (), triangles=None) -> HPolytope:
    """One form per triangle (in ``vs.disk.triangles`` order), then ``extra``."""
    tris = vs.disk.triangles if triangles is None else triangles
    forms = [triangle_form(vs, t) for t in tris]
    return HPolytope(tuple(forms) + tuple(extra), vs.dimension)


def box_forms(vs: VolumeSystem, v, axis, lo=None, hi=None) -> list:
    """Forms for lo <= coordinate <= hi (either bound optional)."""
    c, k = vs.coordinate(v, axis)
    out = []
    if lo is not None:
        out.append(AffineForm(tuple(c), k - Fraction(lo)))
    if hi is not None:
        out.append(AffineForm(tuple(-a for a in c), Fraction(hi) - k))
    return out


def star_kernel(d: SLDisk, images: Mapping[int, Point], v) -> HPolytope:
    """Region for vertex v keeping every incident triangle positive, in (x, y)."""
    vs = VolumeSystem(d, ((v, X), (v, Y)), images)
    return build_system(vs, triangles=d.triangles_at(v))
