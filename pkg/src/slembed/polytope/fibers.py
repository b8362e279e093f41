"""Fibers over fixed x-coordinates for a reduced disk with its base triangle removed.

Setting: K is a simple disk in reduced form, tau the triangle on the base
edge [0,1] x {0}, L = K - tau.  The boundary of K is pinned.  The movable
vertices are the interior vertices of K, the apex of tau last.  Fixing all
their x-coordinates (the vector X) leaves a polyhedron in their y's.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..disk import SLDisk, boundary_circle, edge_key, spanning_simplices
from ..errors import PreconditionViolated, XNotInProjection
from ..geometry import Point
from .hpoly import (INFEASIBLE, AffineForm, HPolytope, affine_dimension, feasible_interior,
                    is_bounded, strictly_feasible, unbounded_directions)
from .volume import Y, VolumeSystem, build_system

_ZERO = Fraction(0)
ORIGIN = Point(Fraction(0), Fraction(0))
UNIT = Point(Fraction(1), Fraction(0))


@dataclass(frozen=True)
class ApexSetup:
    disk: SLDisk
    removed: tuple  # the base triangle
    L: SLDisk
    movable: tuple  # interior vertices of the disk, apex last

    @property
    def apex(self):
        return self.movable[-1]

    @property
    def m(self) -> int:
        return len(self.movable)

    def base_x(self) -> tuple:
        return tuple(self.disk.points[v].x for v in self.movable)


def apex_setup(K: SLDisk) -> ApexSetup:
    """Locate the base triangle of a simple reduced disk and order the movable vertices."""
    by_point = {p: v for v, p in K.points.items()}
    a, b = by_point.get(ORIGIN), by_point.get(UNIT)
    if a is None or b is None or edge_key(a, b) not in K.edge_triangles:
        raise PreconditionViolated("reduced", "no single base edge from (0,0) to (1,0)")
    if not K.is_boundary_edge(a, b):
        raise PreconditionViolated("reduced", "base edge is not on the boundary")
    from ..reduction import reduced_form_problems

    problems = reduced_form_problems(boundary_circle(K), (a, b))
    if problems:
        raise PreconditionViolated("reduced", problems[0])
    if spanning_simplices(K):
        raise PreconditionViolated("simple", "disk has spanning edges")
    if len(K.triangles) < 2:
        raise PreconditionViolated("simple", "disk has a single triangle")
    (tau,) = K.edge_triangles[edge_key(a, b)]
    (apex,) = [w for w in tau if w not in (a, b)]
    if apex in K.boundary_set:
        raise PreconditionViolated("simple", "base triangle apex is on the boundary")
    L = K.sub_disk([t for t in K.triangles if t != tau])
    movable = tuple(v for v in K.interior_vertices if v != apex) + (apex,)
    return ApexSetup(K, tau, L, movable)


def _system(setup: ApexSetup, X: Sequence) -> tuple:
    """(triangle forms of L, forms of 0 <= x_m <= 1), free y of the movable vertices."""
    X = tuple(Fraction(x) for x in X)
    if len(X) != setup.m:
        raise ValueError(f"expected {setup.m} x-coordinates, got {len(X)}")
    values = dict(setup.disk.points)
    for v, x in zip(setup.movable, X):
        values[v] = Point(x, _ZERO)
    vs = VolumeSystem(setup.L, tuple((v, Y) for v in setup.movable), values)
    P = build_system(vs)
    zero = (_ZERO,) * setup.m
    box = (AffineForm(zero, X[-1]), AffineForm(zero, 1 - X[-1]))
    return list(P.forms), list(box)


def _apex_form(m: int, y_level, sign: int = 1) -> AffineForm:
    coeffs = [_ZERO] * m
    coeffs[-1] = Fraction(sign)
    return AffineForm(tuple(coeffs), -sign * Fraction(y_level))


def _substitute_apex(forms, y_level) -> list:
    y = Fraction(y_level)
    return [AffineForm(f.coeffs[:-1], f.const + f.coeffs[-1] * y) for f in forms]


@dataclass(frozen=True)
class FiberReport:
    X: tuple
    y_level: Fraction
    full: HPolytope  # non-negative volumes, 0 <= x_m <= 1
    at_least: HPolytope  # plus y_m >= y_level
    level: HPolytope  # y_m = y_level substituted (one variable fewer)
    dimensions: tuple
    bounded: tuple
    interior_nonempty: tuple
    unbounded: list = field(default_factory=list)  # coordinate directions of `full`

    @property
    def expected_dimensions(self) -> tuple:
        m = self.full.dimension
        return (m, m, m - 1)

    @property
    def consistent(self) -> bool:
        return (self.dimensions == self.expected_dimensions
                and self.bounded == (False, True, True)
                and all(self.interior_nonempty))


def in_projection(setup: ApexSetup, X: Sequence) -> bool:
    tri, box = _system(setup, X)
    return strictly_feasible(tri + box, (), setup.m)


def fiber_polytopes(setup: ApexSetup, X: Sequence, y_level) -> FiberReport:
    """The three fiber polyhedra over X with their dimension and boundedness data."""
    y_level = Fraction(y_level)
    tri, box = _system(setup, X)
    m = setup.m
    if not strictly_feasible(tri + box, (), m):
        raise XNotInProjection(f"X = {tuple(map(str, X))} is not in the projection")
    full = HPolytope(tuple(tri + box), m)
    at_least = HPolytope(tuple(tri + box + [_apex_form(m, y_level)]), m)
    level = HPolytope(tuple(_substitute_apex(tri + box, y_level)), m - 1)
    polys = (full, at_least, level)
    interiors = tuple(feasible_interior(P) is not INFEASIBLE for P in polys)
    dims = tuple(P.dimension if inside else affine_dimension(P)
                 for P, inside in zip(polys, interiors))
    unbounded = unbounded_directions(full)
    bounded = (not unbounded,) + tuple(is_bounded(P) for P in polys[1:])
    return FiberReport(tuple(Fraction(x) for x in X), y_level, full, at_least, level,
                       dims, bounded, interiors, unbounded)


PREDICATES = ("E", "E^y", "E^>=y", "E^>y")


def membership(setup: ApexSetup, X: Sequence, y_level, levels_only: bool = False,
               system: tuple | None = None) -> dict:
    """Whether some embedding over X lies in each of the four spaces at y_level."""
    tri, box = system or _system(setup, X)
    m = setup.m
    strict = tri + box
    y = Fraction(y_level)
    out = {} if levels_only else {"E": strictly_feasible(strict, (), m)}
    out.update({
        "E^y": strictly_feasible(_substitute_apex(strict, y), (), m - 1),
        "E^>=y": strictly_feasible(strict, [_apex_form(m, y)], m),
        "E^>y": strictly_feasible(strict + [_apex_form(m, y)], (), m),
    })
    return out


@dataclass
class ProjectionReport:
    levels: tuple
    checked: int = 0
    inside: int = 0
    disagreements: list = field(default_factory=list)  # (X, {name: bool})

    @property
    def ok(self) -> bool:
        return not self.disagreements


def projection_equality_check(setup: ApexSetup, y1, y2, samples: Sequence) -> ProjectionReport:
    """For each X, all projection-membership predicates at both levels must agree."""
    y1, y2 = Fraction(y1), Fraction(y2)
    if y1 > 0 or y2 > 0:
        raise ValueError("levels must be non-positive")
    report = ProjectionReport((y1, y2))
    for X in samples:
        verdicts = {}
        system = _system(setup, X)
        for y in (y1, y2):
            for name, val in membership(setup, X, y, y != y1, system).items():
                verdicts[name if name == "E" else f"{name}[{y}]"] = val
        report.checked += 1
        if len(set(verdicts.values())) > 1:
            report.disagreements.append((tuple(X), verdicts))
        elif verdicts["E"]:
            report.inside += 1
    return report


def walk_length(n: int) -> int:
    """Number of embeddings ``sample_x`` draws for ``n`` x-vectors."""
    return max(0, (n - 1) // 2)


def sample_x(setup: ApexSetup, n: int, seed: int, walk: Sequence | None = None) -> list:
    """x-vectors for projection checks: half from embeddings of the disk
    (inside the projection), half from coarse perturbations of the disk's
    own x-coordinates (often outside), plus x_m on the closed ends.

    ``walk`` may supply the embeddings (the first ``walk_length(n)`` are used).
    """
    from .sampling import sample_embeddings

    if n <= 0:
        return []
    rng = random.Random(seed)
    K = setup.disk
    base = setup.base_x()
    out = [base[:-1] + (Fraction(0),), base[:-1] + (Fraction(1),)][:n]
    k = walk_length(n)
    if walk is None or len(walk) < k:
        walk = sample_embeddings(K, {v: K.points[v] for v in K.boundary}, k, seed, start=K.points)
    out += [tuple(e[v].x for v in setup.movable) for e in walk[:k]]
    while len(out) < n:
        out.append(tuple(x + Fraction(rng.randint(-8, 8), 32) for x in base))
    return out[:n]
