"""Random walk through the embeddings with a fixed boundary.

Each step moves one interior vertex inside its star kernel, part of the way
towards the kernel boundary along a random rational direction.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Mapping

from ..disk import SLDisk
from ..errors import ConsistencyError, RayUnbounded
from ..geometry import Point
from ..oracle import embedding_violations
from .hpoly import radial_to_boundary
from .volume import star_kernel

LAMBDA_RANGE = (Fraction(1, 4), Fraction(3, 4))
DIRECTION_BOUND = 12


def _random_direction(rng) -> tuple:
    while True:
        d = (rng.randint(-DIRECTION_BOUND, DIRECTION_BOUND), rng.randint(-DIRECTION_BOUND, DIRECTION_BOUND))
        if d != (0, 0):
            return tuple(Fraction(v) for v in d)


def _round_inside(kernel, target: Point, origin: Point) -> Point:
    """Low-denominator point near ``target`` that is still strictly inside."""
    k = 0
    while True:
        cand = Point(target.x.limit_denominator(2 ** k), target.y.limit_denominator(2 ** k))
        if cand == target or kernel.strictly_contains(cand):
            return cand
        k += 1


def walk_step(d: SLDisk, images: dict, rng) -> dict:
    v = rng.choice(d.interior_vertices)
    kernel = star_kernel(d, images, v)
    c = images[v]
    while True:
        try:
            a, _ = radial_to_boundary(kernel, tuple(c), _random_direction(rng))
            break
        except RayUnbounded:
            continue
    lo, hi = LAMBDA_RANGE
    lam = lo + (hi - lo) * Fraction(rng.randint(0, 64), 64)
    target = Point(c.x + lam * (a[0] - c.x), c.y + lam * (a[1] - c.y))
    out = dict(images)
    out[v] = _round_inside(kernel, target, c)
    return out


def sample_embeddings(d: SLDisk, f: Mapping, n: int, seed: int, start: Mapping | None = None) -> list:
    """``n`` oracle-checked embeddings extending ``f``, deterministic in ``seed``.

    The walk starts from ``start`` or from ``extend(d, f)``.
    """
    if n <= 0:
        return []
    if start is None:
        from ..extension import extend

        start = extend(d, f)
    current = {v: Point.of(*p) for v, p in start.items()}
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        if d.interior_vertices:
            current = walk_step(d, current, rng)
        problems = embedding_violations(d, current)
        if problems:
            raise ConsistencyError(f"sampled map is not an embedding: {problems[0]}")
        out.append(dict(current))
    return out
