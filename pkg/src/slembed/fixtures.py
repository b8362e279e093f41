"""Small hand-checkable disks used in tests, docs and the CLI smoke runs."""

from __future__ import annotations

from fractions import Fraction

from .disk import SLDisk
from .geometry import Point

HALF = Fraction(1, 2)


def fan() -> SLDisk:
    """Unit square a b c d coned to its centre e (labels 0..4)."""
    return SLDisk.from_lists([(0, 0), (1, 0), (1, 1), (0, 1), (HALF, HALF)],
                             [(0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4)])


def square_with_diagonal() -> SLDisk:
    """Unit square split by the diagonal (0,2), which spans."""
    return SLDisk.from_lists([(0, 0), (1, 0), (1, 1), (0, 1)], [(0, 1, 2), (0, 2, 3)])


def squashed_square_map() -> dict:
    """Boundary data making the diagonal of ``square_with_diagonal`` obstructive."""
    return {0: Point.of(0, 0), 1: Point.of(1, 0), 2: Point.of(1, 1), 3: Point.of(HALF, HALF)}


def flat_roof() -> SLDisk:
    """A 4x2 box with an interior vertex whose key has nothing to its right
    and a fixed roof piece on the left (labels a b c d e s = 0..5)."""
    return SLDisk.from_lists([(0, 0), (4, 0), (4, 2), (2, 2), (0, 2), (3, 1)],
                             [(0, 1, 5), (1, 2, 5), (0, 5, 4), (4, 5, 3), (3, 5, 2)])


def twin_key() -> SLDisk:
    """Two roof triangles over a shared interior vertex below the peak."""
    return SLDisk.from_lists([(0, 1), (1, 2), (2, 1), (1, HALF), (1, -1)],
                             [(0, 3, 1), (3, 2, 1), (0, 4, 3), (4, 2, 3)])


def tent(peak=HALF) -> SLDisk:
    """Two triangles: roof 0 -> 1 -> 2 and a single vertex 3 below."""
    return SLDisk.from_lists([(0, 0), (HALF, peak), (1, 0), (HALF, -HALF)],
                             [(0, 3, 1), (3, 2, 1)])


def identity_boundary(d: SLDisk) -> dict:
    return {v: d.points[v] for v in d.boundary}
