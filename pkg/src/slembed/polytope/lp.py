"""Exact two-phase simplex.

Entering columns follow the largest reduced cost; after a run of degenerate
pivots the rule switches to Bland's, which cannot cycle.

Solves ``max c.z  s.t.  A z <= b`` with ``z`` free.  Free variables are split
into positive and negative parts.  The tableau is kept fraction-free: every
entry is an integer and the true value is ``entry / D`` where ``D`` is the
previous pivot (integer pivoting; each division below is exact).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"
REACHED = "reached"  # stopped early: the point beats the requested value

_ZERO = Fraction(0)
DEGENERATE_LIMIT = 8


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    point: tuple | None = None


class _Tableau:
    def __init__(self, rows, basis):
        self.rows = rows
        self.basis = basis
        self.D = 1

    def pivot(self, r, c):
        rows, D = self.rows, self.D
        prow = rows[r]
        p = prow[c]
        for i, row in enumerate(rows):
            if i == r:
                continue
            f = row[c]
            if f:
                rows[i] = [(p * a - f * b) // D for a, b in zip(row, prow)]
            elif p != D:
                rows[i] = [(p * a) // D for a in row]
        self.D = p
        if p < 0:
            self.rows = [[-a for a in row] for row in self.rows]
            self.D = -p
        if r < len(self.basis):
            self.basis[r] = c

    def run(self, ncols, stop=None) -> bool:
        """Maximise the objective in the last row (reduced costs); only
        columns < ncols may enter.  False when unbounded.  ``stop(value, D)``
        ends the run early when it returns True."""
        m = len(self.rows) - 1
        stalled = 0
        while True:
            obj = self.rows[-1]
            if stop is not None and stop(obj[-1], self.D):
                return True
            if stalled < DEGENERATE_LIMIT:
                enter = min(range(ncols), key=obj.__getitem__)
                if obj[enter] >= 0:
                    return True
            else:
                enter = next((j for j in range(ncols) if obj[j] < 0), None)
                if enter is None:
                    return True
            best = None
            for i in range(m):
                a = self.rows[i][enter]
                if a > 0:
                    rhs = self.rows[i][-1]
                    if best is None:
                        best = (rhs, a, i)
                        continue
                    lhs, rgt = rhs * best[1], best[0] * a
                    if lhs < rgt or (lhs == rgt and self.basis[i] < self.basis[best[2]]):
                        best = (rhs, a, i)
            if best is None:
                return False
            stalled = stalled + 1 if best[0] == 0 else 0
            self.pivot(best[2], enter)


def _integer_row(values) -> list:
    fr = [v if isinstance(v, Fraction) else Fraction(v) for v in values]
    L = lcm(*(v.denominator for v in fr)) if fr else 1
    return [v.numerator * (L // v.denominator) for v in fr]


def solve(A: Sequence[Sequence], b: Sequence, c: Sequence, maximize: bool = True,
          stop_above=None) -> LPResult:
    """Optimise ``c.z`` over ``A z <= b``.  With ``stop_above`` (maximise only)
    the search ends at the first feasible vertex whose value exceeds it,
    reported as REACHED."""
    m = len(A)
    n = len(c)
    c = [Fraction(v) for v in c]
    cc = c if maximize else [-v for v in c]
    if m == 0:
        if any(cc):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, _ZERO, tuple(_ZERO for _ in range(n)))
    # columns: z+ (n), z- (n), slack (m), rhs.  Artificial columns are not
    # stored since they never re-enter; basis index nv + i marks one.
    nv = 2 * n + m
    width = nv + 1
    rows, basis, art_rows = [], [], []
    for i in range(m):
        ints = _integer_row(list(A[i]) + [b[i]])
        coef, rhs = ints[:-1], ints[-1]
        full = coef + [-v for v in coef] + [0] * m + [rhs]
        full[2 * n + i] = 1
        if rhs < 0:
            full = [-v for v in full]
            basis.append(nv + i)
            art_rows.append(i)
        else:
            basis.append(2 * n + i)
        rows.append(full)
    T = _Tableau(rows, basis)

    if art_rows:
        # phase 1: maximise -(sum of artificials)
        obj = [0] * width
        for i in art_rows:
            for j in list(range(nv)) + [width - 1]:
                obj[j] -= rows[i][j]
        T.rows.append(obj)
        T.run(nv)
        if T.rows[-1][-1] != 0:
            return LPResult(INFEASIBLE)
        T.rows.pop()
        # drive remaining artificials out of the basis
        for i in range(len(T.basis) - 1, -1, -1):
            if T.basis[i] >= nv:
                j = next((j for j in range(nv) if T.rows[i][j] != 0), None)
                if j is None:
                    T.rows.pop(i)
                    T.basis.pop(i)
                else:
                    T.pivot(i, j)

    Lc = lcm(*(v.denominator for v in cc)) if cc else 1
    ci = [int(v * Lc) for v in cc]
    D = T.D
    obj = [0] * width
    for j in range(n):
        obj[j] = -ci[j] * D
        obj[n + j] = ci[j] * D
    for i, bv in enumerate(T.basis):
        f = obj[bv]
        if f:
            row = T.rows[i]
            obj = [a - (f * r) // D for a, r in zip(obj, row)]
    T.rows.append(obj)
    stop = None
    if stop_above is not None and maximize:
        bound = Fraction(stop_above) * Lc
        stop = lambda v, D: v * bound.denominator > bound.numerator * D  # noqa: E731
    if not T.run(nv, stop):
        return LPResult(UNBOUNDED)
    D = T.D
    x = [_ZERO] * nv
    for i, bv in enumerate(T.basis):
        x[bv] = Fraction(T.rows[i][-1], D)
    z = tuple(x[j] - x[n + j] for j in range(n))
    value = sum((cj * zj for cj, zj in zip(c, z)), _ZERO)
    if stop is not None and value > stop_above:
        return LPResult(REACHED, value, z)
    return LPResult(OPTIMAL, value, z)
