import itertools
import random
from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st

from slembed.polytope import lp


def brute_max(A, b, c):
    """Best objective over all basic feasible points (None if infeasible)."""
    n = len(c)
    best = None
    for rows in itertools.combinations(range(len(A)), n):
        M = [[F(A[i][j]) for j in range(n)] + [F(b[i])] for i in rows]
        ok = True
        for col in range(n):
            piv = next((r for r in range(col, n) if M[r][col] != 0), None)
            if piv is None:
                ok = False
                break
            M[col], M[piv] = M[piv], M[col]
            M[col] = [v / M[col][col] for v in M[col]]
            for r in range(n):
                if r != col and M[r][col] != 0:
                    f = M[r][col]
                    M[r] = [a - f * bb for a, bb in zip(M[r], M[col])]
        if not ok:
            continue
        z = [M[i][n] for i in range(n)]
        if all(sum(F(A[i][j]) * z[j] for j in range(n)) <= b[i] for i in range(len(A))):
            v = sum(F(c[j]) * z[j] for j in range(n))
            best = v if best is None or v > best else best
    return best


small = st.fractions(min_value=-5, max_value=5, max_denominator=3)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.lists(small, min_size=n, max_size=n), min_size=1, max_size=6),
    st.lists(st.fractions(min_value=-6, max_value=10, max_denominator=4), min_size=6, max_size=6),
    st.lists(small, min_size=n, max_size=n))))
def test_solve_matches_vertex_enumeration_on_boxed_programs(data):
    n, A, b, c = data
    b = b[:len(A)]
    # a box keeps the program bounded, so optimal or infeasible are the only outcomes
    for j in range(n):
        for s in (1, -1):
            row = [F(0)] * n
            row[j] = F(s)
            A = A + [row]
            b = b + [F(7)]
    res = lp.solve(A, b, c)
    best = brute_max(A, b, c)
    if best is None:
        assert res.status == lp.INFEASIBLE
    else:
        assert res.status == lp.OPTIMAL
        assert res.value == best
        assert all(sum(a * z for a, z in zip(row, res.point)) <= bi for row, bi in zip(A, b))


def test_unbounded_and_minimise():
    assert lp.solve([[F(-1)]], [F(0)], [F(1)]).status == lp.UNBOUNDED
    res = lp.solve([[F(-1)]], [F(-2)], [F(1)], maximize=False)
    assert res.status == lp.OPTIMAL and res.value == 2


def test_degenerate_program_terminates():
    # many constraints through the same vertex
    rng = random.Random(4)
    A = [[F(rng.randint(-3, 3)), F(rng.randint(-3, 3))] for _ in range(30)]
    b = [F(0)] * 30
    A += [[F(1), F(0)], [F(0), F(1)], [F(-1), F(0)], [F(0), F(-1)]]
    b += [F(1)] * 4
    res = lp.solve(A, b, [F(1), F(1)])
    assert res.status == lp.OPTIMAL
    assert res.value == brute_max(A, b, [1, 1])


def test_early_stop_reports_a_feasible_point():
    A = [[F(1), F(0)], [F(0), F(1)], [F(-1), F(0)], [F(0), F(-1)]]
    b = [F(10), F(10), F(0), F(0)]
    res = lp.solve(A, b, [F(1), F(1)], stop_above=F(1))
    assert res.status in (lp.REACHED, lp.OPTIMAL)
    assert res.value > 1
    assert all(sum(a * z for a, z in zip(row, res.point)) <= bi for row, bi in zip(A, b))
