from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from sclcone.lp import LpProblem, check_certificate, feasible, solve, solve_linear_system

F = Fraction


def brute_force_optimum(problem: LpProblem):
    """Independent oracle: scan all basic solutions of Ax = b, x >= 0.

    Returns (status, value) with status in {"infeasible", "bounded"}; only
    valid on problems known a priori to be bounded (all detected below by
    cross-checking with a box).
    """
    m, n = problem.num_rows, problem.num_vars
    best = None
    found_feasible = False
    # every vertex has independent support columns, so scanning all supports
    # of size <= min(m, n) and solving the overdetermined system finds it
    for size in range(min(m, n) + 1):
        for cols in combinations(range(n), size):
            rows = [[problem.rows[i][j] for j in cols] for i in range(m)]
            sol = solve_linear_system(rows, problem.rhs)
            if sol is None or any(v < 0 for v in sol):
                continue
            x = [F(0)] * n
            for c, v in zip(cols, sol):
                x[c] = v
            found_feasible = True
            val = sum(problem.objective[j] * x[j] for j in range(n))
            if best is None or val > best:
                best = val
    if not found_feasible:
        return ("infeasible", None)
    return ("bounded", best)


class TestBasics:
    def test_single_equality(self):
        p = LpProblem([F(1)], [[F(1)]], [F(1)])
        out = solve(p)
        assert out.status == "optimal" and out.value == 1
        assert check_certificate(p, out)

    def test_shared_budget(self):
        p = LpProblem([F(1), F(1)], [[F(1), F(1)]], [F(1, 3)])
        out = solve(p)
        assert out.status == "optimal" and out.value == F(1, 3)
        assert out.y == [F(1)]
        assert check_certificate(p, out)

    def test_unbounded_no_constraints(self):
        p = LpProblem([F(1)], [], [])
        out = solve(p)
        assert out.status == "unbounded"
        assert check_certificate(p, out)

    def test_unbounded_with_ray(self):
        # x1 - x2 free direction: maximize x1 with x1 - x2 = 0
        p = LpProblem([F(1), F(0)], [[F(1), F(-1)]], [F(0)])
        out = solve(p)
        assert out.status == "unbounded"
        assert check_certificate(p, out)

    def test_infeasible(self):
        p = LpProblem([F(0), F(0)], [[F(1), F(1)], [F(1), F(1)]], [F(1), F(2)])
        out = solve(p)
        assert out.status == "infeasible"
        assert check_certificate(p, out)

    def test_negative_rhs_handled(self):
        p = LpProblem([F(-1)], [[F(-1)]], [F(-2)])
        out = solve(p)
        assert out.status == "optimal" and out.x == [F(2)] and out.value == -2
        assert check_certificate(p, out)

    def test_redundant_rows(self):
        rows = [[F(1), F(1)], [F(2), F(2)], [F(1), F(1)]]
        p = LpProblem([F(3), F(1)], rows, [F(1), F(2), F(1)])
        out = solve(p)
        assert out.status == "optimal" and out.value == 3
        assert check_certificate(p, out)

    def test_degenerate_duplicated_constraints_terminate(self):
        rows = [[F(1), F(1), F(1)], [F(1), F(1), F(1)], [F(1), F(0), F(0)]]
        p = LpProblem([F(1), F(2), F(3)], rows, [F(1), F(1), F(0)])
        out = solve(p)
        assert out.status == "optimal" and out.value == 3
        assert check_certificate(p, out)


class TestCertificates:
    def test_perturbed_dual_rejected(self):
        p = LpProblem([F(1), F(1)], [[F(1), F(1)]], [F(1, 3)])
        out = solve(p)
        out.y = [out.y[0] - 1]
        assert not check_certificate(p, out)

    def test_perturbed_value_rejected(self):
        p = LpProblem([F(1), F(1)], [[F(1), F(1)]], [F(1, 3)])
        out = solve(p)
        out.value = out.value + F(1, 10**6)
        assert not check_certificate(p, out)

    def test_feasible_membership(self):
        p = LpProblem([F(0), F(0)], [[F(1), F(2)]], [F(2)])
        assert feasible([F(0), F(1)], p)
        assert not feasible([F(2), F(1)], p)
        assert not feasible([F(-2), F(2)], p)
        with pytest.raises(ValueError):
            feasible([F(1)], p)

    def test_determinism(self):
        p = LpProblem([F(1), F(2), F(1)], [[F(1), F(1), F(1)], [F(0), F(1), F(2)]], [F(3), F(2)])
        a, b = solve(p), solve(p)
        assert (a.x, a.y, a.value, a.pivots) == (b.x, b.y, b.value, b.pivots)


def test_solve_linear_system():
    sol = solve_linear_system([[F(2), F(1)], [F(1), F(-1)]], [F(4), F(-1)])
    assert sol == [F(1), F(2)]
    assert solve_linear_system([[F(1), F(1)], [F(2), F(2)]], [F(1), F(3)]) is None
    assert solve_linear_system([[F(1), F(1)]], [F(1)]) is None  # rank deficient


_entries = st.integers(-4, 4).map(F)


@settings(max_examples=120, deadline=None)
@given(
    st.integers(1, 3),
    st.integers(1, 5),
    st.data(),
)
def test_random_lp_against_basic_solution_scan(m, n, data):
    rows = [[data.draw(_entries) for _ in range(n)] for _ in range(m)]
    rhs = [data.draw(_entries) for _ in range(m)]
    obj = [data.draw(_entries) for _ in range(n)]
    # add a budget row so the problem is bounded and the scan is a true oracle
    rows.append([F(1)] * n)
    rhs.append(F(7))
    p = LpProblem(obj, rows, rhs)
    out = solve(p)
    status, value = brute_force_optimum(p)
    if status == "infeasible":
        assert out.status == "infeasible"
        assert check_certificate(p, out)
    else:
        assert out.status == "optimal"
        assert out.value == value
        assert check_certificate(p, out)
