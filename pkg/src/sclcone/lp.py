"""Exact linear programming over rationals with optimality certificates.

Problems are in equality standard form: maximize c.x subject to A x = b,
x >= 0, all entries Fractions. The solver is a dense two-phase simplex;
artificial columns are kept through phase 2 so duals can be read off the
reduced-cost row. A Dantzig rule is used until the objective stalls, after
which the pivot rule permanently switches to Bland's (termination on
degenerate inputs).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .config import Limits, ResourceLimitError, default_limits

ZERO = Fraction(0)

_STALL_LIMIT = 30


@dataclass
class LpProblem:
    objective: list[Fraction]
    rows: list[list[Fraction]]
    rhs: list[Fraction]

    def __post_init__(self) -> None:
        self.objective = [Fraction(v) for v in self.objective]
        self.rows = [[Fraction(v) for v in row] for row in self.rows]
        self.rhs = [Fraction(v) for v in self.rhs]
        n = len(self.objective)
        for row in self.rows:
            if len(row) != n:
                raise ValueError(f"row length {len(row)} != {n} variables")
        if len(self.rhs) != len(self.rows):
            raise ValueError("rhs length does not match row count")

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def to_json(self) -> dict:
        return {
            "objective": [str(v) for v in self.objective],
            "rows": [[str(v) for v in row] for row in self.rows],
            "rhs": [str(v) for v in self.rhs],
        }

    @staticmethod
    def from_json(data: dict) -> "LpProblem":
        return LpProblem(
            [Fraction(v) for v in data["objective"]],
            [[Fraction(v) for v in row] for row in data["rows"]],
            [Fraction(v) for v in data["rhs"]],
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json())


@dataclass
class LpOutcome:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: list[Fraction] | None = None
    y: list[Fraction] | None = None
    value: Fraction | None = None
    ray: list[Fraction] | None = None
    farkas: list[Fraction] | None = None
    pivots: int = 0


class _Tableau:
    def __init__(self, problem: LpProblem, limits: Limits):
        self.limits = limits
        self.n = problem.num_vars
        self.m = problem.num_rows
        self.pivots = 0
        self.bland = False
        self._stall = 0
        self._last_value: Fraction | None = None

        self.row_sign = [1] * self.m
        self.T: list[list[Fraction]] = []
        for i, row in enumerate(problem.rows):
            r = list(row)
            rhs = problem.rhs[i]
            if rhs < 0:
                r = [-v for v in r]
                rhs = -rhs
                self.row_sign[i] = -1
            art = [ZERO] * self.m
            art[i] = Fraction(1)
            self.T.append(r + art + [rhs])
        self.basis = [self.n + i for i in range(self.m)]
        self.cost: list[Fraction] = []
        self.zrow: list[Fraction] = []

    def _set_costs(self, cost: list[Fraction]) -> None:
        self.cost = cost
        width = self.n + self.m
        z = list(cost)
        for i in range(self.m):
            cb = cost[self.basis[i]]
            if cb != 0:
                row = self.T[i]
                for j in range(width):
                    if row[j] != 0:
                        z[j] -= cb * row[j]
        self.zrow = z

    def _value(self) -> Fraction:
        return sum((self.cost[self.basis[i]] * self.T[i][-1] for i in range(self.m)), ZERO)

    def _choose_entering(self) -> int | None:
        best, best_j = None, None
        for j in range(self.n):  # artificials never enter
            zj = self.zrow[j]
            if zj > 0:
                if self.bland:
                    return j
                if best is None or zj > best:
                    best, best_j = zj, j
        return best_j

    def _choose_leaving(self, col: int) -> int | None:
        best_ratio = None
        best_i = None
        for i in range(self.m):
            a = self.T[i][col]
            if a > 0:
                ratio = self.T[i][-1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and self.basis[i] < self.basis[best_i])
                ):
                    best_ratio, best_i = ratio, i
        return best_i

    def _pivot(self, row: int, col: int) -> None:
        self.pivots += 1
        if self.pivots > self.limits.max_pivots:
            raise ResourceLimitError("simplex pivot budget exceeded")
        T = self.T
        piv = T[row][col]
        if piv != 1:
            inv = 1 / piv
            T[row] = [v * inv for v in T[row]]
        prow = T[row]
        width = len(prow)
        for i in range(self.m):
            if i == row:
                continue
            f = T[i][col]
            if f != 0:
                ri = T[i]
                T[i] = [ri[j] - f * prow[j] for j in range(width)]
        f = self.zrow[col]
        if f != 0:
            self.zrow = [self.zrow[j] - f * prow[j] for j in range(width - 1)]
        self.basis[row] = col

        value = self._value()
        if self._last_value is not None and value == self._last_value:
            self._stall += 1
            if self._stall >= _STALL_LIMIT:
                self.bland = True
        else:
            self._stall = 0
        self._last_value = value

    def run(self) -> int | None:
        """Pivot to optimality; returns the entering column if unbounded."""
        while True:
            col = self._choose_entering()
            if col is None:
                return None
            row = self._choose_leaving(col)
            if row is None:
                return col
            self._pivot(row, col)

    def duals(self) -> list[Fraction]:
        # Reduced cost of artificial column i is cost_i - y_i; undo row flips.
        out = []
        for i in range(self.m):
            y = self.cost[self.n + i] - self.zrow[self.n + i]
            out.append(y * self.row_sign[i])
        return out

    def primal(self) -> list[Fraction]:
        x = [ZERO] * self.n
        for i in range(self.m):
            if self.basis[i] < self.n:
                x[self.basis[i]] = self.T[i][-1]
        return x


def solve(problem: LpProblem, limits: Limits | None = None) -> LpOutcome:
    limits = limits or default_limits()
    tab = _Tableau(problem, limits)
    n, m = tab.n, tab.m

    # Phase 1: drive the artificial total to zero.
    tab._set_costs([ZERO] * n + [Fraction(-1)] * m)
    tab._last_value = None
    tab._stall = 0
    unb = tab.run()
    assert unb is None  # phase-1 objective is bounded above by 0
    if tab._value() < 0:
        y = tab.duals()
        farkas = [-v for v in y]
        return LpOutcome(status="infeasible", farkas=farkas, pivots=tab.pivots)

    # Pivot artificials out of the basis where a structural column allows it;
    # rows with all-zero structural part are redundant and stay inert.
    for i in range(m):
        if tab.basis[i] >= n:
            for j in range(n):
                if tab.T[i][j] != 0:
                    tab._pivot(i, j)
                    break

    # Phase 2.
    tab._set_costs(list(problem.objective) + [ZERO] * m)
    tab.bland = False
    tab._last_value = None
    tab._stall = 0
    unb = tab.run()
    if unb is not None:
        col = unb
        ray = [ZERO] * n
        ray[col] = Fraction(1)
        for i in range(m):
            if tab.basis[i] < n and tab.T[i][col] != 0:
                ray[tab.basis[i]] = -tab.T[i][col]
        return LpOutcome(status="unbounded", x=tab.primal(), ray=ray, pivots=tab.pivots)

    x = tab.primal()
    value = sum((problem.objective[j] * x[j] for j in range(n)), ZERO)
    return LpOutcome(status="optimal", x=x, y=tab.duals(), value=value, pivots=tab.pivots)


def feasible(x: list[Fraction], problem: LpProblem) -> bool:
    """Exact membership test A x = b, x >= 0."""
    if len(x) != problem.num_vars:
        raise ValueError(f"point has {len(x)} coordinates, expected {problem.num_vars}")
    x = [Fraction(v) for v in x]
    if any(v < 0 for v in x):
        return False
    for row, b in zip(problem.rows, problem.rhs):
        if sum((row[j] * x[j] for j in range(len(x))), ZERO) != b:
            return False
    return True


def check_certificate(problem: LpProblem, outcome: LpOutcome) -> bool:
    """Verify the outcome's certificate identities exactly."""
    n = problem.num_vars
    if outcome.status == "optimal":
        if outcome.x is None or outcome.y is None or outcome.value is None:
            return False
        if not feasible(outcome.x, problem):
            return False
        if sum((problem.objective[j] * outcome.x[j] for j in range(n)), ZERO) != outcome.value:
            return False
        y = outcome.y
        if len(y) != problem.num_rows:
            return False
        for j in range(n):
            yaj = sum((problem.rows[i][j] * y[i] for i in range(problem.num_rows)), ZERO)
            if yaj < problem.objective[j]:
                return False
        if sum((problem.rhs[i] * y[i] for i in range(problem.num_rows)), ZERO) != outcome.value:
            return False
        return True
    if outcome.status == "unbounded":
        if outcome.ray is None or outcome.x is None:
            return False
        if not feasible(outcome.x, problem):
            return False
        d = outcome.ray
        if any(v < 0 for v in d):
            return False
        for row in problem.rows:
            if sum((row[j] * d[j] for j in range(n)), ZERO) != 0:
                return False
        return sum((problem.objective[j] * d[j] for j in range(n)), ZERO) > 0
    if outcome.status == "infeasible":
        f = outcome.farkas
        if f is None or len(f) != problem.num_rows:
            return False
        for j in range(n):
            faj = sum((problem.rows[i][j] * f[i] for i in range(problem.num_rows)), ZERO)
            if faj > 0:
                return False
        return sum((problem.rhs[i] * f[i] for i in range(problem.num_rows)), ZERO) > 0
    return False


def solve_linear_system(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Exact Gaussian elimination for square/overdetermined A x = b.

    Returns one solution, or None if the system is inconsistent or the
    coefficient matrix is rank-deficient in the unknowns.
    """
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    A = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    pivot_cols: list[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if A[i][c] != 0), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [A[i][j] - f * A[r][j] for j in range(n + 1)]
        pivot_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if A[i][n] != 0:
            return None
    if len(pivot_cols) < n:
        return None
    x = [ZERO] * n
    for i, c in enumerate(pivot_cols):
        x[c] = A[i][n]
    return x
