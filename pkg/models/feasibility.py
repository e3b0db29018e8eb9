"""Exact linear programming over the rationals.

A dense two-phase tableau simplex with Bland's pivoting rule. Every entry is a
``fractions.Fraction``, so feasibility and optimality are decided exactly and
Bland's rule guarantees termination. The problems solved here are tiny (a
handful of assets and states), which is what makes a dense tableau adequate.
"""
import collections
import logging
from fractions import Fraction

logger = logging.getLogger(__name__)

LPResult = collections.namedtuple('LPResult', ('status', 'x', 'objective'))

OPTIMAL = 'optimal'
INFEASIBLE = 'infeasible'
UNBOUNDED = 'unbounded'


class SimplexTableau:
    """Tableau for ``min c^T y`` s.t. ``M y = b``, ``y >= 0``, ``b >= 0``.

    Columns ``0..num_cols-1`` are structural; one artificial column per row is
    appended for phase one and dropped before phase two.
    """

    def __init__(self, matrix, rhs, num_cols):
        self.num_cols = num_cols
        self.num_rows = len(matrix)
        self.rows = []
        for i, (row, b) in enumerate(zip(matrix, rhs)):
            artificial = [Fraction(0)] * self.num_rows
            artificial[i] = Fraction(1)
            self.rows.append(list(row) + artificial + [b])
        self.basis = [num_cols + i for i in range(self.num_rows)]
        self.cost = None
        self.pivots = 0

    @property
    def width(self):
        return len(self.rows[0]) - 1 if self.rows else self.num_cols

    def pivot(self, row, col):
        piv = self.rows[row][col]
        pivot_row = [v / piv for v in self.rows[row]]
        self.rows[row] = pivot_row
        for i, r in enumerate(self.rows):
            f = r[col]
            if i != row and f != 0:
                self.rows[i] = [a - f * b for a, b in zip(r, pivot_row)]
        f = self.cost[col]
        if f != 0:
            self.cost = [a - f * b for a, b in zip(self.cost, pivot_row)]
        self.basis[row] = col
        self.pivots += 1

    def set_cost(self, c):
        """Install the objective and reduce it against the current basis."""
        self.cost = list(c) + [Fraction(0)]
        for i, b in enumerate(self.basis):
            f = self.cost[b]
            if f != 0:
                self.cost = [a - f * v for a, v in zip(self.cost, self.rows[i])]

    def objective(self):
        return -self.cost[-1]

    def bland_step(self, allowed):
        try:
            col = min(j for j in range(allowed) if self.cost[j] < 0)
        except ValueError:
            return OPTIMAL
        try:
            _, _, row = min((r[-1] / r[col], self.basis[i], i)
                            for i, r in enumerate(self.rows)
                            if r[col] > 0)
        except ValueError:
            return UNBOUNDED
        self.pivot(row, col)
        return 'go_on'

    def run(self, allowed):
        while True:
            ret = self.bland_step(allowed)
            if ret in (OPTIMAL, UNBOUNDED):
                return ret

    def drive_out_artificials(self):
        """Pivot zero-valued artificials out of the basis; drop redundant rows."""
        i = 0
        while i < len(self.rows):
            if self.basis[i] >= self.num_cols:
                row = self.rows[i]
                col = next((j for j in range(self.num_cols) if row[j] != 0), None)
                if col is None:
                    del self.rows[i]
                    del self.basis[i]
                    continue
                self.pivot(i, col)
            i += 1
        self.rows = [r[:self.num_cols] + [r[-1]] for r in self.rows]
        self.cost = self.cost[:self.num_cols] + [self.cost[-1]]

    def solution(self):
        y = [Fraction(0)] * self.num_cols
        for i, b in enumerate(self.basis):
            y[b] = self.rows[i][-1]
        return y


def linprog(c=None, A_ub=None, b_ub=None, A_eq=None, b_eq=None, nonneg=None):
    """Exact ``min c^T z`` s.t. ``A_ub z <= b_ub`` and ``A_eq z == b_eq``.

    Variables are free unless ``nonneg[j]`` is true. The argument layout follows
    ``scipy.optimize.linprog``. With ``c=None`` the call is a pure feasibility
    problem.

    Returns:
        LPResult(status, x, objective); ``x`` is a tuple of Fractions at a
        vertex of the feasible set when status is 'optimal', else None.
    """
    A_ub = [list(map(Fraction, r)) for r in (A_ub or [])]
    A_eq = [list(map(Fraction, r)) for r in (A_eq or [])]
    b_ub = [Fraction(v) for v in (b_ub or [])]
    b_eq = [Fraction(v) for v in (b_eq or [])]
    if len(A_ub) != len(b_ub) or len(A_eq) != len(b_eq):
        raise ValueError("constraint rows and right-hand sides differ in length")
    widths = {len(r) for r in A_ub + A_eq}
    if c is not None:
        widths.add(len(c))
    if len(widths) > 1:
        raise ValueError("inconsistent variable counts: {}".format(sorted(widths)))
    num_vars = widths.pop() if widths else 0
    c = [Fraction(v) for v in c] if c is not None else [Fraction(0)] * num_vars
    nonneg = list(nonneg) if nonneg is not None else [False] * num_vars

    # free z_j = y_j+ - y_j-; each <= row gets a slack column
    columns = []
    for j in range(num_vars):
        columns.append((j, 1))
        if not nonneg[j]:
            columns.append((j, -1))
    num_slack = len(A_ub)
    num_cols = len(columns) + num_slack

    matrix, rhs = [], []
    for k, (row, b) in enumerate(list(zip(A_ub, b_ub)) + list(zip(A_eq, b_eq))):
        expanded = [sign * row[j] for j, sign in columns]
        slack = [Fraction(0)] * num_slack
        if k < num_slack:
            slack[k] = Fraction(1)
        expanded += slack
        if b < 0:
            expanded = [-v for v in expanded]
            b = -b
        matrix.append(expanded)
        rhs.append(b)

    tableau = SimplexTableau(matrix, rhs, num_cols)
    tableau.set_cost([Fraction(0)] * num_cols + [Fraction(1)] * tableau.num_rows)
    tableau.run(tableau.width)
    if tableau.objective() > 0:
        logger.debug("phase one infeasible after %d pivots", tableau.pivots)
        return LPResult(INFEASIBLE, None, None)
    tableau.drive_out_artificials()

    cost = [sign * c[j] for j, sign in columns] + [Fraction(0)] * num_slack
    tableau.set_cost(cost)
    status = tableau.run(num_cols)
    logger.debug("simplex finished: %s after %d pivots", status, tableau.pivots)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, None, None)

    y = tableau.solution()
    z = [Fraction(0)] * num_vars
    for (j, sign), value in zip(columns, y):
        z[j] += sign * value
    return LPResult(OPTIMAL, tuple(z), tableau.objective())


def feasible_point(A_ub=None, b_ub=None, A_eq=None, b_eq=None, nonneg=None):
    """A vertex of ``{z: A_ub z <= b_ub, A_eq z == b_eq}`` or None if empty."""
    res = linprog(None, A_ub, b_ub, A_eq, b_eq, nonneg)
    return res.x if res.status == OPTIMAL else None
