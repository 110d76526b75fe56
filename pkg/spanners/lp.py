"""
<Program Name>
    lp.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
    Covering linear programs for the cutting-plane loop of the Berman et al.
    spanner:

        minimize    sum_j x_j
        subject to  sum_{j in row} x_j >= 1   for every row
                    0 <= x_j <= 1

    Rows are added incrementally. The default backend solves the dual
    packing program

        maximize    sum_i y_i
        subject to  sum_{i : j in row_i} y_i <= 1   for every variable j
                    y >= 0

    with a dense tableau simplex and Bland's rule. The slack basis is
    feasible from the start and stays primal feasible when a row is added,
    because a new row only adds a dual column. Hence every solve after an
    `add_row` continues from the previous optimal tableau. The covering
    solution x is read from the reduced costs of the slack columns.

    Only variables that appear in some row are part of the tableau, all
    others are 0 in every optimal solution.

    `ScipyLinprogBackend` solves the covering program from scratch with
    `scipy.optimize.linprog` and can be used to cross-check the simplex.

"""
import logging

import numpy
from scipy.optimize import linprog

from spanners.exceptions import ConfigError, LpNumericalError

logger = logging.getLogger(__name__)

FEASIBILITY_TOLERANCE = 1e-9
OBJECTIVE_TOLERANCE = 1e-7
PIVOT_TOLERANCE = 1e-12



class FractionalSolution(object):
    """Covering solution `x` (numpy array in [0, 1]), its objective and the
    packing values `y` per row (the dual of the covering program). """

    def __init__(self, x, objective, y=None):
        self.x = x
        self.objective = objective
        self.y = y


    @property
    def dual_values(self):
        return self.y


    def __repr__(self):
        return "<FractionalSolution objective={}>".format(self.objective)



class LpProblem(object):
    """Covering program over `num_vars` variables with 0/1 rows.

    Rows are stored as sorted tuples of variable indices. Identical rows are
    stored once.
    """

    def __init__(self, num_vars, backend=None):
        self.num_vars = num_vars
        self.rows = []
        self._seen = set()
        self.backend = backend if backend is not None else SimplexBackend()


    def add_row(self, row):
        """Add the constraint sum_{j in row} x_j >= 1. Returns False if the
        row is already part of the problem. """
        key = frozenset(int(j) for j in row)
        if not key:
            raise ConfigError("Covering rows must not be empty")
        for j in key:
            if not 0 <= j < self.num_vars:
                raise ConfigError("Row references unknown variable {}"
                        .format(j))
        if key in self._seen:
            return False
        self._seen.add(key)
        self.rows.append(tuple(sorted(key)))
        return True


    def solve(self):
        return self.backend.solve(self)


    def is_satisfied(self, x, tolerance=FEASIBILITY_TOLERANCE):
        return all(sum(x[j] for j in row) >= 1 - tolerance
                for row in self.rows)



def add_row(problem, row):
    return problem.add_row(row)



def solve(problem):
    return problem.solve()



class SimplexBackend(object):
    """Warm-started dense simplex on the packing dual. One instance serves
    one `LpProblem`, rows added since the last solve are appended as new
    columns.

    Tableau layout: one row per covering variable (packing constraint), one
    column per slack or packing variable in creation order. `slack_col[r]`
    is the slack column of tableau row r, so `T[:, slack_col]` is the
    inverse of the current basis.
    """

    def __init__(self, max_iterations=None):
        self.max_iterations = max_iterations
        self.T = numpy.zeros((0, 0))
        self.rhs = numpy.zeros(0)
        self.z = numpy.zeros(0)
        self.value = 0.0
        self.basis = []
        self.slack_col = []
        # Covering variable per tableau row and the reverse lookup
        self.variables = []
        self.tableau_row = {}
        # Problem row per packing column, None for slack columns
        self.column_row = []
        self.synced = 0


    def _add_variable(self, j):
        k, c = self.T.shape
        T = numpy.zeros((k + 1, c + 1))
        T[:k, :c] = self.T
        T[k, c] = 1.0
        self.T = T
        self.rhs = numpy.append(self.rhs, 1.0)
        self.z = numpy.append(self.z, 0.0)
        self.basis.append(c)
        self.slack_col.append(c)
        self.column_row.append(None)
        self.variables.append(j)
        self.tableau_row[j] = k


    def _add_column(self, row_index, row):
        for j in row:
            if j not in self.tableau_row:
                self._add_variable(j)

        positions = [self.tableau_row[j] for j in row]
        inverse = self.T[:, self.slack_col]
        column = inverse[:, positions].sum(axis=1)
        x = self.z[self.slack_col]

        self.T = numpy.hstack([self.T, column[:, None]])
        self.z = numpy.append(self.z, x[positions].sum() - 1.0)
        self.column_row.append(row_index)


    def _pivot(self, r, e):
        T = self.T
        pivot = T[r, e]
        T[r] /= pivot
        self.rhs[r] /= pivot

        factors = T[:, e].copy()
        factors[r] = 0.0
        T -= numpy.outer(factors, T[r])
        self.rhs -= factors * self.rhs[r]

        ze = self.z[e]
        self.z -= ze * T[r]
        self.value -= ze * self.rhs[r]
        self.basis[r] = e


    def _iterate(self):
        k, c = self.T.shape
        cap = self.max_iterations or 50 * (k + c) + 1000

        for iteration in range(cap):
            negative = numpy.flatnonzero(self.z < -FEASIBILITY_TOLERANCE)
            if not len(negative):
                return iteration

            # Bland's rule: lowest entering column, then lowest basic column
            # among the minimum ratio rows
            e = int(negative[0])
            column = self.T[:, e]
            candidates = numpy.flatnonzero(column > PIVOT_TOLERANCE)
            if not len(candidates):
                raise LpNumericalError("Packing program appears unbounded")

            ratios = self.rhs[candidates] / column[candidates]
            best = ratios.min()
            tied = candidates[ratios <= best + FEASIBILITY_TOLERANCE]
            r = min(tied, key=lambda row: self.basis[row])
            self._pivot(int(r), e)

            if not numpy.isfinite(self.value) or \
                    (self.rhs < -FEASIBILITY_TOLERANCE).any():
                raise LpNumericalError("Simplex lost feasibility after"
                        " pivot on column {}".format(e))

        raise LpNumericalError("Simplex did not terminate within {}"
                " iterations".format(cap))


    def solve(self, problem):
        for row_index in range(self.synced, len(problem.rows)):
            self._add_column(row_index, problem.rows[row_index])
        self.synced = len(problem.rows)

        iterations = self._iterate()

        x = numpy.zeros(problem.num_vars)
        if self.variables:
            x[self.variables] = self.z[self.slack_col]
        x = numpy.clip(x, 0.0, 1.0)

        y = numpy.zeros(len(problem.rows))
        for r, col in enumerate(self.basis):
            if self.column_row[col] is not None:
                y[self.column_row[col]] = self.rhs[r]

        logger.debug("Simplex solved {} rows over {} variables in {}"
                " pivots, objective {}".format(len(problem.rows),
                len(self.variables), iterations, self.value))
        return FractionalSolution(x, float(self.value), y)



class ScipyLinprogBackend(object):
    """Cold solves of the covering program with HiGHS. """

    def __init__(self, method="highs"):
        self.method = method


    def solve(self, problem):
        if not problem.rows:
            return FractionalSolution(numpy.zeros(problem.num_vars), 0.0,
                    numpy.zeros(0))

        A = numpy.zeros((len(problem.rows), problem.num_vars))
        for i, row in enumerate(problem.rows):
            A[i, list(row)] = 1.0

        result = linprog(numpy.ones(problem.num_vars), A_ub=-A,
                b_ub=-numpy.ones(len(problem.rows)), bounds=(0, 1),
                method=self.method)
        if result.status != 0:
            raise LpNumericalError("linprog failed: {}".format(
                    result.message))

        y = None
        if getattr(result, "ineqlin", None) is not None:
            y = -numpy.asarray(result.ineqlin.marginals)
        return FractionalSolution(numpy.clip(result.x, 0.0, 1.0),
                float(result.fun), y)
