import numpy
from django.test import SimpleTestCase

from spanners import lp
from spanners.exceptions import ConfigError
from spanners.lp import LpProblem, ScipyLinprogBackend, SimplexBackend


def _random_rows(seed, num_vars=12, num_rows=15):
    rng = numpy.random.default_rng(seed)
    rows = []
    for _ in range(num_rows):
        size = int(rng.integers(1, 5))
        picked = rng.choice(num_vars, size, replace=False)
        rows.append([int(j) for j in picked])
    return rows


class LpProblemTest(SimpleTestCase):

    def test_duplicate_rows(self):
        problem = LpProblem(3)
        self.assertTrue(lp.add_row(problem, [0, 1]))
        self.assertFalse(lp.add_row(problem, [1, 0]))
        self.assertEqual(problem.rows, [(0, 1)])

    def test_invalid_rows(self):
        problem = LpProblem(3)
        with self.assertRaises(ConfigError):
            problem.add_row([])
        with self.assertRaises(ConfigError):
            problem.add_row([3])

    def test_is_satisfied(self):
        problem = LpProblem(3)
        problem.add_row([0, 1])
        self.assertTrue(problem.is_satisfied([0.5, 0.5, 0]))
        self.assertFalse(problem.is_satisfied([0.2, 0.5, 1]))


class SimplexBackendTest(SimpleTestCase):

    def test_no_rows(self):
        solution = lp.solve(LpProblem(4))
        self.assertEqual(solution.objective, 0)
        self.assertEqual(list(solution.x), [0, 0, 0, 0])

    def test_single_row(self):
        problem = LpProblem(2)
        problem.add_row([0, 1])
        solution = lp.solve(problem)
        self.assertAlmostEqual(solution.objective, 1)
        self.assertAlmostEqual(solution.x.sum(), 1)

    def test_disjoint_rows(self):
        problem = LpProblem(4)
        problem.add_row([0, 1])
        problem.add_row([2, 3])
        self.assertAlmostEqual(lp.solve(problem).objective, 2)

    def test_odd_cycle_is_fractional(self):
        problem = LpProblem(3)
        for row in ([0, 1], [1, 2], [0, 2]):
            problem.add_row(row)
        solution = problem.solve()
        self.assertAlmostEqual(solution.objective, 1.5)
        numpy.testing.assert_allclose(solution.x, [0.5, 0.5, 0.5])
        self.assertAlmostEqual(solution.dual_values.sum(), 1.5)

    def test_warm_start_is_monotone(self):
        for seed in range(5):
            problem = LpProblem(12)
            previous = 0.0
            for row in _random_rows(seed):
                problem.add_row(row)
                solution = problem.solve()
                self.assertGreaterEqual(solution.objective, previous - 1e-9)
                self.assertTrue(problem.is_satisfied(solution.x, 1e-7))
                previous = solution.objective

    def test_matches_linprog(self):
        for seed in range(10):
            warm = LpProblem(12)
            cold = LpProblem(12, backend=ScipyLinprogBackend())
            for row in _random_rows(seed):
                warm.add_row(row)
                cold.add_row(row)
            expected = cold.solve().objective
            solution = warm.solve()
            self.assertAlmostEqual(solution.objective, expected, places=6)
            self.assertAlmostEqual(solution.x.sum(), expected, places=6)
            self.assertAlmostEqual(solution.y.sum(), expected, places=6)

    def test_one_backend_per_problem(self):
        backend = SimplexBackend()
        problem = LpProblem(2, backend=backend)
        problem.add_row([1])
        problem.solve()
        self.assertEqual(backend.variables, [1])
        self.assertEqual(backend.synced, 1)


class ScipyLinprogBackendTest(SimpleTestCase):

    def test_single_row(self):
        problem = LpProblem(2, backend=ScipyLinprogBackend())
        problem.add_row([0, 1])
        self.assertAlmostEqual(problem.solve().objective, 1)

    def test_no_rows(self):
        problem = LpProblem(2, backend=ScipyLinprogBackend())
        self.assertEqual(problem.solve().objective, 0)
