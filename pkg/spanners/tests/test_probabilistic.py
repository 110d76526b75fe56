import numpy
from django.test import SimpleTestCase

from spanners import choices
from spanners.deadline import Deadline
from spanners.exceptions import (AttemptsExhaustedError, ConfigError,
        DeadlineExceeded, ElkinNeimanFailure, IncompatibleConfigError)
from spanners.graph import TRAVERSAL_CALLS, Graph, components, validate_spanner
from spanners.instances import ErSpec, gen_er
from spanners.probabilistic import (BroadcastState, EnConfig, draw_radii,
        elkin_neiman, elkin_neiman_once)
from spanners.tests import graphs


class EnConfigTest(SimpleTestCase):

    def test_k(self):
        self.assertEqual(EnConfig(3).k, 2)
        self.assertEqual(EnConfig(9).k, 5)

    def test_invalid(self):
        with self.assertRaises(ConfigError):
            EnConfig(4)
        with self.assertRaises(ConfigError):
            EnConfig(3, epsilon=0)
        with self.assertRaises(ConfigError):
            EnConfig(3, max_attempts=0)

    def test_beta_must_be_positive(self):
        self.assertGreater(EnConfig(3, epsilon=0.8).beta(10), 0)
        with self.assertRaises(ConfigError):
            EnConfig(3, epsilon=6).beta(2)


class BroadcastStateTest(SimpleTestCase):

    def test_selection_threshold(self):
        r = [0.1, 1.5, 0.2]
        reached = {0: (0, None), 1: (1, 7), 2: (1, 9)}
        state = BroadcastState(0, r, reached)
        self.assertAlmostEqual(state.m[1], 0.5)
        self.assertAlmostEqual(state.m[2], -0.8)
        # The own message is within the threshold but has no edge
        self.assertEqual(state.selected_edges(), [7])

    def test_messages_within_one_are_all_kept(self):
        r = [0.0, 1.2, 1.0]
        reached = {0: (0, None), 1: (1, 3), 2: (1, 4)}
        self.assertEqual(sorted(BroadcastState(0, r, reached)
                .selected_edges()), [3, 4])


class DrawRadiiTest(SimpleTestCase):

    def test_radii_below_k(self):
        cfg = EnConfig(5, epsilon=0.01)
        r = draw_radii(50, cfg, numpy.random.default_rng(0))
        self.assertEqual(len(r), 50)
        self.assertTrue((r >= 0).all())
        self.assertTrue((r < cfg.k).all())

    def test_large_epsilon_fails(self):
        # beta is close to 0, so almost every radius is at least k
        cfg = EnConfig(3, epsilon=5.999)
        with self.assertRaises(ElkinNeimanFailure) as ctx:
            draw_radii(2, cfg, numpy.random.default_rng(1))
        self.assertEqual(ctx.exception.reason, choices.R_TOO_LARGE)


class ElkinNeimanTest(SimpleTestCase):

    def test_single_vertex(self):
        h = elkin_neiman(Graph(1), EnConfig(3, seed=0))
        self.assertEqual(h.size, 0)
        self.assertGreaterEqual(h.diagnostics["attempts"], 1)

    def test_weighted_rejected(self):
        g = Graph(2, [(0, 1, 2)])
        with self.assertRaises(IncompatibleConfigError):
            elkin_neiman(g, EnConfig(3))
        with self.assertRaises(IncompatibleConfigError):
            elkin_neiman_once(g, EnConfig(3))

    def test_single_attempt_failure_reason(self):
        g = graphs.path(2)
        with self.assertRaises(ElkinNeimanFailure) as ctx:
            elkin_neiman_once(g, EnConfig(3, epsilon=5.999, seed=3))
        self.assertEqual(ctx.exception.reason, choices.R_TOO_LARGE)

    def test_attempts_exhausted(self):
        cfg = EnConfig(3, epsilon=5.999, seed=3, max_attempts=5)
        with self.assertRaises(AttemptsExhaustedError) as ctx:
            elkin_neiman(graphs.path(2), cfg)
        self.assertEqual(ctx.exception.attempts, 5)

    def test_valid_on_random_graphs(self):
        for seed in range(5):
            g = graphs.random_graph(30, 0.25, seed)
            count, _ = components(g)
            for alpha in (3, 5, 7):
                h = elkin_neiman(g, EnConfig(alpha, seed=seed))
                self.assertTrue(validate_spanner(g, h).valid)
                self.assertGreaterEqual(h.size, g.n - count)
                self.assertGreaterEqual(h.diagnostics["attempts"], 1)

    def test_tree_keeps_every_edge(self):
        g = graphs.random_tree(30, 2)
        self.assertEqual(elkin_neiman(g, EnConfig(3, seed=1)).size, g.m)

    def test_seed_determines_result(self):
        g = graphs.random_graph(25, 0.3, 4)
        first = elkin_neiman(g, EnConfig(5, seed=8))
        second = elkin_neiman(g, EnConfig(5, seed=8))
        numpy.testing.assert_array_equal(first.edge_mask, second.edge_mask)
        self.assertEqual(first.diagnostics["attempts"],
                second.diagnostics["attempts"])

    def test_one_bfs_per_vertex(self):
        g = graphs.complete(6)
        cfg = EnConfig(3, epsilon=0.01, seed=0)
        before = TRAVERSAL_CALLS["bfs"]
        elkin_neiman_once(g, cfg)
        self.assertEqual(TRAVERSAL_CALLS["bfs"] - before, g.n)

    def test_expired_deadline(self):
        cfg = EnConfig(3, epsilon=0.01)
        with self.assertRaises(DeadlineExceeded):
            elkin_neiman(graphs.cycle(5), cfg, Deadline(0))


class FailureRateTest(SimpleTestCase):

    def setUp(self):
        self.g = gen_er(ErSpec(100, 0.3, weighted=False, seed=1))

    def _failures(self, epsilon, seeds):
        failures = 0
        for seed in seeds:
            try:
                h = elkin_neiman_once(self.g, EnConfig(3, epsilon, seed))
            except ElkinNeimanFailure:
                failures += 1
                continue
            # 4 * n^(1 + 1/k) / epsilon for k = 2
            self.assertLessEqual(h.size, 4 * self.g.n ** 1.5 / epsilon)
        return failures

    def test_failure_fraction(self):
        # About 1 - exp(-epsilon / 3) of the attempts draw a radius >= k
        fraction = self._failures(0.8, range(300)) / 300.0
        self.assertGreaterEqual(fraction, 0.15)
        self.assertLessEqual(fraction, 0.35)

    def test_first_attempt_success(self):
        self.assertLessEqual(self._failures(0.5, range(100)), 50)
