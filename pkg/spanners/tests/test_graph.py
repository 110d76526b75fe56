import itertools
import math

import numpy
from django.test import SimpleTestCase

from spanners.exceptions import GraphError
from spanners.graph import (INF, TRAVERSAL_CALLS, Graph, Spanner, apsp,
        bfs_depth_limited, components, dijkstra_bounded, mst_weight,
        validate_spanner)
from spanners.tests import graphs


class GraphTest(SimpleTestCase):

    def test_adjacency_is_consistent(self):
        g = graphs.petersen()
        rows = sum(len(row) for row in g.adjacency)
        self.assertEqual(rows, 2 * g.m)
        for idx, (u, v) in enumerate(g.edges):
            self.assertIn((v, idx), g.adjacency[u])
            self.assertIn((u, idx), g.adjacency[v])

    def test_invalid_graphs(self):
        with self.assertRaises(GraphError):
            Graph(3, [(0, 0)])
        with self.assertRaises(GraphError):
            Graph(3, [(0, 1), (1, 0)])
        with self.assertRaises(GraphError):
            Graph(3, [(0, 3)])
        with self.assertRaises(GraphError):
            Graph(3, [(0, 1, 0)])
        with self.assertRaises(GraphError):
            Graph(3, [(0, 1, -2)])

    def test_weight_inference(self):
        self.assertTrue(Graph(2, [(0, 1, 5)]).weighted)
        self.assertFalse(Graph(2, [(0, 1)]).weighted)
        self.assertEqual(Graph(2, [(0, 1)]).weight(0), 1.0)

    def test_unweighted_view_keeps_indices(self):
        g = Graph(3, [(0, 1, 4), (1, 2, 7)])
        view = g.unweighted()
        self.assertFalse(view.weighted)
        self.assertEqual(view.edges, g.edges)
        self.assertEqual(view.edge_index(2, 1), 1)

    def test_densities(self):
        g = graphs.complete(5)
        self.assertEqual(g.relative_density, 1.0)
        self.assertEqual(g.absolute_density, 2.0)

    def test_spanner_mask_length(self):
        with self.assertRaises(GraphError):
            Spanner(graphs.cycle(4), [True, False])


class DijkstraTest(SimpleTestCase):

    def test_bound_cuts_search(self):
        dist, pred = dijkstra_bounded(graphs.path(3), 0, bound=1)
        self.assertEqual(dist[1], 1)
        self.assertEqual(dist[2], INF)
        self.assertEqual(pred[1], 0)
        self.assertIsNone(pred[2])

    def test_isolated_source(self):
        g = Graph(4, [(1, 2), (2, 3)])
        dist, _ = dijkstra_bounded(g, 0)
        self.assertEqual(dist, [0.0, INF, INF, INF])

    def test_mask(self):
        g = graphs.cycle(5)
        mask = numpy.ones(5, dtype=bool)
        mask[g.edge_index(0, 1)] = False
        dist, _ = dijkstra_bounded(g, 0, mask=mask)
        self.assertEqual(dist[1], 4)

    def test_matches_bellman_ford(self):
        for seed in range(50):
            g = graphs.random_graph(1 + seed % 20, 0.3, seed, weighted=True)
            oracle = graphs.bellman_ford(g, 0)
            dist, _ = dijkstra_bounded(g, 0)
            self.assertEqual(dist, oracle)

    def test_matches_apsp_rows(self):
        g = graphs.random_graph(12, 0.4, 3, weighted=True)
        matrix = apsp(g)
        for src in range(g.n):
            dist, _ = dijkstra_bounded(g, src)
            self.assertEqual(list(matrix.dist[src]), dist)


class BfsTest(SimpleTestCase):

    def test_star(self):
        g = graphs.star(6)
        reached = bfs_depth_limited(g, 0, 1)
        self.assertEqual(len(reached), 6)
        for v in range(1, 6):
            self.assertEqual(reached[v], (1, g.edge_index(0, v)))

    def test_path_depth(self):
        reached = bfs_depth_limited(graphs.path(5), 0, 2)
        self.assertEqual(sorted(reached), [0, 1, 2])

    def test_first_edge_leaves_source(self):
        g = graphs.path(5)
        reached = bfs_depth_limited(g, 2, 2)
        self.assertEqual(reached[0], (2, g.edge_index(1, 2)))
        self.assertEqual(reached[4], (2, g.edge_index(2, 3)))
        self.assertEqual(reached[2], (0, None))

    def test_hops_match_unweighted_distances(self):
        for seed in range(10):
            g = graphs.random_graph(15, 0.2, seed)
            reached = bfs_depth_limited(g, 0, g.n)
            dist, _ = dijkstra_bounded(g, 0)
            for v in range(g.n):
                if dist[v] == INF:
                    self.assertNotIn(v, reached)
                else:
                    self.assertEqual(reached[v][0], dist[v])

    def test_counter(self):
        before = TRAVERSAL_CALLS["bfs"]
        bfs_depth_limited(graphs.path(3), 0, 1)
        self.assertEqual(TRAVERSAL_CALLS["bfs"], before + 1)


class ApspTest(SimpleTestCase):

    def test_triangle(self):
        matrix = apsp(graphs.complete(3))
        for u in range(3):
            for v in range(3):
                expected = 0 if u == v else 1
                self.assertEqual(matrix.dist[u, v], expected)
                self.assertEqual(matrix.hops[u, v], expected)

    def test_weighted_square_with_diagonal(self):
        g = Graph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1),
                (0, 2, 2)])
        matrix = apsp(g)
        self.assertEqual(matrix.dist[0, 2], 2)
        # The diagonal is as short as the two hop paths
        self.assertEqual(matrix.hops[0, 2], 1)
        self.assertEqual(matrix.dist[1, 3], 2)
        self.assertEqual(matrix.hops[1, 3], 2)

    def test_disconnected(self):
        matrix = apsp(Graph(3, [(0, 1)]))
        self.assertEqual(matrix.dist[0, 2], INF)
        self.assertEqual(matrix.hops[0, 2], 0)

    def test_matches_floyd_warshall(self):
        for seed in range(10):
            g = graphs.random_graph(8, 0.5, seed, weighted=True)
            oracle = graphs.floyd_warshall(g)
            matrix = apsp(g)
            numpy.testing.assert_array_equal(matrix.dist, numpy.array(oracle))

    def test_hop_bounds(self):
        g = graphs.random_graph(10, 0.4, 7, weighted=True)
        matrix = apsp(g)
        longest = max(g.weights)
        for u in range(g.n):
            for v in range(g.n):
                if math.isfinite(matrix.dist[u, v]):
                    self.assertLessEqual(matrix.hops[u, v], g.n - 1)
                    self.assertGreaterEqual(matrix.hops[u, v],
                            math.ceil(matrix.dist[u, v] / longest))


class MstTest(SimpleTestCase):

    def test_triangle(self):
        self.assertEqual(mst_weight(Graph(3, [(0, 1, 1), (1, 2, 2),
                (0, 2, 3)])), 3)

    def test_tree(self):
        g = graphs.random_tree(12, 4, weighted=True)
        self.assertEqual(mst_weight(g), g.total_weight())

    def test_unweighted_forest(self):
        self.assertEqual(mst_weight(Graph(5, [(0, 1), (1, 2), (0, 2)])), 2)

    def test_brute_force(self):
        for seed in range(5):
            g = graphs.random_graph(6, 0.6, seed, weighted=True)
            count, _ = components(g)
            best = INF
            for subset in itertools.combinations(range(g.m), g.n - count):
                mask = numpy.zeros(g.m, dtype=bool)
                mask[list(subset)] = True
                if components(g, mask)[0] == count:
                    best = min(best, sum(g.weights[i] for i in subset))
            if best == INF:
                best = 0.0
            self.assertAlmostEqual(mst_weight(g), best)
            self.assertLessEqual(mst_weight(g), g.total_weight())


class ComponentsTest(SimpleTestCase):

    def test_counts(self):
        self.assertEqual(components(graphs.cycle(5))[0], 1)
        two = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        count, labels = components(two)
        self.assertEqual(count, 2)
        self.assertEqual(labels[0], labels[2])
        self.assertNotEqual(labels[0], labels[3])
        self.assertEqual(components(Graph(5))[0], 5)


class ValidateSpannerTest(SimpleTestCase):

    def test_identity(self):
        g = graphs.petersen()
        for alpha in (1, 1.5, 3):
            h = Spanner(g, numpy.ones(g.m, dtype=bool), alpha)
            self.assertTrue(validate_spanner(g, h).valid)

    def test_cycle_minus_edge(self):
        g = graphs.cycle(5)
        mask = numpy.ones(5, dtype=bool)
        mask[0] = False
        result = validate_spanner(g, Spanner(g, mask, 3))
        self.assertFalse(result.valid)
        self.assertEqual(result.worst_stretch, 4)
        self.assertEqual(sorted(result.worst_pair), [0, 1])
        self.assertTrue(validate_spanner(g, Spanner(g, mask, 5)).valid)

    def test_disconnected_pairs_are_satisfied(self):
        g = Graph(4, [(0, 1), (2, 3)])
        self.assertTrue(validate_spanner(g, Spanner(g, [True, True], 1)).valid)

    def test_foreign_spanner(self):
        with self.assertRaises(GraphError):
            validate_spanner(graphs.cycle(3), Spanner(graphs.cycle(3), None))
