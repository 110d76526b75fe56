"""
<Program Name>
    graphs.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
    Small graph fixtures and brute-force oracles shared by the test modules.

"""
import itertools

import numpy

from spanners.graph import INF, Graph


def path(n, weights=None):
    if weights is None:
        return Graph(n, [(i, i + 1) for i in range(n - 1)])
    return Graph(n, [(i, i + 1, w) for i, w in enumerate(weights)])


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph(n, list(itertools.combinations(range(n), 2)))


def star(n):
    return Graph(n, [(0, i) for i in range(1, n)])


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def random_graph(n, p, seed, weighted=False, max_weight=10):
    rng = numpy.random.default_rng(seed)
    edges = []
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            if weighted:
                edges.append((u, v, int(rng.integers(1, max_weight + 1))))
            else:
                edges.append((u, v))
    return Graph(n, edges, weighted=weighted)


def random_tree(n, seed, weighted=False):
    rng = numpy.random.default_rng(seed)
    edges = []
    for v in range(1, n):
        u = int(rng.integers(0, v))
        if weighted:
            edges.append((u, v, int(rng.integers(1, 10))))
        else:
            edges.append((u, v))
    return Graph(n, edges, weighted=weighted)


def floyd_warshall(g, mask=None):
    """All-pairs distances of the (masked) graph by Floyd-Warshall. """
    dist = [[INF] * g.n for _ in range(g.n)]
    for v in range(g.n):
        dist[v][v] = 0.0
    for idx, (u, v) in enumerate(g.edges):
        if mask is not None and not mask[idx]:
            continue
        w = g.weight(idx)
        dist[u][v] = min(dist[u][v], w)
        dist[v][u] = min(dist[v][u], w)
    for k in range(g.n):
        for i in range(g.n):
            for j in range(g.n):
                if dist[i][k] + dist[k][j] < dist[i][j]:
                    dist[i][j] = dist[i][k] + dist[k][j]
    return dist


def bellman_ford(g, src):
    dist = [INF] * g.n
    dist[src] = 0.0
    for _ in range(g.n):
        for idx, (u, v) in enumerate(g.edges):
            w = g.weight(idx)
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
            if dist[v] + w < dist[u]:
                dist[u] = dist[v] + w
    return dist


def is_spanner(g, mask, alpha):
    dist_g = floyd_warshall(g)
    dist_h = floyd_warshall(g, mask)
    for u in range(g.n):
        for v in range(g.n):
            if dist_g[u][v] < INF and \
                    dist_h[u][v] > alpha * dist_g[u][v] * (1 + 1e-9):
                return False
    return True


def sparsest_spanner_size(g, alpha):
    """Size of a sparsest alpha-spanner by exhaustive search, small graphs
    only. """
    for size in range(g.m + 1):
        for subset in itertools.combinations(range(g.m), size):
            mask = numpy.zeros(g.m, dtype=bool)
            mask[list(subset)] = True
            if is_spanner(g, mask, alpha):
                return size
    return g.m
