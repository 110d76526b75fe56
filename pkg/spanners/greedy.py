"""
<Program Name>
    greedy.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
    The greedy spanner algorithm of Althoefer, Das, Dobkin, Joseph and
    Soares (ADDJS).

    Edges are examined in nondecreasing weight order, similar to Kruskal's
    algorithm. An edge {u, v} is added if the partial spanner has no u-v path
    of length at most alpha * w({u, v}). The check is a Dijkstra search on the
    partial spanner that is cut off at that bound.

    Unweighted graphs have no natural edge order. The order is configurable,
    see `choices.EDGE_ORDER`.

"""
import collections
import logging

import numpy

from spanners import choices
from spanners.deadline import ensure
from spanners.exceptions import ConfigError
from spanners.graph import INF, Spanner, bounded_distance

logger = logging.getLogger(__name__)



class GreedyConfig(object):
    def __init__(self, alpha, order=choices.ORDER_INPUT, seed=0):
        if not alpha >= 1:
            raise ConfigError("Stretch must be at least 1, got {}".format(
                    alpha))
        if order not in choices._values(choices.EDGE_ORDER):
            raise ConfigError("Unknown edge order '{}'".format(order))
        self.alpha = alpha
        self.order = order
        self.seed = seed



def _discovery_order(g, breadth_first):
    """Edge indices in the order a BFS (or DFS) over all components first
    encounters them. """
    seen_edges = numpy.zeros(g.m, dtype=bool)
    visited = numpy.zeros(g.n, dtype=bool)
    order = []

    for root in range(g.n):
        if visited[root]:
            continue
        visited[root] = True
        pending = collections.deque([root])
        while pending:
            u = pending.popleft() if breadth_first else pending.pop()
            for v, idx in g.adjacency[u]:
                if not seen_edges[idx]:
                    seen_edges[idx] = True
                    order.append(idx)
                if not visited[v]:
                    visited[v] = True
                    pending.append(v)
    return order



def edge_order(g, cfg):
    """Return the edge indices in the order `addjs` examines them.

    Weighted graphs are sorted by weight, equal weights keep their input
    order. For unweighted graphs the order is selected by `cfg.order`.
    """
    if g.weighted:
        return sorted(range(g.m), key=lambda idx: (g.weights[idx], idx))

    if cfg.order == choices.ORDER_RANDOM:
        rng = numpy.random.default_rng(cfg.seed)
        return [int(idx) for idx in rng.permutation(g.m)]
    if cfg.order == choices.ORDER_BFS:
        return _discovery_order(g, breadth_first=True)
    if cfg.order == choices.ORDER_DFS:
        return _discovery_order(g, breadth_first=False)
    return list(range(g.m))



def addjs(g, cfg, deadline=None):
    """
    <Purpose>
        Build an alpha-spanner of `g` with the greedy algorithm.

    <Arguments>
        g:
                A `graph.Graph`.

        cfg:
                A `GreedyConfig`.

        deadline: (optional)
                A `deadline.Deadline`, checked once per examined edge.

    <Exceptions>
        DeadlineExceeded if the deadline expires.

    <Returns>
        A `graph.Spanner` of `g`.

    """
    deadline = ensure(deadline)
    mask = numpy.zeros(g.m, dtype=bool)

    # Adjacency rows of the partial spanner, grown as edges are added, so
    # that searches never scan edges outside the spanner
    rows = [[] for _ in range(g.n)]

    for idx in edge_order(g, cfg):
        deadline.check()
        u, v = g.edges[idx]
        bound = cfg.alpha * g.weight(idx)
        if bounded_distance(rows, g.weights, u, v, bound) == INF:
            mask[idx] = True
            rows[u].append((v, idx))
            rows[v].append((u, idx))

    logger.debug("ADDJS kept {} of {} edges for alpha={}".format(
            int(mask.sum()), g.m, cfg.alpha))
    return Spanner(g, mask, cfg.alpha)
