"""
<Program Name>
    clustering.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
    Randomized clustering spanner of Baswana and Sen (BS) for odd stretch
    alpha = 2k - 1 on weighted or unweighted graphs.

    Phase 1 runs k - 1 rounds. Each round samples every cluster with
    probability n^(-1/k). A vertex of an unsampled cluster either joins its
    nearest adjacent sampled cluster, or, if there is none, connects once to
    every adjacent cluster and leaves the clustering. Finding the nearest
    sampled cluster and adding the edges happens in a single pass over the
    vertex's remaining edges.

    Phase 2 connects every vertex once to every adjacent cluster that is
    left.

    Edges are never measured against distances, the algorithm only compares
    edge weights.

"""
import logging

import numpy

from spanners.deadline import ensure
from spanners.exceptions import ConfigError
from spanners.graph import Spanner

logger = logging.getLogger(__name__)

UNCLUSTERED = -1



def _odd_stretch(alpha):
    """Returns k for alpha = 2k - 1 or raises ConfigError. """
    if alpha != int(alpha) or int(alpha) < 3 or int(alpha) % 2 == 0:
        raise ConfigError("Stretch must be an odd integer >= 3, got {}".format(
                alpha))
    return (int(alpha) + 1) // 2



class BsConfig(object):
    def __init__(self, alpha, seed=0):
        self.k = _odd_stretch(alpha)
        self.alpha = int(alpha)
        self.seed = seed



class Clustering(object):
    """Cluster center per vertex (`UNCLUSTERED` if the vertex left the
    clustering) and the sampled flag per center of the current round. """

    def __init__(self, n):
        self.center = numpy.arange(n, dtype=numpy.int64)
        self.sampled = {}


    def clusters(self):
        """Centers in ascending order. """
        return numpy.unique(self.center[self.center != UNCLUSTERED])


    def sample(self, rng, probability):
        centers = self.clusters()
        draws = rng.random(len(centers))
        self.sampled = {int(c): bool(d < probability)
                for c, d in zip(centers, draws)}
        return sum(self.sampled.values())


    def is_sampled(self, center):
        return self.sampled.get(int(center), False)



def _least_edges(g, v, alive, center):
    """Map each cluster adjacent to `v` via alive edges to the key
    `(weight, neighbor)` and index of the least such edge. """
    least = {}
    own = center[v]
    for u, idx in g.adjacency[v]:
        if not alive[idx]:
            continue
        c = center[u]
        if c == UNCLUSTERED or c == own:
            continue
        key = (g.weight(idx), u)
        if c not in least or key < least[c][0]:
            least[c] = (key, idx)
    return least



def _remove_edges_to(g, v, alive, center, targets):
    for u, idx in g.adjacency[v]:
        if alive[idx] and center[u] in targets:
            alive[idx] = False



def _grow_clusters(g, clustering, alive, mask, deadline):
    """One round of phase 1. The sampled flags must be set. """
    center = clustering.center
    next_center = center.copy()

    for v in range(g.n):
        deadline.check()
        c = center[v]
        if c == UNCLUSTERED or clustering.is_sampled(c):
            continue

        least = _least_edges(g, v, alive, center)

        nearest = None
        for cluster, (key, idx) in least.items():
            if clustering.is_sampled(cluster):
                if nearest is None or key < least[nearest][0]:
                    nearest = cluster

        if nearest is None:
            # No sampled neighbor, connect to every adjacent cluster and
            # leave the clustering
            for key, idx in least.values():
                mask[idx] = True
            for _, idx in g.adjacency[v]:
                alive[idx] = False
            next_center[v] = UNCLUSTERED
            continue

        joining_key, joining_idx = least[nearest]
        mask[joining_idx] = True
        next_center[v] = nearest

        dropped = {nearest}
        for cluster, (key, idx) in least.items():
            if key[0] < joining_key[0]:
                mask[idx] = True
                dropped.add(cluster)
        _remove_edges_to(g, v, alive, center, dropped)

    clustering.center = next_center

    # Edges inside a cluster are spanned by the cluster tree
    for idx, (u, v) in enumerate(g.edges):
        if alive[idx] and next_center[u] == next_center[v]:
            alive[idx] = False



def baswana_sen(g, cfg, deadline=None):
    """
    <Purpose>
        Build an alpha-spanner of `g` with the Baswana-Sen clustering
        algorithm.

    <Arguments>
        g:
                A `graph.Graph`, weighted or unweighted.

        cfg:
                A `BsConfig`, its seed determines all random choices.

        deadline: (optional)
                A `deadline.Deadline`, checked per round and per vertex.

    <Exceptions>
        DeadlineExceeded if the deadline expires.

    <Returns>
        A `graph.Spanner` of `g`.

    """
    deadline = ensure(deadline)
    mask = numpy.zeros(g.m, dtype=bool)
    if g.n < 2 or g.m == 0:
        return Spanner(g, mask, cfg.alpha)

    rng = numpy.random.default_rng(cfg.seed)
    probability = g.n ** (-1.0 / cfg.k)
    alive = numpy.ones(g.m, dtype=bool)
    clustering = Clustering(g.n)

    for i in range(cfg.k - 1):
        deadline.check()
        sampled = clustering.sample(rng, probability)
        logger.debug("BS round {}: sampled {} of {} clusters".format(i + 1,
                sampled, len(clustering.sampled)))
        _grow_clusters(g, clustering, alive, mask, deadline)

    # Phase 2: vertex-cluster joining
    center = clustering.center
    for v in range(g.n):
        deadline.check()
        for key, idx in _least_edges(g, v, alive, center).values():
            mask[idx] = True

    return Spanner(g, mask, cfg.alpha)
