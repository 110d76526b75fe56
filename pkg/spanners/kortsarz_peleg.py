"""
<Program Name>
    kortsarz_peleg.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
    The 2-spanner approximation of Kortsarz and Peleg (KP) for unweighted
    graphs.

    An edge {a, b} is covered once it is in the spanner or once both {a, w}
    and {b, w} are in the spanner for some w. While some vertex w has a
    subset U_w of its uncovered neighbors whose uncovered internal edges
    have density above 1, the densest such star {w, u}, u in U_w, is added
    to the spanner, and the star edges and the internal edges E(U_w) are
    removed from the uncovered edge set. Edges that are still uncovered at
    the end are added to the spanner as they are.

    Dense subsets are computed with `flow.max_density_subgraph`. A removal
    only changes the candidates of the endpoints of removed edges and of
    their common neighbors, so the candidates are kept in a lazy max-heap
    and only recomputed when they are popped after a change.

"""
import heapq
import logging

import numpy

from spanners.deadline import ensure
from spanners.exceptions import IncompatibleConfigError
from spanners.flow import DenseSubset, max_density_subgraph
from spanners.graph import Spanner

logger = logging.getLogger(__name__)

KP_ALPHA = 2

# A subset of density above 1 has at least 5 internal edges
MIN_DENSE_EDGES = 5



class UncoveredGraph(object):
    """Uncovered edges as adjacency sets. """

    def __init__(self, g):
        self.g = g
        self.adjacent = [set() for _ in range(g.n)]
        for u, v in g.edges:
            self.adjacent[u].add(v)
            self.adjacent[v].add(u)


    def neighborhood_edges(self, v):
        """Uncovered edges among the uncovered neighbors of `v`. """
        neighbors = self.adjacent[v]
        edges = []
        for a in neighbors:
            for b in self.adjacent[a]:
                if a < b and b in neighbors:
                    edges.append((a, b))
        return edges


    def remove(self, a, b):
        self.adjacent[a].discard(b)
        self.adjacent[b].discard(a)


    def edges(self):
        for a in range(self.g.n):
            for b in self.adjacent[a]:
                if a < b:
                    yield a, b



def dense_neighborhood(uncovered, v, global_relabel=True, gap=True):
    """Densest subset of the uncovered neighbors of `v`, counting only
    uncovered edges. Returns None if `v` has no uncovered neighbor. """
    neighbors = uncovered.adjacent[v]
    if not neighbors:
        return None
    edges = uncovered.neighborhood_edges(v)
    if len(edges) < MIN_DENSE_EDGES:
        return DenseSubset([min(neighbors)], [], owner=v)
    return max_density_subgraph(sorted(neighbors), edges, owner=v,
            global_relabel=global_relabel, gap=gap)



def kortsarz_peleg(g, deadline=None):
    """
    <Purpose>
        Build a 2-spanner of the unweighted graph `g`.

    <Exceptions>
        IncompatibleConfigError if `g` is weighted.
        DeadlineExceeded if the deadline expires.

    <Returns>
        A `graph.Spanner` of `g` with alpha = 2.

    """
    if g.weighted:
        raise IncompatibleConfigError("KP only supports unweighted graphs")

    deadline = ensure(deadline)
    mask = numpy.zeros(g.m, dtype=bool)
    uncovered = UncoveredGraph(g)

    heap = []
    dirty = set()
    for v in range(g.n):
        deadline.check()
        subset = dense_neighborhood(uncovered, v)
        if subset is not None:
            heap.append((-subset.density, v, subset))
    heapq.heapify(heap)

    stars = 0
    while heap:
        deadline.check()
        neg_density, w, subset = heapq.heappop(heap)
        if w in dirty:
            dirty.discard(w)
            subset = dense_neighborhood(uncovered, w)
            if subset is not None:
                heapq.heappush(heap, (-subset.density, w, subset))
            continue

        if subset.density <= 1:
            break

        removed = [(w, u) for u in subset.members]
        removed.extend(subset.internal_edges)

        for a, b in removed:
            dirty.add(a)
            dirty.add(b)
            dirty.update(uncovered.adjacent[a] & uncovered.adjacent[b])

        for u in subset.members:
            mask[g.edge_index(w, u)] = True
        for a, b in removed:
            uncovered.remove(a, b)

        stars += 1
        logger.debug("KP star {} at vertex {}: {} leaves, density {}".format(
                stars, w, len(subset.members), subset.density))

        # The popped candidate of w is gone from the heap
        dirty.discard(w)
        subset = dense_neighborhood(uncovered, w)
        if subset is not None:
            heapq.heappush(heap, (-subset.density, w, subset))

    for a, b in uncovered.edges():
        mask[g.edge_index(a, b)] = True

    return Spanner(g, mask, KP_ALPHA)
