"""
<Program Name>
    graph.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
    Graph representation and the shortest-path primitives every spanner
    algorithm and every quality measure is built on.

    A `Graph` is an immutable undirected graph with vertices 0..n-1 and an
    optional positive weight per edge. Unweighted graphs have no weights at
    all; every distance routine in this module uses unit weights for them.

    A `Spanner` is an edge subset of a parent graph, stored as a boolean mask
    over the parent's edge indices, together with the stretch it was built
    for.

    Traversals keep their scratch state private, so graphs can be shared
    between threads and processes. Each traversal increments a counter in
    `TRAVERSAL_CALLS`, which allows tests to assert that an algorithm does
    (or does not) compute distances.

    All-pairs distances for validation, the minimum spanning forest and the
    connected components are delegated to `scipy.sparse.csgraph`. The
    all-pairs distances with hop counts, which scipy does not provide, are
    computed here with a lexicographic (distance, hops) Dijkstra.

"""
import collections
import heapq
import logging

import numpy
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import (connected_components, minimum_spanning_tree,
        shortest_path)

from spanners.exceptions import GraphError

logger = logging.getLogger(__name__)

INF = float("inf")

# Relative slack when comparing a spanner distance with alpha times the graph
# distance, to absorb rounding of non-integer stretches
STRETCH_TOLERANCE = 1e-9

# Number of calls per traversal type, e.g. TRAVERSAL_CALLS["dijkstra"]
TRAVERSAL_CALLS = collections.Counter()

Validation = collections.namedtuple("Validation",
        ["valid", "worst_pair", "worst_stretch"])



class Graph(object):
    """Undirected graph with vertices 0..n-1 and optional edge weights.

    Edges are passed as `(u, v)` pairs for unweighted graphs or as
    `(u, v, w)` triples for weighted graphs. The position of an edge in the
    passed sequence is its edge index, which is used by spanner masks.

    NOTE: A graph is never modified after construction.
    """

    def __init__(self, n, edges=(), weighted=None):
        edges = list(edges)
        if weighted is None:
            weighted = bool(edges) and all(len(edge) == 3 for edge in edges)

        if n < 0:
            raise GraphError("Vertex count must not be negative")

        self.n = n
        self.weighted = weighted

        endpoints = []
        weights = [] if weighted else None
        index = {}
        adjacency = [[] for _ in range(n)]

        for idx, edge in enumerate(edges):
            u, v = int(edge[0]), int(edge[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError("Edge {} ({}, {}) has an invalid vertex id"
                        .format(idx, u, v))
            if u == v:
                raise GraphError("Edge {} is a self-loop at {}".format(idx, u))

            key = (u, v) if u < v else (v, u)
            if key in index:
                raise GraphError("Edge {} ({}, {}) is parallel to edge {}"
                        .format(idx, u, v, index[key]))
            index[key] = idx

            if weighted:
                if len(edge) < 3:
                    raise GraphError("Edge {} of a weighted graph has no"
                            " weight".format(idx))
                w = float(edge[2])
                if not w > 0:
                    raise GraphError("Edge {} has non-positive weight {}"
                            .format(idx, edge[2]))
                weights.append(w)

            endpoints.append((u, v))
            adjacency[u].append((v, idx))
            adjacency[v].append((u, idx))

        self.edges = tuple(endpoints)
        self.weights = tuple(weights) if weighted else None
        self.adjacency = tuple(tuple(row) for row in adjacency)
        self._index = index


    def __repr__(self):
        return "<Graph n={} m={} {}>".format(self.n, self.m,
                "weighted" if self.weighted else "unweighted")


    @property
    def m(self):
        return len(self.edges)


    def weight(self, idx):
        """Return the weight of an edge, 1 for unweighted graphs. """
        return self.weights[idx] if self.weighted else 1.0


    def edge_index(self, u, v):
        """Return the index of edge {u, v} or None. """
        return self._index.get((u, v) if u < v else (v, u))


    def has_edge(self, u, v):
        return self.edge_index(u, v) is not None


    def degree(self, v):
        return len(self.adjacency[v])


    def neighbors(self, v):
        return [u for u, _ in self.adjacency[v]]


    def total_weight(self):
        if self.weighted:
            return float(sum(self.weights))
        return float(self.m)


    @property
    def absolute_density(self):
        """m/n """
        return self.m / self.n if self.n else 0.0


    @property
    def relative_density(self):
        """m / (n choose 2) """
        pairs = self.n * (self.n - 1) // 2
        return self.m / pairs if pairs else 0.0


    def unweighted(self):
        """Return the same graph without weights. Edge indices are kept, so
        spanner masks are interchangeable between both graphs. """
        if not self.weighted:
            return self
        return Graph(self.n, self.edges, weighted=False)


    def to_csr(self, mask=None):
        """Return a symmetric `scipy.sparse.csr_matrix` of the (masked)
        graph. Unweighted edges get weight 1. """
        if mask is None:
            selected = numpy.arange(self.m)
        else:
            selected = numpy.flatnonzero(numpy.asarray(mask, dtype=bool))

        if self.m:
            ends = numpy.asarray(self.edges, dtype=numpy.int64)[selected]
        else:
            ends = numpy.zeros((0, 2), dtype=numpy.int64)

        if self.weighted:
            data = numpy.asarray(self.weights, dtype=float)[selected]
        else:
            data = numpy.ones(len(selected), dtype=float)

        rows = numpy.concatenate([ends[:, 0], ends[:, 1]])
        cols = numpy.concatenate([ends[:, 1], ends[:, 0]])
        return csr_matrix((numpy.concatenate([data, data]), (rows, cols)),
                shape=(self.n, self.n))



class Spanner(object):
    """Edge subset of a parent graph built for stretch `alpha`.

    The stretch property is not checked on construction, use
    `validate_spanner` for that.
    """

    def __init__(self, parent, edge_mask=None, alpha=1.0):
        if edge_mask is None:
            edge_mask = numpy.zeros(parent.m, dtype=bool)
        else:
            edge_mask = numpy.array(edge_mask, dtype=bool)

        if len(edge_mask) != parent.m:
            raise GraphError("Edge mask has length {}, parent graph has {}"
                    " edges".format(len(edge_mask), parent.m))

        self.parent = parent
        self.edge_mask = edge_mask
        self.alpha = alpha
        # Run information of the building algorithm, e.g. attempts
        self.diagnostics = {}


    def __repr__(self):
        return "<Spanner alpha={} size={} of {!r}>".format(self.alpha,
                self.size, self.parent)


    @staticmethod
    def from_edge_indices(parent, indices, alpha=1.0):
        mask = numpy.zeros(parent.m, dtype=bool)
        mask[list(indices)] = True
        return Spanner(parent, mask, alpha)


    @property
    def size(self):
        return int(self.edge_mask.sum())


    def edge_indices(self):
        return [int(idx) for idx in numpy.flatnonzero(self.edge_mask)]


    def edges(self):
        return [self.parent.edges[idx] for idx in self.edge_indices()]


    def weight(self):
        if self.parent.weighted:
            weights = numpy.asarray(self.parent.weights, dtype=float)
            return float(weights[self.edge_mask].sum())
        return float(self.size)


    def degrees(self):
        """Return the per-vertex degree in the spanner as numpy array. """
        degrees = numpy.zeros(self.parent.n, dtype=numpy.int64)
        for u, v in self.edges():
            degrees[u] += 1
            degrees[v] += 1
        return degrees



class DistanceMatrix(object):
    """All-pairs distances and minimum hop counts among shortest paths.
    `dist[u, v]` is `inf` for disconnected pairs, in which case `hops[u, v]`
    is 0. """

    def __init__(self, dist, hops):
        self.n = dist.shape[0]
        self.dist = dist
        self.hops = hops



def bounded_distance(rows, weights, src, dst, bound=INF, mask=None):
    """
    <Purpose>
        Dijkstra search from `src` that stops as soon as `dst` is settled or
        every remaining label exceeds `bound`.

        This is the query behind the greedy algorithm ("is there a short
        enough path in the partial spanner?") and behind the settledness
        check of Berman et al. It works on any adjacency rows, i.e. on the
        rows of a `Graph`, the incrementally grown rows of a partial spanner
        or the out-rows of a `berman.DiGraph`.

    <Arguments>
        rows:
                Sequence of rows, where row u lists `(v, idx)` pairs of
                neighbors/heads and edge/arc indices.

        weights:
                Sequence of weights per edge/arc index, or None for unit
                weights.

        src, dst:
                Vertices.

        bound:
                Largest distance of interest.

        mask:
                Optional sequence of booleans per edge/arc index. Only edges
                with a true mask entry are traversed.

    <Returns>
        The distance from `src` to `dst`, or `inf` if it exceeds `bound`.

    """
    TRAVERSAL_CALLS["dijkstra"] += 1
    if src == dst:
        return 0.0

    dist = {src: 0.0}
    done = set()
    heap = [(0.0, src)]
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        if u == dst:
            return d
        done.add(u)
        for v, idx in rows[u]:
            if mask is not None and not mask[idx]:
                continue
            nd = d + (weights[idx] if weights is not None else 1.0)
            if nd > bound:
                continue
            if nd < dist.get(v, INF):
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return INF



def dijkstra_bounded(g, src, bound=INF, mask=None):
    """Single source shortest paths in `g` (restricted to the edges of an
    optional `mask`) up to distance `bound`.

    Returns two lists indexed by vertex: the distance (`inf` if unreached or
    beyond `bound`) and the index of the edge through which the vertex was
    reached on a shortest path (None for `src` and unreached vertices).
    """
    TRAVERSAL_CALLS["dijkstra"] += 1
    dist = [INF] * g.n
    pred = [None] * g.n
    done = [False] * g.n
    dist[src] = 0.0

    heap = [(0.0, src)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, idx in g.adjacency[u]:
            if mask is not None and not mask[idx]:
                continue
            nd = d + g.weight(idx)
            if nd > bound:
                continue
            if nd < dist[v]:
                dist[v] = nd
                pred[v] = idx
                heapq.heappush(heap, (nd, v))
    return dist, pred



def bfs_depth_limited(g, src, depth, mask=None):
    """Breadth-first search from `src` that does not go deeper than `depth`
    hops.

    Returns a dict that maps every vertex within `depth` hops to a tuple of
    its hop distance and the first edge on the discovered path, i.e. the
    edge leaving `src` (None for `src` itself). Only reached vertices are
    stored, so the memory needed is proportional to the explored ball.
    """
    TRAVERSAL_CALLS["bfs"] += 1
    reached = {src: (0, None)}
    queue = collections.deque([(src, 0, None)])
    while queue:
        y, distance, first = queue.popleft()
        if distance >= depth:
            continue
        for u, idx in g.adjacency[y]:
            if u in reached:
                continue
            if mask is not None and not mask[idx]:
                continue
            traveled = idx if first is None else first
            reached[u] = (distance + 1, traveled)
            queue.append((u, distance + 1, traveled))
    return reached



def _lexicographic_dijkstra(g, src, mask, dist_row, hops_row):
    """Fill `dist_row` and `hops_row` for `src`, preferring fewer hops among
    equally short paths. """
    TRAVERSAL_CALLS["dijkstra"] += 1
    dist_row[src] = 0.0
    done = [False] * g.n
    heap = [(0.0, 0, src)]
    while heap:
        d, h, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, idx in g.adjacency[u]:
            if mask is not None and not mask[idx]:
                continue
            nd = d + g.weight(idx)
            nh = h + 1
            if nd < dist_row[v] or (nd == dist_row[v] and nh < hops_row[v]):
                dist_row[v] = nd
                hops_row[v] = nh
                heapq.heappush(heap, (nd, nh, v))



def apsp(g, mask=None):
    """Return the `DistanceMatrix` of `g`, or of the subgraph given by
    `mask`. Among all shortest paths the minimum hop count is reported. """
    dist = numpy.full((g.n, g.n), INF)
    hops = numpy.zeros((g.n, g.n), dtype=numpy.int64)
    for src in range(g.n):
        dist_row = [INF] * g.n
        hops_row = [0] * g.n
        _lexicographic_dijkstra(g, src, mask, dist_row, hops_row)
        dist[src] = dist_row
        hops[src] = hops_row
    return DistanceMatrix(dist, hops)



def components(g, mask=None):
    """Return the number of connected components and a numpy array with the
    component label of every vertex. """
    if g.n == 0:
        return 0, numpy.zeros(0, dtype=numpy.int32)
    count, labels = connected_components(g.to_csr(mask), directed=False)
    return int(count), labels



def mst_weight(g):
    """Weight of a minimum spanning forest of `g`, which is n - c for an
    unweighted graph with c components. """
    if g.m == 0:
        return 0.0
    if not g.weighted:
        count, _ = components(g)
        return float(g.n - count)
    return float(minimum_spanning_tree(g.to_csr()).sum())



def validate_spanner(g, h):
    """
    <Purpose>
        Check the stretch of spanner `h` for all pairs of vertices, i.e.
        d_H(u, v) <= alpha * d_G(u, v). Mutually unreachable pairs satisfy
        the property.

        Distances are computed with `scipy.sparse.csgraph.shortest_path`,
        independently of the traversals in this module.

    <Arguments>
        g:
                The parent graph.

        h:
                A `Spanner` of `g`.

    <Exceptions>
        GraphError if `h` is not a spanner of `g`.

    <Returns>
        A `Validation` tuple of the verdict, the pair with the largest
        d_H/d_G ratio (None if there is no connected pair) and that ratio.

    """
    if h.parent is not g:
        raise GraphError("Spanner does not belong to the passed graph")

    if g.n < 2:
        return Validation(True, None, 1.0)

    dist_g = shortest_path(g.to_csr(), method="D", directed=False)
    dist_h = shortest_path(g.to_csr(h.edge_mask), method="D", directed=False)

    connected = numpy.isfinite(dist_g) & (dist_g > 0)
    if not connected.any():
        return Validation(True, None, 1.0)

    with numpy.errstate(divide="ignore", invalid="ignore"):
        ratio = numpy.where(connected, dist_h / numpy.where(connected,
                dist_g, 1.0), 0.0)

    u, v = numpy.unravel_index(numpy.argmax(ratio), ratio.shape)
    worst = float(ratio[u, v])
    valid = worst <= h.alpha * (1 + STRETCH_TOLERANCE)

    if not valid:
        logger.debug("Stretch violated for pair ({}, {}): {} > {}".format(
                u, v, worst, h.alpha))

    return Validation(valid, (int(u), int(v)), worst)
