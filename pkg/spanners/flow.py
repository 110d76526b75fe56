"""
<Program Name>
    flow.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
    Maximum flows with the push-relabel method of Goldberg and Tarjan, and
    Goldberg's maximum density subgraph computation on top of it.

    The push-relabel implementation processes active nodes in FIFO order and
    uses two heuristics, which can be switched off individually:

      - global relabeling: all heights are periodically recomputed as exact
        residual distances to the sink (or to the source for nodes that
        cannot reach the sink anymore) with a reverse BFS
      - gap relabeling: if no node is left at some height h < n, every node
        above h cannot reach the sink and is lifted over n at once

    The densest subgraph search scales all capacities to integers, so that
    flows and cuts are exact and density ties are resolved reliably.

"""
import collections
import logging
from fractions import Fraction

from spanners.exceptions import EmptyViewError, FlowError

logger = logging.getLogger(__name__)

FlowResult = collections.namedtuple("FlowResult",
        ["value", "source_side", "sink_side"])



class FlowNetwork(object):
    """Network with nodes 0..num_nodes-1. Arcs are stored in pairs, arc
    `a ^ 1` is the reverse of arc `a`. """

    def __init__(self, num_nodes):
        self.num_nodes = num_nodes
        self.head = []
        self.capacity = []
        self.arcs = [[] for _ in range(num_nodes)]


    def add_arc(self, u, v, capacity, reverse_capacity=0):
        """Add arc u->v and its reverse. A positive `reverse_capacity` makes
        the pair an undirected edge. Returns the index of u->v. """
        if capacity < 0 or reverse_capacity < 0:
            raise FlowError("Capacities must not be negative")
        idx = len(self.head)
        self.head.extend([v, u])
        self.capacity.extend([capacity, reverse_capacity])
        self.arcs[u].append(idx)
        self.arcs[v].append(idx + 1)
        return idx



def _residual_bfs(net, residual, root, towards):
    """Distances in the residual network from `root` (towards=False) or to
    `root` (towards=True). Unreached nodes are missing from the dict. """
    distance = {root: 0}
    queue = collections.deque([root])
    while queue:
        v = queue.popleft()
        for a in net.arcs[v]:
            u = net.head[a]
            if u in distance:
                continue
            # Arc a^1 leads from u to v
            cap = residual[a ^ 1] if towards else residual[a]
            if cap > 0:
                distance[u] = distance[v] + 1
                queue.append(u)
    return distance



def max_flow(net, s, t, global_relabel=True, gap=True):
    """
    <Purpose>
        Compute a maximum s-t flow of `net` with FIFO push-relabel.

    <Arguments>
        net:
                A `FlowNetwork`, which is not modified.

        s, t:
                Source and sink node.

        global_relabel, gap:
                Toggle the heuristics.

    <Exceptions>
        FlowError if s == t.

    <Returns>
        A `FlowResult` of the flow value, the set of nodes reachable from s
        in the final residual network (minimal source side of a minimum cut)
        and the set of nodes that can reach t (its complement is the maximal
        source side of a minimum cut).

    """
    if s == t:
        raise FlowError("Source and sink must differ")

    n = net.num_nodes
    head = net.head
    residual = list(net.capacity)
    excess = [0] * n
    height = [0] * n
    current = [0] * n
    # Number of nodes per height, for heights below n
    count = [0] * (n + 1)

    active = collections.deque()

    def _activate(v):
        if v != s and v != t and excess[v] > 0:
            active.append(v)

    def _relabel_globally():
        to_sink = _residual_bfs(net, residual, t, towards=True)
        to_source = _residual_bfs(net, residual, s, towards=True)
        for h in range(n + 1):
            count[h] = 0
        for v in range(n):
            if v == s:
                height[v] = n
            elif v in to_sink:
                height[v] = to_sink[v]
            elif v in to_source:
                height[v] = n + to_source[v]
            else:
                height[v] = 2 * n
            if height[v] < n:
                count[height[v]] += 1
            current[v] = 0

    height[s] = n
    for v in range(n):
        if v != s:
            count[0] += 1
    for a in net.arcs[s]:
        if residual[a] > 0:
            delta = residual[a]
            v = head[a]
            residual[a] -= delta
            residual[a ^ 1] += delta
            excess[v] += delta
            excess[s] -= delta
            if excess[v] == delta:
                _activate(v)

    if global_relabel:
        _relabel_globally()

    relabels = 0
    while active:
        u = active.popleft()
        while excess[u] > 0:
            arcs = net.arcs[u]
            if current[u] < len(arcs):
                a = arcs[current[u]]
                v = head[a]
                if residual[a] > 0 and height[u] == height[v] + 1:
                    delta = min(excess[u], residual[a])
                    residual[a] -= delta
                    residual[a ^ 1] += delta
                    excess[u] -= delta
                    excess[v] += delta
                    if excess[v] == delta:
                        _activate(v)
                else:
                    current[u] += 1
                continue

            # Relabel
            old = height[u]
            lowest = min((height[head[a]] for a in arcs if residual[a] > 0),
                    default=2 * n - 1)
            height[u] = lowest + 1
            current[u] = 0
            relabels += 1
            if old < n:
                count[old] -= 1
            if height[u] < n:
                count[height[u]] += 1

            if gap and old < n and count[old] == 0:
                for v in range(n):
                    if old < height[v] < n:
                        count[height[v]] -= 1
                        height[v] = n + 1
                        current[v] = 0

            if global_relabel and relabels >= n:
                relabels = 0
                _relabel_globally()

    source_side = frozenset(_residual_bfs(net, residual, s, towards=False))
    sink_side = frozenset(_residual_bfs(net, residual, t, towards=True))
    return FlowResult(excess[t], source_side, sink_side)



class DenseSubset(object):
    """Vertex subset `members` with `internal_edges` edges among them and
    density |internal_edges| / |members| as `fractions.Fraction`. `owner`
    is the vertex whose neighborhood was searched, if any. """

    def __init__(self, members, internal_edges, owner=None):
        self.owner = owner
        self.members = frozenset(members)
        self.internal_edges = list(internal_edges)
        self.density = Fraction(len(self.internal_edges), len(self.members))


    def __repr__(self):
        return "<DenseSubset owner={} size={} density={}>".format(self.owner,
                len(self.members), self.density)



def _internal(edges, members):
    return [(a, b) for a, b in edges if a in members and b in members]



def max_density_subgraph(vertices, edges, owner=None, global_relabel=True,
        gap=True):
    """
    <Purpose>
        Find a vertex subset U maximizing |E(U)|/|U| in the graph view given
        by `vertices` and `edges`, with Goldberg's binary search over min
        cuts.

        With D = n(n-1), a guess p/D is tested on the network
        s->v: m*D, v->t: m*D + 2p - deg(v)*D and arcs of capacity D in both
        directions per edge. The maximal source side of a minimum cut is
        nonempty iff some subset has density >= p/D. Since two distinct
        densities differ by at least 1/D, the search ends with a densest
        subset when the interval of p has width 1.

    <Arguments>
        vertices:
                Iterable of hashable vertex ids.

        edges:
                Iterable of (a, b) pairs of vertex ids in `vertices`.

        owner: (optional)
                Stored in the returned `DenseSubset`.

    <Exceptions>
        EmptyViewError if `vertices` is empty.

    <Returns>
        A `DenseSubset`. Without edges a single vertex of density 0.

    """
    vertices = list(vertices)
    edges = list(edges)
    if not vertices:
        raise EmptyViewError("Densest subgraph of an empty vertex set")
    if not edges:
        return DenseSubset([vertices[0]], [], owner)

    n = len(vertices)
    m = len(edges)
    scale = n * (n - 1)
    local = {v: i for i, v in enumerate(vertices)}
    degree = [0] * n
    for a, b in edges:
        degree[local[a]] += 1
        degree[local[b]] += 1

    s, t = n, n + 1

    def _densest_side(p):
        net = FlowNetwork(n + 2)
        for i in range(n):
            net.add_arc(s, i, m * scale)
            net.add_arc(i, t, m * scale + 2 * p - degree[i] * scale)
        for a, b in edges:
            net.add_arc(local[a], local[b], scale, reverse_capacity=scale)
        result = max_flow(net, s, t, global_relabel=global_relabel, gap=gap)
        return [vertices[i] for i in range(n) if i not in result.sink_side]

    lo, hi = 0, m * scale
    best = None
    while hi - lo > 1:
        p = (lo + hi) // 2
        side = _densest_side(p)
        if side:
            lo, best = p, side
        else:
            hi = p

    if best is None:
        best = _densest_side(lo)

    members = frozenset(best)
    return DenseSubset(members, _internal(edges, members), owner)
