"""
<Program Name>
    berman.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
    Spanner approximation of Berman, Bhattacharyya, Makarychev,
    Raskhodnikova and Yaroslavtsev (BBMRY) for arbitrary stretch alpha >= 1
    on directed graphs. Undirected graphs are handled as bidirected graphs.

    An arc (s, t) is settled by an arc set R if R contains an s-t path of
    length at most alpha * d(s, t). The local graph of (s, t) consists of
    the vertices V^{s,t} and arcs E^{s,t} that lie on some s-t path of at
    most that length. The arc is thick if |V^{s,t}| >= sqrt(n) and thin
    otherwise.

    Thick arcs are settled by the in- and out-arborescences of randomly
    sampled roots. Thin arcs are settled by rounding the solution of a
    covering LP, which demands that every antispanner (an arc set whose
    removal unsettles some arc) is hit. Antispanner rows are generated as
    cutting planes: after each rounding every thin arc is checked, and for
    every unsettled one a minimal antispanner is added to the LP.

    All shortest path trees are computed once up front with
    `scipy.sparse.csgraph.dijkstra`, the sampling only looks up predecessor
    arcs in them.

    The result is always valid. Arcs that are still unsettled when the
    cutting-plane loop ends (iteration cap or no new cut) get a shortest path
    added. An expired deadline raises `DeadlineExceeded` and returns nothing.

"""
import collections
import logging
import math

import numpy
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from spanners.deadline import ensure
from spanners.exceptions import (AntispannerError, ConfigError,
        GraphError)
from spanners.graph import INF, STRETCH_TOLERANCE, Graph, Spanner, \
        bounded_distance
from spanners.lp import LpProblem

logger = logging.getLogger(__name__)

# Roots sampled for the thick arc cover, times sqrt(n) ln(n)
SAMPLING_FACTOR = 3

Antispanner = collections.namedtuple("Antispanner",
        ["target", "arcs", "minimal"])



class BermanConfig(object):
    def __init__(self, alpha, seed=0, max_iterations=200, backend=None):
        if not alpha >= 1:
            raise ConfigError("Stretch must be at least 1, got {}".format(
                    alpha))
        if max_iterations < 1:
            raise ConfigError("At least one cutting-plane iteration is"
                    " required")
        self.alpha = alpha
        self.seed = seed
        self.max_iterations = max_iterations
        self.backend = backend



class DiGraph(object):
    """Directed graph with positive arc weights. Arcs are (u, v, w) triples,
    the arc index is the position in `arcs`. """

    def __init__(self, n, arcs):
        tails, heads, weights = [], [], []
        lookup = {}
        out_rows = [[] for _ in range(n)]
        for idx, (u, v, w) in enumerate(arcs):
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError("Arc {} has an invalid vertex id".format(idx))
            if u == v:
                raise GraphError("Arc {} is a self-loop at {}".format(idx, u))
            if not w > 0:
                raise GraphError("Arc {} has non-positive weight {}".format(
                        idx, w))
            if (u, v) in lookup:
                raise GraphError("Arc {} ({}, {}) is parallel to arc {}"
                        .format(idx, u, v, lookup[(u, v)]))
            lookup[(u, v)] = idx
            tails.append(u)
            heads.append(v)
            weights.append(w)
            out_rows[u].append((v, idx))

        self.n = n
        self.tails = numpy.asarray(tails, dtype=numpy.int64)
        self.heads = numpy.asarray(heads, dtype=numpy.int64)
        self.weights = numpy.asarray(weights, dtype=float)
        self.out_rows = out_rows
        self.lookup = lookup
        self.source_graph = None


    @staticmethod
    def from_graph(g):
        """Bidirected graph of `g`. Edge i becomes arcs 2i (u->v) and
        2i+1 (v->u), so `arc // 2` is the undirected edge index. """
        arcs = []
        for idx, (u, v) in enumerate(g.edges):
            w = g.weight(idx)
            arcs.append((u, v, w))
            arcs.append((v, u, w))
        dg = DiGraph(g.n, arcs)
        dg.source_graph = g
        return dg


    @property
    def num_arcs(self):
        return len(self.tails)


    def arc(self, idx):
        return int(self.tails[idx]), int(self.heads[idx])


    def to_csr(self):
        return csr_matrix((self.weights, (self.tails, self.heads)),
                shape=(self.n, self.n))



class ArborescencePair(object):
    """Shortest path in- and out-arborescences for every root.

    `d_out[r, x]` is d(r, x) and `d_in[r, x]` is d(x, r). `pred_out[r, x]`
    is the vertex before x on a shortest r-x path, `pred_in[r, x]` the
    vertex after x on a shortest x-r path. Missing predecessors are
    negative.
    """

    def __init__(self, d_out, d_in, pred_out, pred_in):
        self.d_out = d_out
        self.d_in = d_in
        self.pred_out = pred_out
        self.pred_in = pred_in


    def out_arcs(self, dg, root):
        """Arcs of the out-arborescence of `root`. """
        preds = self.pred_out[root]
        return [dg.lookup[(int(preds[x]), x)] for x in range(dg.n)
                if preds[x] >= 0]


    def in_arcs(self, dg, root):
        preds = self.pred_in[root]
        return [dg.lookup[(x, int(preds[x]))] for x in range(dg.n)
                if preds[x] >= 0]


    def path_arcs(self, dg, s, t):
        """Arcs of the shortest s-t path in the out-arborescence of s. """
        arcs = []
        x = t
        while x != s:
            p = int(self.pred_out[s, x])
            if p < 0:
                return None
            arcs.append(dg.lookup[(p, x)])
            x = p
        return arcs



def precompute_arborescences(dg):
    if dg.n == 0:
        empty = numpy.zeros((0, 0))
        return ArborescencePair(empty, empty, empty, empty)
    csr = dg.to_csr()
    d_out, pred_out = dijkstra(csr, directed=True, return_predecessors=True)
    d_in, pred_in = dijkstra(csr.transpose().tocsr(), directed=True,
            return_predecessors=True)
    return ArborescencePair(d_out, d_in, pred_out, pred_in)



def _bound(arbs, s, t, alpha):
    return alpha * arbs.d_out[s, t] * (1 + STRETCH_TOLERANCE)



def local_vertex_counts(dg, arbs, alpha, chunk=256):
    """|V^{s,t}| for every arc (s, t). """
    counts = numpy.zeros(dg.num_arcs, dtype=numpy.int64)
    for start in range(0, dg.num_arcs, chunk):
        tails = dg.tails[start:start + chunk]
        heads = dg.heads[start:start + chunk]
        bound = alpha * arbs.d_out[tails, heads] * (1 + STRETCH_TOLERANCE)
        through = arbs.d_out[tails] + arbs.d_in[heads]
        counts[start:start + chunk] = (through <= bound[:, None]).sum(axis=1)
    return counts



def classify_arcs(dg, arbs, alpha):
    """Boolean numpy array, true for thick arcs. """
    return local_vertex_counts(dg, arbs, alpha) >= math.sqrt(dg.n)



def sample_size(n):
    if n < 2:
        return 0
    return int(math.ceil(SAMPLING_FACTOR * math.sqrt(n) * math.log(n)))



def sample_thick_cover(dg, arbs, rng):
    """Union of the in- and out-arborescences of sampled roots as boolean
    arc mask. `rng` is a `numpy.random.Generator` or a seed. If at least n
    roots would be drawn, all roots are used. """
    if not isinstance(rng, numpy.random.Generator):
        rng = numpy.random.default_rng(rng)

    cover = numpy.zeros(dg.num_arcs, dtype=bool)
    count = sample_size(dg.n)
    if count == 0:
        return cover
    if count >= dg.n:
        roots = range(dg.n)
    else:
        roots = sorted(set(int(r) for r in rng.integers(0, dg.n, size=count)))

    for root in roots:
        cover[arbs.out_arcs(dg, root)] = True
        cover[arbs.in_arcs(dg, root)] = True
    return cover



def is_settled(dg, R, arc, alpha, arbs):
    """True iff the arcs of mask `R` contain a path from the tail to the
    head of `arc` of length at most alpha * d(tail, head). """
    s, t = dg.arc(arc)
    bound = _bound(arbs, s, t, alpha)
    return bounded_distance(dg.out_rows, dg.weights, s, t, bound,
            mask=R) != INF



def local_arcs(dg, arbs, arc, alpha):
    """E^{s,t} of `arc` = (s, t) as array of arc indices. """
    s, t = dg.arc(arc)
    bound = _bound(arbs, s, t, alpha)
    through = arbs.d_out[s, dg.tails] + dg.weights + arbs.d_in[t, dg.heads]
    return numpy.flatnonzero(through <= bound)



def build_min_antispanner(dg, arbs, R, arc, alpha):
    """
    <Purpose>
        Build a minimal antispanner for the arc (s, t) that is not settled
        by R.

        A = E^{s,t} minus R is an antispanner, since every short s-t path
        only uses arcs of E^{s,t}. It is minimized greedily in ascending arc
        index order: an arc is dropped from A if the arc stays unsettled
        without it. A single pass yields a minimal set, because settledness
        can only grow with the set of usable arcs.

    <Arguments>
        dg:
                A `DiGraph`.

        arbs:
                Its `ArborescencePair`.

        R:
                Boolean arc mask.

        arc:
                Index of the target arc (s, t).

        alpha:
                Stretch.

    <Exceptions>
        AntispannerError if the arc is settled by R.

    <Returns>
        An `Antispanner` tuple.

    """
    if is_settled(dg, R, arc, alpha, arbs):
        raise AntispannerError("Arc {} is already settled".format(arc))

    R = numpy.asarray(R, dtype=bool)
    candidates = [int(a) for a in local_arcs(dg, arbs, arc, alpha)
            if not R[a]]

    # Arcs usable for paths: everything outside A
    usable = numpy.ones(dg.num_arcs, dtype=bool)
    usable[candidates] = False

    kept = []
    for a in candidates:
        usable[a] = True
        if is_settled(dg, usable, arc, alpha, arbs):
            usable[a] = False
            kept.append(a)

    return Antispanner(arc, frozenset(kept), True)



def round_solution(x, n, rng):
    """Keep each arc independently with probability
    min(1, x * sqrt(n) * ln(n)). """
    factor = math.sqrt(n) * math.log(n) if n > 1 else 0.0
    probability = numpy.minimum(1.0, x * factor)
    return rng.random(len(x)) < probability



class BermanResult(object):
    """Selected arcs of a `DiGraph` plus run information. """

    def __init__(self, dg, arc_mask, alpha, diagnostics):
        self.dg = dg
        self.arc_mask = arc_mask
        self.alpha = alpha
        self.diagnostics = diagnostics


    def edge_mask(self):
        """Undirected edges with at least one selected orientation. """
        return self.arc_mask[0::2] | self.arc_mask[1::2]



def berman_directed(dg, cfg, deadline=None):
    """
    <Purpose>
        Run the cutting-plane algorithm on the directed graph `dg`.

    <Arguments>
        dg:
                A `DiGraph`.

        cfg:
                A `BermanConfig`.

        deadline: (optional)
                A `deadline.Deadline`, checked per cutting-plane iteration,
                per separation check and per repaired arc.

    <Exceptions>
        DeadlineExceeded if `deadline` expires.

    <Returns>
        A `BermanResult`. `diagnostics` contains the number of iterations,
        LP rows, final objective, thick and thin arc counts, the arcs fixed
        by shortest paths and whether the budget was exhausted.

    """
    deadline = ensure(deadline)
    alpha = cfg.alpha
    rng = numpy.random.default_rng(cfg.seed)

    arbs = precompute_arborescences(dg)
    thick = classify_arcs(dg, arbs, alpha)
    thin_arcs = numpy.flatnonzero(~thick)
    cover = sample_thick_cover(dg, arbs, rng)

    problem = LpProblem(dg.num_arcs, backend=cfg.backend)
    R = numpy.zeros(dg.num_arcs, dtype=bool)
    diagnostics = {
        "thick": int(thick.sum()),
        "thin": len(thin_arcs),
        "iterations": 0,
        "objective": 0.0,
        "objective_trace": [],
        "budget_exhausted": False,
        "clean_exit": False,
    }

    while True:
        if diagnostics["iterations"] >= cfg.max_iterations:
            diagnostics["budget_exhausted"] = True
            break
        deadline.check()
        diagnostics["iterations"] += 1

        solution = problem.solve()
        diagnostics["objective"] = solution.objective
        diagnostics["objective_trace"].append(solution.objective)
        R = round_solution(solution.x, dg.n, rng)

        unsettled = 0
        new_rows = 0
        for arc in thin_arcs:
            deadline.check()
            if is_settled(dg, R, arc, alpha, arbs):
                continue
            unsettled += 1
            antispanner = build_min_antispanner(dg, arbs, R, arc, alpha)
            if problem.add_row(antispanner.arcs):
                new_rows += 1

        logger.debug("BBMRY iteration {}: objective {}, {} unsettled"
                " thin arcs, {} new rows".format(diagnostics["iterations"],
                solution.objective, unsettled, new_rows))

        if unsettled == 0:
            diagnostics["clean_exit"] = True
            break
        if new_rows == 0:
            break

    if diagnostics["budget_exhausted"]:
        logger.warning("BBMRY budget exhausted after {} iterations, adding"
                " shortest paths for unsettled arcs".format(
                diagnostics["iterations"]))

    selected = R | cover
    fixed = 0
    for arc in range(dg.num_arcs):
        deadline.check()
        if is_settled(dg, selected, arc, alpha, arbs):
            continue
        s, t = dg.arc(arc)
        selected[arbs.path_arcs(dg, s, t)] = True
        fixed += 1

    diagnostics["rows"] = len(problem.rows)
    diagnostics["fallback_arcs"] = fixed
    return BermanResult(dg, selected, alpha, diagnostics)



def berman_spanner(g, cfg, deadline=None):
    """Berman et al. spanner of `g`. For a `graph.Graph` the bidirected
    graph is solved and a `graph.Spanner` is returned, which keeps an edge
    iff at least one orientation was selected. For a `DiGraph` the
    `BermanResult` is returned. """
    if isinstance(g, DiGraph):
        return berman_directed(g, cfg, deadline)
    if not isinstance(g, Graph):
        raise GraphError("Expected a Graph or DiGraph, got {}".format(
                type(g).__name__))

    result = berman_directed(DiGraph.from_graph(g), cfg, deadline)
    spanner = Spanner(g, result.edge_mask(), cfg.alpha)
    spanner.diagnostics = result.diagnostics
    return spanner
