"""
<Program Name>
    probabilistic.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
    Probabilistic spanner of Elkin and Neiman (EN) for unweighted graphs and
    odd stretch alpha = 2k - 1.

    Every vertex u draws a radius r_u from an exponential distribution with
    parameter beta = ln(3n/epsilon)/k and broadcasts it to all vertices
    within k hops. A receiving vertex x keeps m_u = r_u - d(u, x) together
    with the first edge on a shortest path from x towards u, and adds the
    edges of all messages that are at most 1 below the largest message.

    Instead of storing all messages in n x n tables, the messages are
    collected per receiving vertex with a depth-limited BFS, so that only the
    state of the current receiver is held in memory.

    A single attempt fails with probability at most epsilon, either because
    some r_u is not below k or because the result has fewer than n - c edges
    for c components. `elkin_neiman` repeats attempts with derived seeds.

<Usage>
    ```
    cfg = EnConfig(alpha=3, epsilon=0.8, seed=42)
    spanner = elkin_neiman(graph, cfg)
    spanner.diagnostics["attempts"]
    ```

"""
import logging
import math

import numpy

from spanners import choices
from spanners.deadline import ensure
from spanners.exceptions import (AttemptsExhaustedError, ConfigError,
        ElkinNeimanFailure, IncompatibleConfigError)
from spanners.graph import Spanner, bfs_depth_limited, components

logger = logging.getLogger(__name__)



class EnConfig(object):
    def __init__(self, alpha, epsilon=0.8, seed=0, max_attempts=200):
        if alpha != int(alpha) or int(alpha) < 3 or int(alpha) % 2 == 0:
            raise ConfigError("Stretch must be an odd integer >= 3, got {}"
                    .format(alpha))
        if not epsilon > 0:
            raise ConfigError("Epsilon must be positive, got {}".format(
                    epsilon))
        if max_attempts < 1:
            raise ConfigError("At least one attempt is required")

        self.alpha = int(alpha)
        self.k = (self.alpha + 1) // 2
        self.epsilon = epsilon
        self.seed = seed
        self.max_attempts = max_attempts


    def beta(self, n):
        beta = math.log(3.0 * n / self.epsilon) / self.k
        if beta <= 0:
            raise ConfigError("Epsilon {} is too large for n={}, beta must be"
                    " positive".format(self.epsilon, n))
        return beta



class BroadcastState(object):
    """Messages received by one vertex: the message value and stored edge
    per sender. """

    def __init__(self, receiver, r, reached):
        self.receiver = receiver
        self.m = {}
        self.e = {}
        for u, (distance, first_edge) in reached.items():
            self.m[u] = r[u] - distance
            self.e[u] = first_edge


    def selected_edges(self):
        """Edges of all messages with m_u >= max m - 1. The receiver's own
        message takes part in the maximum but carries no edge. """
        threshold = max(self.m.values()) - 1
        return [self.e[u] for u, value in self.m.items()
                if value >= threshold and self.e[u] is not None]



def draw_radii(n, cfg, rng):
    """Draw r_u ~ Exp(beta) per vertex by inverse transform with U in
    (0, 1]. Raises ElkinNeimanFailure if some r_u >= k. """
    beta = cfg.beta(n)
    uniform = 1.0 - rng.random(n)
    r = -numpy.log(uniform) / beta

    too_large = numpy.flatnonzero(r >= cfg.k)
    if len(too_large):
        raise ElkinNeimanFailure(choices.R_TOO_LARGE,
                "Vertex {} drew r={} >= k={}".format(too_large[0],
                r[too_large[0]], cfg.k))
    return r



def _attempt(g, cfg, rng, deadline):
    if g.weighted:
        raise IncompatibleConfigError("EN only supports unweighted graphs")

    mask = numpy.zeros(g.m, dtype=bool)
    if g.n == 0:
        return Spanner(g, mask, cfg.alpha)

    r = draw_radii(g.n, cfg, rng)

    for x in range(g.n):
        deadline.check()
        reached = bfs_depth_limited(g, x, cfg.k)
        state = BroadcastState(x, r, reached)
        mask[state.selected_edges()] = True

    count, _ = components(g)
    size = int(mask.sum())
    if size < g.n - count:
        raise ElkinNeimanFailure(choices.TOO_FEW_EDGES,
                "Spanner has {} edges, at least {} are required".format(size,
                g.n - count))

    return Spanner(g, mask, cfg.alpha)



def elkin_neiman_once(g, cfg, deadline=None):
    """
    <Purpose>
        Run a single EN attempt seeded with `cfg.seed`.

    <Exceptions>
        IncompatibleConfigError if `g` is weighted.
        ConfigError if epsilon is so large that beta is not positive.
        ElkinNeimanFailure with `reason` R_TOO_LARGE or TOO_FEW_EDGES.
        DeadlineExceeded if the deadline expires.

    <Returns>
        A `graph.Spanner` that is a valid alpha-spanner of `g`.

    """
    rng = numpy.random.default_rng(cfg.seed)
    return _attempt(g, cfg, rng, ensure(deadline))



def elkin_neiman(g, cfg, deadline=None):
    """Repeat EN attempts until one succeeds. Attempt i uses the i-th child
    of `numpy.random.SeedSequence(cfg.seed)`, so the result only depends on
    the graph and the seed. The number of attempts is stored in
    `diagnostics["attempts"]` of the returned spanner.

    Raises AttemptsExhaustedError after `cfg.max_attempts` failures.
    """
    deadline = ensure(deadline)
    children = numpy.random.SeedSequence(cfg.seed).spawn(cfg.max_attempts)

    for attempt, child in enumerate(children, start=1):
        try:
            spanner = _attempt(g, cfg, numpy.random.default_rng(child),
                    deadline)

        except ElkinNeimanFailure as e:
            logger.debug("EN attempt {} failed: {}".format(attempt, e))
            continue

        spanner.diagnostics["attempts"] = attempt
        return spanner

    raise AttemptsExhaustedError(cfg.max_attempts)
