"""
<Program Name>
    metrics.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
    Quality measures of a spanner with respect to its graph, and their
    aggregation over groups of benchmark results.

    Per (graph, spanner) pair:
      - size |E'| and sparseness |E'|/|E|
      - lightness W(E')/W(MSF(G)), for unweighted graphs |E'|/(n - c)
      - mean and max degree of spanner and graph
      - effective stretch d_H/d_G per vertex pair (mean and max)
      - hop comparison of the minimum-hop shortest paths in H and G

    Vertex pairs with d_G = 0 or d_G = inf are left out of the stretch and
    hop statistics.

"""
import logging

import numpy

from spanners.exceptions import EmptyGroupError, GraphError
from spanners.graph import apsp, components, mst_weight

logger = logging.getLogger(__name__)



class QualityReport(object):

    FIELDS = ("size", "sparseness", "lightness", "mean_degree",
            "mean_degree_original", "max_degree", "max_degree_original",
            "stretch_mean", "stretch_max", "hop_fewer", "hop_equal",
            "hop_more", "hop_mean_diff", "pairs")

    def __init__(self, **kwargs):
        for field in self.FIELDS:
            setattr(self, field, kwargs.get(field))


    def __repr__(self):
        return "<QualityReport size={} stretch_max={}>".format(self.size,
                self.stretch_max)


    def as_dict(self):
        return {field: getattr(self, field) for field in self.FIELDS}



def _lightness(g, h):
    if g.weighted:
        forest = mst_weight(g)
        return h.weight() / forest if forest else 1.0
    count, _ = components(g)
    forest = g.n - count
    return h.size / forest if forest else 1.0



def measure(g, h):
    """
    <Purpose>
        Compute the `QualityReport` of spanner `h` of `g`. Distances and hop
        counts come from `graph.apsp` on both graphs.

    <Exceptions>
        GraphError if `h` is not a spanner of `g`.

    <Returns>
        A `QualityReport`.

    """
    if h.parent is not g:
        raise GraphError("Spanner does not belong to the passed graph")

    size = h.size
    degrees = h.degrees()
    original = numpy.array([g.degree(v) for v in range(g.n)],
            dtype=numpy.int64)

    report = QualityReport(
            size=size,
            sparseness=size / g.m if g.m else 1.0,
            lightness=_lightness(g, h),
            mean_degree=float(degrees.mean()) if g.n else 0.0,
            mean_degree_original=float(original.mean()) if g.n else 0.0,
            max_degree=int(degrees.max()) if g.n else 0,
            max_degree_original=int(original.max()) if g.n else 0)

    dist_g = apsp(g)
    dist_h = apsp(g, h.edge_mask)

    upper = numpy.triu(numpy.ones((g.n, g.n), dtype=bool), k=1)
    pairs = upper & numpy.isfinite(dist_g.dist) & (dist_g.dist > 0)
    report.pairs = int(pairs.sum())

    if not report.pairs:
        report.stretch_mean = report.stretch_max = 1.0
        report.hop_fewer = report.hop_equal = report.hop_more = 0.0
        report.hop_mean_diff = 0.0
        return report

    stretch = dist_h.dist[pairs] / dist_g.dist[pairs]
    report.stretch_mean = float(stretch.mean())
    report.stretch_max = float(stretch.max())

    # Unreachable pairs in H only occur for invalid spanners
    reachable = numpy.isfinite(dist_h.dist[pairs])
    diff = (dist_h.hops[pairs] - dist_g.hops[pairs])[reachable]
    if len(diff):
        report.hop_fewer = float((diff < 0).mean())
        report.hop_equal = float((diff == 0).mean())
        report.hop_more = float((diff > 0).mean())
        report.hop_mean_diff = float(diff.mean())
    else:
        report.hop_fewer = report.hop_equal = report.hop_more = 0.0
        report.hop_mean_diff = 0.0
    return report



def _value(row, field):
    if hasattr(row, "as_dict"):
        row = row.as_dict()
    value = row.get(field)
    if value is None or value == "":
        return None
    return float(value)



def _group_key(row, keys):
    if hasattr(row, "as_dict"):
        row = row.as_dict()
    return tuple(row.get(key) for key in keys)



def aggregate(rows, keys, fields):
    """Group `rows` (dicts, or objects with `as_dict`) by the values of
    `keys` and report count, mean, median and population standard
    deviation of every field. Missing values are skipped, a field without
    values in a group is reported as None.

    Returns a list of dicts ordered by group key. Raises EmptyGroupError if
    there are no rows.
    """
    rows = list(rows)
    if not rows:
        raise EmptyGroupError("Nothing to aggregate")

    groups = {}
    for row in rows:
        groups.setdefault(_group_key(row, keys), []).append(row)

    result = []
    for key in sorted(groups, key=lambda k: tuple(str(v) for v in k)):
        members = groups[key]
        entry = dict(zip(keys, key))
        entry["count"] = len(members)
        for field in fields:
            values = [v for v in (_value(row, field) for row in members)
                    if v is not None]
            if values:
                entry[field + "_mean"] = float(numpy.mean(values))
                entry[field + "_median"] = float(numpy.median(values))
                entry[field + "_std"] = float(numpy.std(values))
            else:
                entry[field + "_mean"] = None
                entry[field + "_median"] = None
                entry[field + "_std"] = None
        result.append(entry)
    return result



def stretch_summary(rows):
    """(mean, mean max, max) of the effective stretch over instances: the
    mean of the per-instance mean stretches, the mean of the per-instance
    maxima and the overall maximum. """
    means = [v for v in (_value(r, "stretch_mean") for r in rows)
            if v is not None]
    maxima = [v for v in (_value(r, "stretch_max") for r in rows)
            if v is not None]
    if not means or not maxima:
        raise EmptyGroupError("No stretch values to summarize")
    return float(numpy.mean(means)), float(numpy.mean(maxima)), \
            float(max(maxima))



def solved_summary(rows, solved="solved"):
    """Share of solved runs in percent and the average wall time of the
    solved runs in seconds (None without timings). """
    rows = list(rows)
    if not rows:
        raise EmptyGroupError("No runs to summarize")

    def _outcome(row):
        return row.as_dict()["outcome"] if hasattr(row, "as_dict") \
                else row.get("outcome")

    done = [row for row in rows if _outcome(row) == solved]
    times = [v for v in (_value(row, "wall_ms") for row in done)
            if v is not None]
    average = float(numpy.mean(times)) / 1000.0 if times else None
    return 100.0 * len(done) / len(rows), average
