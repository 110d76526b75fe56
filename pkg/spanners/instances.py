"""
<Program Name>
    instances.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
    Benchmark instances: a generator for Erdos-Renyi graphs with a fixed
    edge count, parsers for SteinLib (STP) and TSPLIB files and a simple
    line based native format to store generated corpora.

    Native format:
    ```
    # optional comment lines
    <n> <m> weighted|unweighted
    <u> <v> [<w>]
    ...
    ```
    Vertices are 0-indexed, integer weights are written without decimals.

    Corpus specification (JSON), expanded into one `ErSpec` per graph:
    ```
    {
      "name": "random",
      "seed": 1,
      "groups": [
        {"n": [10, 20], "densities": [0.1, 0.5, 0.9], "count": 10,
         "weighted": true}
      ]
    }
    ```

"""
import collections
import json
import logging
import math
import os
import re

import numpy

from spanners.exceptions import (CountMismatchError, InfeasibleSpecError,
        InstanceError, MalformedSectionError, UnsupportedWeightTypeError,
        ZeroWeightEdgeError)
from spanners.graph import Graph

logger = logging.getLogger(__name__)

Instance = collections.namedtuple("Instance", ["name", "graph"])

NATIVE_EXTENSIONS = (".graph", ".txt")



class ErSpec(object):
    """G(n, M) graph with M = round(rel_density * n(n-1)/2) edges. """

    def __init__(self, n, rel_density, weighted=False, seed=0, name=None):
        if n < 1:
            raise InfeasibleSpecError("At least one vertex is required")
        if not 0 < rel_density < 1:
            raise InfeasibleSpecError("Relative density must be in (0, 1), got"
                    " {}".format(rel_density))
        self.n = n
        self.rel_density = rel_density
        self.weighted = weighted
        self.seed = seed
        self.name = name or "er-n{}-d{}-s{}".format(n, rel_density, seed)


    @property
    def pairs(self):
        return self.n * (self.n - 1) // 2


    @property
    def edge_count(self):
        return int(round(self.rel_density * self.pairs))



def gen_er(spec):
    """
    <Purpose>
        Sample a graph with exactly `spec.edge_count` distinct edges chosen
        uniformly without replacement. Weights, if any, are uniform integers
        in [1, n]. The result only depends on `spec`.

    <Exceptions>
        InfeasibleSpecError if more edges than vertex pairs are requested.

    <Returns>
        A `graph.Graph` with edges in lexicographic order.

    """
    count = spec.edge_count
    if count > spec.pairs:
        raise InfeasibleSpecError("{} edges requested, only {} pairs exist"
                .format(count, spec.pairs))

    rng = numpy.random.default_rng(spec.seed)
    codes = numpy.sort(rng.choice(spec.pairs, size=count, replace=False))
    rows, cols = numpy.triu_indices(spec.n, k=1)
    tails = rows[codes]
    heads = cols[codes]

    if spec.weighted:
        weights = rng.integers(1, spec.n + 1, size=count)
        edges = zip(tails.tolist(), heads.tolist(), weights.tolist())
    else:
        edges = zip(tails.tolist(), heads.tolist())
    return Graph(spec.n, edges, weighted=spec.weighted)



def _decode(data):
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data



def _number(token, log_prefix):
    try:
        value = float(token)
    except ValueError:
        raise MalformedSectionError("{} Invalid number '{}'".format(
                log_prefix, token))
    return value



def _add_edge(edges, u, v, w, log_prefix):
    """Add an undirected edge, keeping the lighter one of duplicates. """
    key = (u, v) if u < v else (v, u)
    if key in edges:
        logger.warning("{} Duplicate edge {}-{}, keeping the lighter one"
                .format(log_prefix, u, v))
        w = min(w, edges[key])
    edges[key] = w



def parse_stp(data, name="stp"):
    """
    <Purpose>
        Read the graph section of a SteinLib STP file. Other sections, e.g.
        terminals and coordinates, are skipped. Vertex ids are converted
        from 1-indexed to 0-indexed.

    <Exceptions>
        MalformedSectionError if the graph section is missing, incomplete,
        holds arcs or unreadable lines.
        CountMismatchError if the number of E lines differs from the
        declared edge count.

    <Returns>
        A weighted `graph.Graph`.

    """
    log_prefix = "Instance '{}':".format(name)
    section = None
    nodes = None
    declared = None
    found = 0
    edges = {}
    seen_graph = False

    for number, line in enumerate(_decode(data).splitlines(), start=1):
        tokens = line.split()
        if not tokens or tokens[0].startswith("#"):
            continue
        keyword = tokens[0].upper()

        if keyword == "SECTION":
            if section is not None:
                raise MalformedSectionError("{} Section '{}' is not closed"
                        " before line {}".format(log_prefix, section, number))
            section = tokens[1].upper() if len(tokens) > 1 else ""
            seen_graph = seen_graph or section == "GRAPH"
            continue
        if keyword == "END":
            section = None
            continue
        if keyword == "EOF":
            break
        if section != "GRAPH":
            continue

        if keyword == "NODES":
            nodes = int(tokens[1])
        elif keyword == "EDGES":
            declared = int(tokens[1])
        elif keyword in ("ARCS", "A"):
            raise MalformedSectionError("{} Directed arcs are not supported"
                    .format(log_prefix))
        elif keyword == "E":
            if nodes is None or len(tokens) < 4:
                raise MalformedSectionError("{} Invalid edge on line {}"
                        .format(log_prefix, number))
            u, v = int(tokens[1]) - 1, int(tokens[2]) - 1
            if not (0 <= u < nodes and 0 <= v < nodes) or u == v:
                raise MalformedSectionError("{} Invalid edge {} {} on line {}"
                        .format(log_prefix, tokens[1], tokens[2], number))
            _add_edge(edges, u, v, _number(tokens[3], log_prefix), log_prefix)
            found += 1

    if section is not None:
        raise MalformedSectionError("{} Section '{}' is not closed".format(
                log_prefix, section))
    if not seen_graph or nodes is None or declared is None:
        raise MalformedSectionError("{} No complete graph section".format(
                log_prefix))
    if found != declared:
        raise CountMismatchError("{} {} edges declared, {} found".format(
                log_prefix, declared, found))

    return Graph(nodes, [(u, v, w) for (u, v), w in sorted(edges.items())],
            weighted=True)



def _nint(x):
    return int(x + 0.5)



# Index pairs (i, j) in the order of the weights of an explicit matrix
_EXPLICIT_ORDER = {
    "FULL_MATRIX": lambda n: ((i, j) for i in range(n) for j in range(n)),
    "UPPER_ROW": lambda n: ((i, j) for i in range(n)
            for j in range(i + 1, n)),
    "LOWER_ROW": lambda n: ((i, j) for i in range(n) for j in range(i)),
    "UPPER_DIAG_ROW": lambda n: ((i, j) for i in range(n)
            for j in range(i, n)),
    "LOWER_DIAG_ROW": lambda n: ((i, j) for i in range(n)
            for j in range(i + 1)),
}

_COORD_WEIGHTS = {
    "EUC_2D": _nint,
    "CEIL_2D": math.ceil,
}

_SECTION = re.compile(r"^[A-Z_]+_SECTION$|^EOF$")



def parse_tsplib(data, name="tsplib"):
    """
    <Purpose>
        Read a symmetric TSPLIB instance as complete weighted graph.

        Supported edge weight types are EUC_2D (Euclidean distance rounded
        to the nearest integer), CEIL_2D (rounded up) and EXPLICIT with the
        formats FULL_MATRIX, UPPER_ROW, LOWER_ROW, UPPER_DIAG_ROW and
        LOWER_DIAG_ROW.

    <Exceptions>
        UnsupportedWeightTypeError for other weight types or formats and for
        asymmetric instances.
        ZeroWeightEdgeError if some edge has weight 0.
        CountMismatchError if the data section is shorter than DIMENSION
        requires.
        MalformedSectionError for a missing DIMENSION or data section.

    <Returns>
        A weighted `graph.Graph`.

    """
    log_prefix = "Instance '{}':".format(name)
    header = {}
    sections = {}
    current = None

    for line in _decode(data).splitlines():
        line = line.strip()
        if not line:
            continue
        token = line.split()[0].rstrip(":").upper()
        if _SECTION.match(token):
            if token == "EOF":
                break
            current = token
            sections[current] = []
            continue
        if current is None:
            key, _, value = line.partition(":")
            header[key.strip().upper()] = value.strip()
        else:
            sections[current].extend(line.split())

    if header.get("TYPE", "TSP").split()[0].upper() != "TSP":
        raise UnsupportedWeightTypeError("{} Only symmetric TSP instances are"
                " supported, got '{}'".format(log_prefix, header["TYPE"]))
    if "DIMENSION" not in header:
        raise MalformedSectionError("{} DIMENSION is missing".format(
                log_prefix))
    n = int(header["DIMENSION"])
    weight_type = header.get("EDGE_WEIGHT_TYPE", "").upper()

    weights = {}
    if weight_type in _COORD_WEIGHTS:
        tokens = sections.get("NODE_COORD_SECTION")
        if tokens is None:
            raise MalformedSectionError("{} NODE_COORD_SECTION is missing"
                    .format(log_prefix))
        if len(tokens) != 3 * n:
            raise CountMismatchError("{} {} nodes declared, {} coordinate"
                    " values found".format(log_prefix, n, len(tokens)))
        coords = numpy.array([_number(t, log_prefix) for t in tokens]) \
                .reshape(n, 3)[:, 1:]
        rounding = _COORD_WEIGHTS[weight_type]
        for i in range(n):
            for j in range(i + 1, n):
                d = math.hypot(*(coords[i] - coords[j]))
                weights[(i, j)] = rounding(d)

    elif weight_type == "EXPLICIT":
        layout = header.get("EDGE_WEIGHT_FORMAT", "").upper()
        if layout not in _EXPLICIT_ORDER:
            raise UnsupportedWeightTypeError("{} Unsupported edge weight"
                    " format '{}'".format(log_prefix, layout))
        tokens = sections.get("EDGE_WEIGHT_SECTION")
        if tokens is None:
            raise MalformedSectionError("{} EDGE_WEIGHT_SECTION is missing"
                    .format(log_prefix))
        order = list(_EXPLICIT_ORDER[layout](n))
        if len(tokens) < len(order):
            raise CountMismatchError("{} {} weights expected, {} found".format(
                    log_prefix, len(order), len(tokens)))
        for (i, j), token in zip(order, tokens):
            if i == j:
                continue
            w = _number(token, log_prefix)
            key = (i, j) if i < j else (j, i)
            if key in weights and weights[key] != w:
                raise UnsupportedWeightTypeError("{} Matrix is asymmetric at"
                        " ({}, {})".format(log_prefix, i, j))
            weights[key] = w

    else:
        raise UnsupportedWeightTypeError("{} Unsupported edge weight type"
                " '{}'".format(log_prefix, weight_type))

    zero = [key for key, w in weights.items() if w == 0]
    if zero:
        raise ZeroWeightEdgeError("{} {} edges have weight 0, e.g. {}".format(
                log_prefix, len(zero), zero[0]))

    return Graph(n, [(i, j, w) for (i, j), w in sorted(weights.items())],
            weighted=True)



def _format_weight(w):
    return str(int(w)) if float(w).is_integer() else repr(float(w))



def format_native(g):
    lines = ["{} {} {}".format(g.n, g.m,
            "weighted" if g.weighted else "unweighted")]
    for idx, (u, v) in enumerate(g.edges):
        if g.weighted:
            lines.append("{} {} {}".format(u, v,
                    _format_weight(g.weights[idx])))
        else:
            lines.append("{} {}".format(u, v))
    return "\n".join(lines) + "\n"



def parse_native(data, name="native"):
    log_prefix = "Instance '{}':".format(name)
    lines = [line.split() for line in _decode(data).splitlines()]
    lines = [tokens for tokens in lines if tokens and
            not tokens[0].startswith("#")]
    if not lines or len(lines[0]) != 3 or \
            lines[0][2] not in ("weighted", "unweighted"):
        raise MalformedSectionError("{} Invalid header".format(log_prefix))

    n, m = int(lines[0][0]), int(lines[0][1])
    weighted = lines[0][2] == "weighted"
    if len(lines) - 1 != m:
        raise CountMismatchError("{} {} edges declared, {} found".format(
                log_prefix, m, len(lines) - 1))

    edges = []
    for tokens in lines[1:]:
        if len(tokens) != (3 if weighted else 2):
            raise MalformedSectionError("{} Invalid edge line '{}'".format(
                    log_prefix, " ".join(tokens)))
        edge = [int(tokens[0]), int(tokens[1])]
        if weighted:
            edge.append(_number(tokens[2], log_prefix))
        edges.append(tuple(edge))
    return Graph(n, edges, weighted=weighted)



def write_native(g, path):
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        file.write(format_native(g))



def read_native(path):
    with open(path, encoding="utf-8") as file:
        return parse_native(file.read(), _instance_name(path))



def _instance_name(path):
    return os.path.splitext(os.path.basename(path))[0]



def load_instance(path):
    """Read an instance file, the format is picked by its extension. """
    name = _instance_name(path)
    extension = os.path.splitext(path)[1].lower()
    with open(path, "rb") as file:
        data = file.read()

    if extension == ".stp":
        graph = parse_stp(data, name)
    elif extension == ".tsp":
        graph = parse_tsplib(data, name)
    elif extension in NATIVE_EXTENSIONS:
        graph = parse_native(data, name)
    else:
        raise InstanceError("Unknown instance format '{}'".format(path))
    return Instance(name, graph)



def load_corpus(paths):
    """Instances of all files and directories in `paths`, sorted by name. """
    files = []
    for path in paths:
        if os.path.isdir(path):
            for root, dirs, names in os.walk(path):
                files.extend(os.path.join(root, name) for name in names)
        elif os.path.isfile(path):
            files.append(path)
        else:
            logger.info("Could not find path '{}'.".format(path))

    known = (".stp", ".tsp") + NATIVE_EXTENSIONS
    instances = [load_instance(path) for path in sorted(files)
            if os.path.splitext(path)[1].lower() in known]
    return sorted(instances, key=lambda instance: instance.name)



def expand_corpus(spec):
    """
    <Purpose>
        Expand a corpus specification (dict or JSON text) into `ErSpec`s.
        Every group is the cartesian product of its vertex counts and
        densities, with `count` graphs per combination. Seeds are
        consecutive numbers starting at the corpus seed.

    <Exceptions>
        MalformedSectionError for missing keys.
        InfeasibleSpecError for invalid sizes or densities.

    <Returns>
        A list of `ErSpec`s.

    """
    if isinstance(spec, (str, bytes)):
        spec = json.loads(_decode(spec))

    prefix = spec.get("name", "er")
    seed = int(spec.get("seed", 0))
    specs = []
    for group in spec.get("groups", []):
        try:
            sizes = group["n"]
            densities = group["densities"]
        except KeyError as e:
            raise MalformedSectionError("Corpus group is missing {}".format(e))

        sizes = sizes if isinstance(sizes, list) else [sizes]
        for n in sizes:
            for density in densities:
                for i in range(int(group.get("count", 1))):
                    name = "{}-n{}-d{}-{}".format(prefix, n, density, i)
                    specs.append(ErSpec(int(n), float(density),
                            weighted=bool(group.get("weighted", True)),
                            seed=seed, name=name))
                    seed += 1
    return specs
