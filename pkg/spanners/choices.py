"""
<Program Name>
    choices.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
    Defines tuples that contain the possible values for benchmark record
    properties, i.e. algorithm ids, run outcomes, failure reasons and the edge
    orders of the greedy algorithm.

    The tuples are used as `choices` of command line arguments and to write
    human readable names in reports.

    This module also provides helper functions to look up display names and
    to list the ids of a choices tuple.

"""


def _display_name(choices, val):
    """Takes a choices tuple and a value and returns the display name as
    defined in this module. """
    for choice in choices:
        if choice[0] == val:
            return choice[1]
    return None


def _values(choices):
    """Returns the list of ids of a choices tuple. """
    return [choice[0] for choice in choices]


ADDJS = "ADDJS"
KP = "KP"
BBMRY = "BBMRY"
BS = "BS"
EN = "EN"
ALGORITHM = (
        (ADDJS, "greedy (Althoefer et al.)"),
        (KP, "densest neighborhoods (Kortsarz-Peleg)"),
        (BBMRY, "LP rounding and sampling (Berman et al.)"),
        (BS, "clustering (Baswana-Sen)"),
        (EN, "exponential shifts (Elkin-Neiman)")
    )

# Algorithms that draw random numbers and are studied with multiple runs
RANDOMIZED = (BBMRY, BS, EN)
MULTI_RUN = (BS, EN)

SOLVED = "solved"
TIMEOUT = "timeout"
FAILED = "failed"
OUTCOME = (
        (SOLVED, "solved"),
        (TIMEOUT, "timeout"),
        (FAILED, "failed")
    )

R_TOO_LARGE = "r-too-large"
TOO_FEW_EDGES = "too-few-edges"
EXHAUSTED = "exhausted-attempts"
INVALID_SPANNER = "invalid-spanner"
FAILURE_REASON = (
        (R_TOO_LARGE, "some radius r_u is not below k"),
        (TOO_FEW_EDGES, "spanner has fewer than n - c edges"),
        (EXHAUSTED, "no attempt succeeded"),
        (INVALID_SPANNER, "spanner violates the stretch")
    )

ORDER_INPUT = "input"
ORDER_RANDOM = "random"
ORDER_BFS = "bfs"
ORDER_DFS = "dfs"
EDGE_ORDER = (
        (ORDER_INPUT, "input order"),
        (ORDER_RANDOM, "seeded random permutation"),
        (ORDER_BFS, "breadth-first discovery"),
        (ORDER_DFS, "depth-first discovery")
    )

FORMAT_CSV = "csv"
FORMAT_JSON = "json"
OUTPUT_FORMAT = (
        (FORMAT_CSV, "comma separated values"),
        (FORMAT_JSON, "JSON")
    )
