"""
<Program Name>
    exceptions.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
    Error classes raised by the spanner library. Everything derives from
    `SpannerError`, so that management commands can turn library errors into
    `CommandError`s with a single except clause.

"""


class SpannerError(Exception):
    pass


class GraphError(SpannerError):
    """Raised when a graph violates its invariants, e.g. contains a
    self-loop, a parallel edge or a non-positive weight. """
    pass


class ConfigError(SpannerError):
    """Raised for invalid algorithm parameters. """
    pass


class IncompatibleConfigError(ConfigError):
    """Raised if an algorithm cannot run on an instance with the requested
    stretch or weights, e.g. EN on a weighted graph or KP with stretch 3. """
    pass


class DeadlineExceeded(SpannerError):
    """Raised by `Deadline.check` once the time limit is over. """
    pass


class ElkinNeimanFailure(SpannerError):
    """A single Elkin-Neiman attempt did not produce a spanner. `reason` is
    one of `choices.R_TOO_LARGE` or `choices.TOO_FEW_EDGES`. """
    def __init__(self, reason, message=None):
        self.reason = reason
        super(ElkinNeimanFailure, self).__init__(message or reason)


class AttemptsExhaustedError(SpannerError):
    def __init__(self, attempts):
        self.attempts = attempts
        super(AttemptsExhaustedError, self).__init__(
                "No successful attempt within {} attempts".format(attempts))


class FlowError(SpannerError):
    pass


class EmptyViewError(FlowError):
    """Raised when the densest subgraph of an empty vertex set is asked
    for. """
    pass


class AntispannerError(SpannerError):
    """Raised when an antispanner is requested for an arc that is already
    settled. """
    pass


class LpNumericalError(SpannerError):
    """Raised when the simplex method breaks down numerically or does not
    terminate within its iteration cap. Callers may retry with a perturbed
    problem. """
    pass


class InstanceError(SpannerError):
    pass


class InfeasibleSpecError(InstanceError):
    pass


class MalformedSectionError(InstanceError):
    pass


class CountMismatchError(InstanceError):
    pass


class UnsupportedWeightTypeError(InstanceError):
    pass


class ZeroWeightEdgeError(InstanceError):
    pass


class EmptyGroupError(SpannerError):
    pass


class AllRunsFailedError(SpannerError):
    pass


class ResultFormatError(SpannerError):
    """Raised when a results or spanner file cannot be read back. """
    pass
