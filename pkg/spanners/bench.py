"""
<Program Name>
    bench.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
    Benchmark harness: runs single algorithm/instance cells under a time
    limit, expands run matrices over algorithms, stretches, weightings and
    seeds, and performs repeated seeded runs of the randomized algorithms
    with summary statistics.

    Algorithm/instance compatibility:
      ADDJS  any stretch >= 1, weighted or unweighted
      BBMRY  any stretch >= 1, weighted or unweighted
      BS     odd integer stretch >= 3, weighted or unweighted
      EN     odd integer stretch >= 3, unweighted only
      KP     stretch 2, unweighted only

    Every solved spanner is validated before it is measured. A spanner that
    fails validation is recorded as failed cell.

"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor

import numpy
from scipy import stats

from spanners import choices
from spanners.berman import BermanConfig, berman_spanner
from spanners.clustering import BsConfig, baswana_sen
from spanners.deadline import Deadline
from spanners.exceptions import (AllRunsFailedError, AttemptsExhaustedError,
        ConfigError, DeadlineExceeded, ElkinNeimanFailure,
        IncompatibleConfigError, SpannerError)
from spanners.graph import validate_spanner
from spanners.greedy import GreedyConfig, addjs
from spanners.instances import Instance
from spanners.kortsarz_peleg import KP_ALPHA, kortsarz_peleg
from spanners.metrics import measure
from spanners.probabilistic import EnConfig, elkin_neiman, elkin_neiman_once

logger = logging.getLogger(__name__)



class AlgoConfig(object):
    """Harness level parameters of one algorithm run. """

    def __init__(self, algorithm, alpha, seed=0, epsilon=0.8,
            max_attempts=200, order=choices.ORDER_INPUT,
            max_iterations=200):
        if algorithm not in choices._values(choices.ALGORITHM):
            raise ConfigError("Unknown algorithm '{}'".format(algorithm))
        self.algorithm = algorithm
        self.alpha = alpha
        self.seed = seed
        self.epsilon = epsilon
        self.max_attempts = max_attempts
        self.order = order
        self.max_iterations = max_iterations


    def __repr__(self):
        return "<AlgoConfig {} alpha={} seed={}>".format(self.algorithm,
                self.alpha, self.seed)


    def with_seed(self, seed):
        return AlgoConfig(self.algorithm, self.alpha, seed, self.epsilon,
                self.max_attempts, self.order, self.max_iterations)



def _is_odd_integer(alpha):
    return alpha == int(alpha) and int(alpha) >= 3 and int(alpha) % 2 == 1



def check_compatible(algorithm, alpha, weighted):
    """Raise IncompatibleConfigError if `algorithm` cannot build an
    `alpha`-spanner of a (un)weighted graph. """
    if algorithm in (choices.EN, choices.KP) and weighted:
        raise IncompatibleConfigError("{} only supports unweighted graphs"
                .format(algorithm))
    if algorithm == choices.KP and alpha != KP_ALPHA:
        raise IncompatibleConfigError("KP only builds 2-spanners, got stretch"
                " {}".format(alpha))
    if algorithm in (choices.BS, choices.EN) and not _is_odd_integer(alpha):
        raise IncompatibleConfigError("{} requires an odd integer stretch"
                " >= 3, got {}".format(algorithm, alpha))
    if not alpha >= 1:
        raise IncompatibleConfigError("Stretch must be at least 1, got {}"
                .format(alpha))



def build_spanner(graph, cfg, deadline=None):
    """Run the algorithm of `cfg` on `graph`. """
    if cfg.algorithm == choices.ADDJS:
        return addjs(graph, GreedyConfig(cfg.alpha, cfg.order, cfg.seed),
                deadline)
    if cfg.algorithm == choices.KP:
        return kortsarz_peleg(graph, deadline)
    if cfg.algorithm == choices.BBMRY:
        return berman_spanner(graph, BermanConfig(cfg.alpha, cfg.seed,
                cfg.max_iterations), deadline)
    if cfg.algorithm == choices.BS:
        return baswana_sen(graph, BsConfig(cfg.alpha, cfg.seed), deadline)
    return elkin_neiman(graph, EnConfig(cfg.alpha, cfg.epsilon, cfg.seed,
            cfg.max_attempts), deadline)



class RunRecord(object):
    """Result of one benchmark cell. `report` is the `QualityReport` of
    solved runs and None otherwise. `errored` marks failures that are not
    part of the algorithm's normal behavior, e.g. an invalid spanner. """

    def __init__(self, instance, algorithm, alpha, weighted, seed, outcome,
            wall_time=None, report=None, attempts=None, reason=None,
            errored=False):
        self.instance = instance
        self.algorithm = algorithm
        self.alpha = alpha
        self.weighted = weighted
        self.seed = seed
        self.outcome = outcome
        self.wall_time = wall_time
        self.report = report
        self.attempts = attempts
        self.reason = reason
        self.errored = errored
        # Only set for solved runs in the calling process
        self.spanner = None


    def __repr__(self):
        return "<RunRecord {} {} alpha={} {}>".format(self.instance,
                self.algorithm, self.alpha, self.outcome)


    def to_row(self, no_timing=False):
        """Column values as strings in the order of
        `serializer.RECORD_COLUMNS`. """
        def _float(value):
            return "" if value is None else "{:.6f}".format(value)

        report = self.report
        wall_ms = ""
        if self.wall_time is not None and not no_timing:
            wall_ms = str(int(round(self.wall_time * 1000)))

        return {
            "instance": self.instance,
            "algorithm": self.algorithm,
            "alpha": "{:g}".format(self.alpha),
            "weighted": "true" if self.weighted else "false",
            "seed": str(self.seed),
            "outcome": self.outcome,
            "wall_ms": wall_ms,
            "size": str(report.size) if report else "",
            "sparseness": _float(report.sparseness if report else None),
            "lightness": _float(report.lightness if report else None),
            "mean_degree": _float(report.mean_degree if report else None),
            "stretch_mean": _float(report.stretch_mean if report else None),
            "stretch_max": _float(report.stretch_max if report else None),
            "hop_mean_diff": _float(report.hop_mean_diff if report else None),
            "attempts": "" if self.attempts is None else str(self.attempts),
        }


    def as_dict(self):
        row = self.to_row()
        row["reason"] = self.reason
        return row



def run_one(instance, cfg, timelimit=None):
    """
    <Purpose>
        Run one benchmark cell: build the spanner of `instance.graph` with a
        cooperative deadline of `timelimit` seconds, validate it and
        measure its quality.

    <Arguments>
        instance:
                An `instances.Instance`.

        cfg:
                An `AlgoConfig`.

        timelimit: (optional)
                Seconds, None for no limit.

    <Exceptions>
        IncompatibleConfigError if the algorithm cannot run on the instance
        with the requested stretch.

    <Returns>
        A `RunRecord`.

    """
    graph = instance.graph
    check_compatible(cfg.algorithm, cfg.alpha, graph.weighted)
    log_prefix = "Instance '{}' {} alpha={} seed={}:".format(instance.name,
            cfg.algorithm, cfg.alpha, cfg.seed)

    record = RunRecord(instance.name, cfg.algorithm, cfg.alpha,
            graph.weighted, cfg.seed, choices.FAILED)

    deadline = Deadline(timelimit)
    started = time.monotonic()
    try:
        spanner = build_spanner(graph, cfg, deadline)

    except DeadlineExceeded:
        record.outcome = choices.TIMEOUT
        record.wall_time = time.monotonic() - started
        logger.info("{} Timeout after {:.3f}s".format(log_prefix,
                record.wall_time))
        return record

    except AttemptsExhaustedError as e:
        record.wall_time = time.monotonic() - started
        record.attempts = e.attempts
        record.reason = choices.EXHAUSTED
        logger.info("{} {}".format(log_prefix, e))
        return record

    except SpannerError as e:
        record.wall_time = time.monotonic() - started
        record.reason = str(e)
        record.errored = True
        logger.error("{} {}".format(log_prefix, e))
        return record

    record.wall_time = time.monotonic() - started
    record.attempts = spanner.diagnostics.get("attempts")

    validation = validate_spanner(graph, spanner)
    if not validation.valid:
        record.reason = choices.INVALID_SPANNER
        record.errored = True
        logger.error("{} Invalid spanner, pair {} has stretch {}".format(
                log_prefix, validation.worst_pair, validation.worst_stretch))
        return record

    record.outcome = choices.SOLVED
    record.report = measure(graph, spanner)
    record.spanner = spanner
    logger.info("{} Solved in {:.3f}s with {} edges".format(log_prefix,
            record.wall_time, record.report.size))
    return record



def matrix_cells(corpus, algorithms, stretches, weightings=(True, False),
        seeds=(0,), template=None):
    """
    <Purpose>
        Expand the run matrix into `(instance, cfg)` cells. Weighted cells
        use the graph as it is, unweighted cells its unweighted view.
        Incompatible combinations are skipped with a logged reason.
        Randomized algorithms get one cell per seed, all others run with
        the first seed.

    <Arguments>
        corpus:
                List of `instances.Instance`.

        algorithms, stretches, weightings, seeds:
                Matrix dimensions.

        template: (optional)
                `AlgoConfig` whose remaining parameters (epsilon, attempts,
                order, iterations) are used for all cells.

    <Returns>
        A list of `(Instance, AlgoConfig)` tuples.

    """
    cells = []
    for instance in corpus:
        for weighted in weightings:
            if weighted and not instance.graph.weighted:
                continue
            graph = instance.graph if weighted else instance.graph.unweighted()
            view = Instance(instance.name, graph)

            for algorithm in algorithms:
                for alpha in stretches:
                    try:
                        check_compatible(algorithm, alpha, weighted)
                    except IncompatibleConfigError as e:
                        logger.warning("Instance '{}': skipping cell, {}"
                                .format(instance.name, e))
                        continue

                    cell_seeds = seeds if algorithm in choices.RANDOMIZED \
                            else seeds[:1]
                    for seed in cell_seeds:
                        if template is None:
                            cfg = AlgoConfig(algorithm, alpha, seed)
                        else:
                            cfg = AlgoConfig(algorithm, alpha, seed,
                                    template.epsilon, template.max_attempts,
                                    template.order, template.max_iterations)
                        cells.append((view, cfg))
    return cells



def _run_cell(args):
    instance, cfg, timelimit = args
    record = run_one(instance, cfg, timelimit)
    record.spanner = None
    return record



def run_matrix(corpus, algorithms, stretches, weightings=(True, False),
        timelimit=None, seeds=(0,), workers=None, template=None):
    """Run all cells of the matrix and yield their `RunRecord`s in cell
    order as they complete. With more than one worker the cells run in a
    process pool. """
    cells = matrix_cells(corpus, algorithms, stretches, weightings, seeds,
            template)
    jobs = [(instance, cfg, timelimit) for instance, cfg in cells]
    logger.info("Running {} cells".format(len(jobs)))

    if workers == 1 or len(jobs) < 2:
        for job in jobs:
            yield _run_cell(job)
        return

    with ProcessPoolExecutor(max_workers=workers) as pool:
        for record in pool.map(_run_cell, jobs):
            yield record



class MultiRunStats(object):
    """Size samples of repeated seeded runs and their statistics.

    `m1_count` counts samples below 1.25 * min, `m2_count` samples below
    min + 0.25 * (mean - min).
    """

    FIELDS = ("instance", "algorithm", "alpha", "iterations", "failures",
            "min", "mean", "std", "skewness", "kurtosis", "m1_count",
            "m2_count", "best_seed")

    def __init__(self, instance, algorithm, alpha, seeds, samples, failures,
            best=None, best_seed=None, sample_seeds=None):
        self.instance = instance
        self.algorithm = algorithm
        self.alpha = alpha
        self.seeds = list(seeds)
        self.samples = numpy.asarray(samples, dtype=float)
        self.failures = failures
        self.best = best
        self.best_seed = best_seed
        # Seed per sample, failed runs have no sample
        self.sample_seeds = list(sample_seeds) if sample_seeds is not None \
                else self.seeds[:len(self.samples)]

        x = self.samples
        self.iterations = len(self.seeds)
        self.min = float(x.min())
        self.mean = float(x.mean())
        self.std = float(x.std())
        if self.std > 0:
            self.skewness = float(stats.skew(x))
            self.kurtosis = float(stats.kurtosis(x))
        else:
            self.skewness = 0.0
            self.kurtosis = 0.0
        self.m1_count = int((x < 1.25 * self.min).sum())
        self.m2_count = int((x < 0.25 * (self.mean - self.min) +
                self.min).sum())


    def __repr__(self):
        return "<MultiRunStats {} {} n={} min={}>".format(self.instance,
                self.algorithm, len(self.samples), self.min)


    def as_dict(self):
        return {field: getattr(self, field) for field in self.FIELDS}



def multi_run(instance, algorithm, alpha, iterations, base_seed=0,
        epsilon=0.8, timelimit=None):
    """
    <Purpose>
        Run a randomized algorithm `iterations` times with seeds
        base_seed, base_seed + 1, ... and collect the spanner sizes.
        Failed EN attempts are counted but not sampled.

    <Exceptions>
        ConfigError for algorithms other than BS and EN.
        IncompatibleConfigError if the algorithm cannot run on the instance.
        AllRunsFailedError if no run produced a spanner.

    <Returns>
        A `MultiRunStats`, with the smallest spanner in `best`.

    """
    if algorithm not in choices.MULTI_RUN:
        raise ConfigError("Multi-run studies need a randomized algorithm, got"
                " '{}'".format(algorithm))
    graph = instance.graph
    check_compatible(algorithm, alpha, graph.weighted)

    seeds = [base_seed + i for i in range(iterations)]
    samples = []
    sample_seeds = []
    failures = 0
    best = best_seed = None
    for seed in seeds:
        deadline = Deadline(timelimit)
        try:
            if algorithm == choices.BS:
                spanner = baswana_sen(graph, BsConfig(alpha, seed), deadline)
            else:
                spanner = elkin_neiman_once(graph, EnConfig(alpha, epsilon,
                        seed), deadline)
        except (ElkinNeimanFailure, DeadlineExceeded) as e:
            failures += 1
            logger.debug("Instance '{}' {} seed {} failed: {}".format(
                    instance.name, algorithm, seed, e))
            continue

        samples.append(spanner.size)
        sample_seeds.append(seed)
        if best is None or spanner.size < best.size:
            best, best_seed = spanner, seed

    if not samples:
        raise AllRunsFailedError("All {} runs of {} on '{}' failed".format(
                iterations, algorithm, instance.name))

    validation = validate_spanner(graph, best)
    if not validation.valid:
        raise SpannerError("Best spanner of seed {} is invalid".format(
                best_seed))

    logger.info("Instance '{}' {}: {} of {} runs failed".format(instance.name,
            algorithm, failures, iterations))
    return MultiRunStats(instance.name, algorithm, alpha, seeds, samples,
            failures, best, best_seed, sample_seeds)
