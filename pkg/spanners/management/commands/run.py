"""
<Program Name>
    run.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
    Runs a single benchmark cell, i.e. one algorithm with one stretch on one
    instance, and prints the resulting record as CSV (or JSON). The spanner
    can be written to a file, which `verify` reads.

<Usage>
    ```
    python manage.py run <instance file> --algorithm (ADDJS|KP|BBMRY|BS|EN) \
      --alpha <stretch> [--seed <seed>] [--epsilon <epsilon>] \
      [--order (input|random|bfs|dfs)] [--timelimit <seconds>] \
      [--unweighted] [--format (csv|json)] [--spanner-out <path>]
    ```
"""
import logging

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from spanners import bench, choices, instances, serializer
from spanners.exceptions import SpannerError

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = "Build and measure one spanner"

    def add_arguments(self, parser):
        parser.add_argument("path", type=str, help="Instance file (.graph,"
                " .stp or .tsp)")

        parser.add_argument("--algorithm", dest="algorithm", required=True,
                choices=choices._values(choices.ALGORITHM))

        parser.add_argument("--alpha", dest="alpha", type=float,
                required=True, help="Stretch")

        parser.add_argument("--seed", dest="seed", type=int, default=0)

        parser.add_argument("--epsilon", dest="epsilon", type=float,
                default=settings.SPANNER_BENCH["EPSILON"],
                help="Failure probability bound of EN")

        parser.add_argument("--order", dest="order",
                default=choices.ORDER_INPUT,
                choices=choices._values(choices.EDGE_ORDER),
                help="Edge order of ADDJS on unweighted graphs")

        parser.add_argument("--timelimit", dest="timelimit", type=float,
                default=settings.SPANNER_BENCH["TIMELIMIT"],
                help="Seconds before the run is stopped")

        parser.add_argument("--unweighted", dest="unweighted", default=False,
                action="store_true", help="Ignore edge weights")

        parser.add_argument("--format", dest="format",
                default=choices.FORMAT_CSV,
                choices=choices._values(choices.OUTPUT_FORMAT))

        parser.add_argument("--spanner-out", dest="spanner_out", default=None,
                help="Write the spanner edges to this file")

    def handle(self, *args, **options):
        try:
            instance = instances.load_instance(options["path"])
            if options["unweighted"]:
                instance = instances.Instance(instance.name,
                        instance.graph.unweighted())

            cfg = bench.AlgoConfig(options["algorithm"], options["alpha"],
                    seed=options["seed"], epsilon=options["epsilon"],
                    max_attempts=settings.SPANNER_BENCH["EN_MAX_ATTEMPTS"],
                    order=options["order"],
                    max_iterations=settings.SPANNER_BENCH["BBMRY_ITERATIONS"])
            record = bench.run_one(instance, cfg, options["timelimit"])

        except (IOError, SpannerError) as e:
            raise CommandError(str(e))

        if options["format"] == choices.FORMAT_JSON:
            self.stdout.write(serializer.records_to_json([record]))
        else:
            serializer.write_records_csv([record], self.stdout)

        if options["spanner_out"] and record.spanner is not None:
            serializer.write_spanner(record.spanner, options["spanner_out"])
            logger.info("Wrote spanner to '{}'".format(
                    options["spanner_out"]))

        if record.errored:
            raise CommandError("Run failed: {}".format(record.reason))
