"""
<Program Name>
    bench.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
    Runs a benchmark matrix over instance files, algorithms, stretches,
    weightings and seeds, and writes one record per cell. Records are
    written as soon as their cell completes.

    Incompatible cells (e.g. KP with a stretch other than 2) are skipped and
    logged. The command fails if any cell errored, e.g. produced an invalid
    spanner.

<Usage>
    ```
    python manage.py bench <instance file or directory>, ... \
      [--algorithms ADDJS KP ...] [--stretches 2 3 ...] \
      [--weighting (both|weighted|unweighted)] [--seeds <count>] \
      [--base-seed <seed>] [--order (input|random|bfs|dfs)] \
      [--timelimit <seconds>] [--workers <count>] \
      [--format (csv|json)] [--out <file>] [--no-timing]
    ```
"""
import logging
import os

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from spanners import bench, choices, instances, serializer
from spanners.exceptions import SpannerError

logger = logging.getLogger(__name__)

WEIGHTINGS = {
    "both": (True, False),
    "weighted": (True,),
    "unweighted": (False,),
}


class Command(BaseCommand):
    help = "Run a benchmark matrix and write the records"

    def add_arguments(self, parser):
        parser.add_argument("path", nargs="+", type=str,
                help="Instance file(s) or directories")

        parser.add_argument("--algorithms", dest="algorithms", nargs="+",
                default=choices._values(choices.ALGORITHM),
                choices=choices._values(choices.ALGORITHM))

        parser.add_argument("--stretches", dest="stretches", nargs="+",
                type=float, default=list(settings.SPANNER_BENCH["STRETCHES"]))

        parser.add_argument("--weighting", dest="weighting", default="both",
                choices=sorted(WEIGHTINGS))

        parser.add_argument("--seeds", dest="seeds", type=int, default=1,
                help="Seeds per randomized cell")

        parser.add_argument("--base-seed", dest="base_seed", type=int,
                default=0)

        parser.add_argument("--epsilon", dest="epsilon", type=float,
                default=settings.SPANNER_BENCH["EPSILON"])

        parser.add_argument("--order", dest="order",
                default=choices.ORDER_INPUT,
                choices=choices._values(choices.EDGE_ORDER),
                help="Edge order of ADDJS on unweighted graphs")

        parser.add_argument("--timelimit", dest="timelimit", type=float,
                default=settings.SPANNER_BENCH["TIMELIMIT"])

        parser.add_argument("--workers", dest="workers", type=int,
                default=settings.SPANNER_BENCH["WORKERS"])

        parser.add_argument("--format", dest="format",
                default=choices.FORMAT_CSV,
                choices=choices._values(choices.OUTPUT_FORMAT))

        parser.add_argument("--out", dest="out", default=None,
                help="Output file (default: <output dir>/bench.<format>)")

        parser.add_argument("--no-timing", dest="no_timing", default=False,
                action="store_true", help=("Leave wall times empty for"
                " byte-identical output"))

    def handle(self, *args, **options):
        try:
            corpus = instances.load_corpus(options["path"])
        except (IOError, SpannerError) as e:
            raise CommandError(str(e))
        if not corpus:
            raise CommandError("No instances found")

        out = options["out"] or os.path.join(
                settings.SPANNER_BENCH["OUTPUT_DIR"],
                "bench." + options["format"])
        if os.path.dirname(out):
            os.makedirs(os.path.dirname(out), exist_ok=True)

        template = bench.AlgoConfig(choices.ADDJS, 1,
                epsilon=options["epsilon"],
                order=options["order"],
                max_attempts=settings.SPANNER_BENCH["EN_MAX_ATTEMPTS"],
                max_iterations=settings.SPANNER_BENCH["BBMRY_ITERATIONS"])
        seeds = tuple(range(options["base_seed"],
                options["base_seed"] + max(1, options["seeds"])))

        stretches = [int(a) if a == int(a) else a
                for a in options["stretches"]]
        records = bench.run_matrix(corpus, options["algorithms"], stretches,
                weightings=WEIGHTINGS[options["weighting"]],
                timelimit=options["timelimit"], seeds=seeds,
                workers=options["workers"], template=template)

        with open(out, "w", encoding="utf-8", newline="") as file:
            if options["format"] == choices.FORMAT_JSON:
                records = list(records)
                file.write(serializer.records_to_json(records,
                        options["no_timing"]))
            else:
                records = serializer.write_records_csv(records, file,
                        options["no_timing"])

        errored = [record for record in records if record.errored]
        self.stdout.write("Wrote {} records to '{}'".format(len(records), out))
        if errored:
            raise CommandError("{} cells errored".format(len(errored)))
