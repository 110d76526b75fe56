"""
<Program Name>
    multirun.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
    Repeats a randomized algorithm (BS or EN) with consecutive seeds on each
    passed instance, and writes the size statistics (min, mean, std,
    skewness, excess kurtosis, M1 and M2 counts) plus the raw samples.

    Without `--iterations` BS runs 1000 times and EN 200 times.

<Usage>
    ```
    python manage.py multirun <instance file or directory>, ... \
      --algorithm (BS|EN) --alpha <stretch> [--iterations <count>] \
      [--base-seed <seed>] [--epsilon <epsilon>] [--unweighted] \
      [--format (csv|json)] [--out-dir <directory>]
    ```
"""
import logging
import os

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from spanners import bench, choices, instances, serializer
from spanners.exceptions import SpannerError

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = "Run repeated seeded runs of BS or EN and write statistics"

    def add_arguments(self, parser):
        parser.add_argument("path", nargs="+", type=str,
                help="Instance file(s) or directories")

        parser.add_argument("--algorithm", dest="algorithm", required=True,
                choices=choices.MULTI_RUN)

        parser.add_argument("--alpha", dest="alpha", type=int, required=True,
                help="Odd stretch")

        parser.add_argument("--iterations", dest="iterations", type=int,
                default=None)

        parser.add_argument("--base-seed", dest="base_seed", type=int,
                default=0)

        parser.add_argument("--epsilon", dest="epsilon", type=float,
                default=settings.SPANNER_BENCH["EPSILON"])

        parser.add_argument("--unweighted", dest="unweighted", default=False,
                action="store_true", help="Ignore edge weights")

        parser.add_argument("--format", dest="format",
                default=choices.FORMAT_CSV,
                choices=choices._values(choices.OUTPUT_FORMAT))

        parser.add_argument("--out-dir", dest="out_dir", default=None)

    def handle(self, *args, **options):
        algorithm = options["algorithm"]
        iterations = options["iterations"]
        if iterations is None:
            iterations = settings.SPANNER_BENCH[algorithm + "_ITERATIONS"]
        out_dir = options["out_dir"] or settings.SPANNER_BENCH["OUTPUT_DIR"]
        os.makedirs(out_dir, exist_ok=True)

        results = []
        try:
            for instance in instances.load_corpus(options["path"]):
                if options["unweighted"] or algorithm == choices.EN:
                    instance = instances.Instance(instance.name,
                            instance.graph.unweighted())
                results.append(bench.multi_run(instance, algorithm,
                        options["alpha"], iterations,
                        base_seed=options["base_seed"],
                        epsilon=options["epsilon"]))
        except (IOError, SpannerError) as e:
            raise CommandError(str(e))

        name = "multirun-{}-{}".format(algorithm, options["alpha"])
        if options["format"] == choices.FORMAT_JSON:
            path = os.path.join(out_dir, name + ".json")
            with open(path, "w", encoding="utf-8") as file:
                file.write(serializer.stats_to_json(results))
        else:
            path = os.path.join(out_dir, name + ".csv")
            with open(path, "w", encoding="utf-8", newline="") as file:
                serializer.write_stats_csv(results, file)
            samples = os.path.join(out_dir, name + "-samples.csv")
            with open(samples, "w", encoding="utf-8", newline="") as file:
                serializer.write_samples_csv(results, file)

        for stats in results:
            self.stdout.write("{}: min {:g}, mean {:.2f}, M1 {}, M2 {},"
                    " {} failures".format(stats.instance, stats.min,
                    stats.mean, stats.m1_count, stats.m2_count,
                    stats.failures))
        self.stdout.write("Wrote statistics to '{}'".format(path))
