"""
<Program Name>
    report.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
    Summarizes benchmark CSV files written by `bench`:

      - solved runs in percent and the average time of solved runs per
        algorithm and weighting
      - effective stretch (mean, mean max, max) per algorithm and stretch
        over solved unweighted runs
      - optionally mean/median/std of chosen columns grouped by chosen keys
      - the human readable name of every algorithm in the records

<Usage>
    ```
    python manage.py report <bench csv>, ... \
      [--group-by algorithm alpha ...] [--fields size sparseness ...]
    ```
"""
import logging

from django.core.management.base import BaseCommand, CommandError

from spanners import choices, metrics, serializer
from spanners.exceptions import SpannerError

logger = logging.getLogger(__name__)


def _groups(rows, keys):
    groups = {}
    for row in rows:
        groups.setdefault(tuple(row[key] for key in keys), []).append(row)
    return sorted(groups.items())


class Command(BaseCommand):
    help = "Print solved/time and stretch summaries of benchmark records"

    def add_arguments(self, parser):
        parser.add_argument("path", nargs="+", type=str,
                help="CSV file(s) written by the bench command")

        parser.add_argument("--group-by", dest="group_by", nargs="+",
                default=None, choices=serializer.RECORD_COLUMNS)

        parser.add_argument("--fields", dest="fields", nargs="+",
                default=["size", "sparseness", "lightness", "stretch_mean"],
                choices=serializer.RECORD_COLUMNS)

    def handle(self, *args, **options):
        rows = []
        try:
            for path in options["path"]:
                with open(path, encoding="utf-8", newline="") as file:
                    rows.extend(serializer.read_rows_csv(file))
        except (IOError, SpannerError) as e:
            raise CommandError(str(e))
        if not rows:
            raise CommandError("No records found")

        self.stdout.write("algorithm,weighted,runs,solved_pct,avg_time_s")
        for (algorithm, weighted), group in _groups(rows,
                ("algorithm", "weighted")):
            solved, average = metrics.solved_summary(group, choices.SOLVED)
            self.stdout.write("{},{},{},{:.1f},{}".format(algorithm, weighted,
                    len(group), solved,
                    "" if average is None else "{:.3f}".format(average)))

        self.stdout.write("")
        self.stdout.write("algorithm,alpha,stretch_mean,stretch_mean_max,"
                "stretch_max")
        solved_unweighted = [row for row in rows
                if row["outcome"] == choices.SOLVED
                and row["weighted"] == "false"]
        for (algorithm, alpha), group in _groups(solved_unweighted,
                ("algorithm", "alpha")):
            mean, mean_max, maximum = metrics.stretch_summary(group)
            self.stdout.write("{},{},{:.3f},{:.3f},{:.3f}".format(algorithm,
                    alpha, mean, mean_max, maximum))

        if options["group_by"]:
            self.stdout.write("")
            try:
                summary = metrics.aggregate(rows, options["group_by"],
                        options["fields"])
            except SpannerError as e:
                raise CommandError(str(e))
            columns = list(options["group_by"]) + ["count"]
            for field in options["fields"]:
                columns.extend([field + "_mean", field + "_median",
                        field + "_std"])
            self.stdout.write(",".join(columns))
            for entry in summary:
                self.stdout.write(",".join("" if entry[c] is None else
                        str(entry[c]) for c in columns))

        self.stdout.write("")
        self.stdout.write("algorithm,description")
        for algorithm in sorted(set(row["algorithm"] for row in rows)):
            self.stdout.write("{},{}".format(algorithm, choices._display_name(
                    choices.ALGORITHM, algorithm) or ""))
