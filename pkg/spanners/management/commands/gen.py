"""
<Program Name>
    gen.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
    Generates a corpus of Erdos-Renyi graphs from a JSON corpus
    specification and writes one native instance file per graph.

    See `spanners.instances.expand_corpus` for the specification format.

<Usage>
    ```
    python manage.py gen [<corpus.json>] [--out <directory>]
    ```
"""
import logging
import os

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from spanners import instances
from spanners.exceptions import SpannerError

logger = logging.getLogger(__name__)

DEFAULT_CORPUS_PATH = "demo/corpus.json"


class Command(BaseCommand):
    help = "Generate Erdos-Renyi instance files from a corpus specification"

    def add_arguments(self, parser):
        parser.add_argument("path", nargs="?", type=str,
                default=DEFAULT_CORPUS_PATH, help="Path to JSON corpus"
                " specification")

        parser.add_argument("--out", dest="out", type=str, default=None,
                help=("Directory for the instance files (default:"
                " <output dir>/instances)"))

    def handle(self, *args, **options):
        out = options["out"] or os.path.join(
                settings.SPANNER_BENCH["OUTPUT_DIR"], "instances")

        try:
            with open(options["path"], encoding="utf-8") as file:
                specs = instances.expand_corpus(file.read())
        except (IOError, ValueError, SpannerError) as e:
            raise CommandError("Could not read corpus '{}': {}".format(
                    options["path"], e))

        os.makedirs(out, exist_ok=True)
        logger.info("Generating {} graphs into '{}'".format(len(specs), out))

        for spec in specs:
            try:
                graph = instances.gen_er(spec)
            except SpannerError as e:
                raise CommandError("Graph '{}': {}".format(spec.name, e))
            instances.write_native(graph,
                    os.path.join(out, spec.name + ".graph"))

        self.stdout.write("Wrote {} instances to '{}'".format(len(specs), out))
