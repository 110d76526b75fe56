"""
<Program Name>
    verify.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
    Checks that a spanner file (as written by `run --spanner-out`) is a valid
    spanner of its instance and reports the pair with the largest stretch.

<Usage>
    ```
    python manage.py verify <instance file> <spanner file> \
      [--alpha <stretch>] [--unweighted]
    ```
"""
import logging

from django.core.management.base import BaseCommand, CommandError

from spanners import instances, serializer
from spanners.exceptions import SpannerError
from spanners.graph import validate_spanner

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = "Validate a spanner file against its instance"

    def add_arguments(self, parser):
        parser.add_argument("instance", type=str)
        parser.add_argument("spanner", type=str)
        parser.add_argument("--alpha", dest="alpha", type=float, default=None,
                help="Stretch to check (default: stated in the spanner file)")
        parser.add_argument("--unweighted", dest="unweighted", default=False,
                action="store_true", help="Ignore edge weights")

    def handle(self, *args, **options):
        try:
            graph = instances.load_instance(options["instance"]).graph
            if options["unweighted"]:
                graph = graph.unweighted()
            spanner = serializer.read_spanner(graph, options["spanner"],
                    options["alpha"])
        except (IOError, SpannerError) as e:
            raise CommandError(str(e))

        result = validate_spanner(graph, spanner)
        message = "{} edges, alpha {:g}, worst pair {} with stretch {:.6f}" \
                .format(spanner.size, spanner.alpha, result.worst_pair,
                result.worst_stretch)
        if not result.valid:
            raise CommandError("Invalid spanner: " + message)
        self.stdout.write("Valid spanner: " + message)
