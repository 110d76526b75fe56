import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "spanner_bench.settings")
django.setup()
