"""
Django settings for spanner_bench project.

The project does not serve any web pages and does not use a database. Django
is used for configuration, for the management command line interface (see
`spanners.management.commands`), for logging configuration and as test runner.

Modify this file using docs for the used django version
https://docs.djangoproject.com/en/4.2/topics/settings/
https://docs.djangoproject.com/en/4.2/ref/settings/

Most values can be overridden with `SPANNER_BENCH_*` environment variables.

"""

# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
import os

BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

# Nothing is signed or hashed by this project, but Django wants a key
SECRET_KEY = os.environ.get("SPANNER_BENCH_SECRET_KEY",
        "spanner-bench-not-secret")

DEBUG = bool(os.environ.get("SPANNER_BENCH_DEBUG", False))

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = (
    'spanners',
)

# No ORM models, hence no database
DATABASES = {}

# Benchmark harness defaults. Management commands use these values unless
# they are overridden on the command line.
# See `spanners.bench` and `spanners.management.commands` for more info.
_workers = os.environ.get("SPANNER_BENCH_WORKERS")

SPANNER_BENCH = {
    "OUTPUT_DIR": os.environ.get("SPANNER_BENCH_OUTPUT_DIR",
            os.path.join(BASE_DIR, "results")),
    # Seconds per benchmark cell
    "TIMELIMIT": float(os.environ.get("SPANNER_BENCH_TIMELIMIT", 60)),
    # None means one worker per CPU
    "WORKERS": int(_workers) if _workers else None,
    "STRETCHES": (2, 3, 4, 5, 7),
    "EPSILON": 0.8,
    # Multi-run budgets for the randomized algorithms
    "BS_ITERATIONS": 1000,
    "EN_ITERATIONS": 200,
    # Single-answer retry cap for Elkin-Neiman
    "EN_MAX_ATTEMPTS": 200,
    # Cutting-plane iteration cap for Berman et al.
    "BBMRY_ITERATIONS": 200,
}

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
        # 'file': {
        #     'level': 'DEBUG',
        #     'class': 'logging.FileHandler',
        #     'filename': os.path.join(BASE_DIR, 'log/spanner_bench.log')
        # }
    },
    'loggers': {
        'spanners': {
            'handlers': ['console'],
            'level': os.getenv('SPANNER_BENCH_LOG_LEVEL', 'INFO'),
        },
        'django': {
            'handlers': ['console'],
            'level': os.getenv('DJANGO_LOG_LEVEL', 'INFO'),
        },
    }
}
