"""
Django settings for the pathcover project.

The project has no database and serves no HTTP traffic: Django is used for
its settings layer and its management-command CLI. Every tunable default is
read from the environment (optionally via a ``.env`` file) so experiment
runs can be configured without touching code.
"""

from pathlib import Path
import os
from dotenv import load_dotenv

load_dotenv()


def env_flag(name, default=False):
    value = os.getenv(name)
    if value is None:
        return default

    normalized = value.strip().lower()
    if normalized in {"true", "1", "yes", "y", "on"}:
        return True
    if normalized in {"false", "0", "no", "n", "off"}:
        return False
    return default


def env_int(name, default):
    value = os.getenv(name)
    if value is None or not value.strip():
        return default
    return int(value)


def env_float(name, default):
    value = os.getenv(name)
    if value is None or not value.strip():
        return default
    return float(value)


# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.getenv("SECRET_KEY", "pathcover-insecure-local-only")

DEBUG = env_flag("DEBUG", False)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "graphs",
    "classification",
    "reduction",
    "expanders",
    "hamilton",
    "covers",
    "analytics",
    "experiments",
]

# No persistence layer: reports are written as CSV/JSON files.
DATABASES = {}

USE_TZ = True

TIME_ZONE = "UTC"


# Logging

PATHCOVER_LOG_LEVEL = os.getenv("PATHCOVER_LOG_LEVEL", "INFO").upper()

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "%(asctime)s %(name)s %(levelname)s %(message)s",
            "datefmt": "%H:%M:%S",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "plain",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": "WARNING",
    },
    "loggers": {
        app: {"level": PATHCOVER_LOG_LEVEL, "propagate": True}
        for app in INSTALLED_APPS
    },
}


# Experiment defaults (overridable per run from the CLI or a config file)

PATHCOVER_REPORT_DIR = Path(os.getenv("PATHCOVER_REPORT_DIR", BASE_DIR / "reports"))

# Worker processes for multi-trial runs; 1 runs trials in-process.
PATHCOVER_WORKERS = env_int("PATHCOVER_WORKERS", 1)

PATHCOVER_MASTER_SEED = env_int("PATHCOVER_MASTER_SEED", 0)

# Fresh-Gamma0 retries before the engine reports failure.
PATHCOVER_RETRIES = env_int("PATHCOVER_RETRIES", 3)

# Upper bound on rotation states explored by one END-set search.
PATHCOVER_MAX_ROTATION_STATES = env_int("PATHCOVER_MAX_ROTATION_STATES", 5000)

# Re-check the M-path property after every rotation (slow).
PATHCOVER_DEBUG_ROTATIONS = env_flag("PATHCOVER_DEBUG_ROTATIONS", False)

PATHCOVER_EPSILON = env_float("PATHCOVER_EPSILON", 0.5)

# Multiplicative slack applied to the asymptotic set-size bounds.
PATHCOVER_SLACK = env_float("PATHCOVER_SLACK", 10.0)

PATHCOVER_MU_RATIO_LIMIT = env_float("PATHCOVER_MU_RATIO_LIMIT", 1.5)
