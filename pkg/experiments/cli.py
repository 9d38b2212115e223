"""Argument and configuration helpers shared by the management commands."""

from __future__ import annotations

from collections.abc import Callable
from typing import Any, TypeVar

from django.conf import settings
from django.core.management.base import CommandError
from pydantic import ValidationError

from experiments.config import Check

USAGE_ERROR = 2
CHECK_FAILURE = 1

T = TypeVar("T")


def settings_defaults() -> dict[str, Any]:
    """Experiment defaults from the Django settings (and so from the environment)."""
    return {
        "master_seed": settings.PATHCOVER_MASTER_SEED,
        "retries": settings.PATHCOVER_RETRIES,
        "max_rotation_states": settings.PATHCOVER_MAX_ROTATION_STATES,
        "debug_rotations": settings.PATHCOVER_DEBUG_ROTATIONS,
        "epsilon": settings.PATHCOVER_EPSILON,
        "slack": settings.PATHCOVER_SLACK,
        "mu_ratio_limit": settings.PATHCOVER_MU_RATIO_LIMIT,
        "output_dir": settings.PATHCOVER_REPORT_DIR,
        "workers": settings.PATHCOVER_WORKERS,
    }


def app_loggers() -> list[str]:
    return [name for name in settings.INSTALLED_APPS if "." not in name]


def add_pipeline_arguments(parser) -> None:
    """Flags for the classification thresholds and the Hamilton engine."""
    parser.add_argument(
        "--small-deg",
        type=int,
        default=None,
        help="SMALL threshold: fewer neighbours outside N(V1) than this (default: max(2, floor(c/1000))).",
    )
    parser.add_argument(
        "--large-deg",
        type=float,
        default=None,
        help="LARGE threshold: degree above this (default: ceil(20c)).",
    )
    parser.add_argument(
        "--close-radius",
        type=int,
        default=None,
        help="Distance within which two SMALL vertices are CLOSE (default: 4).",
    )
    parser.add_argument(
        "--gamma-cap",
        type=int,
        default=None,
        help="Edges sampled per vertex for Gamma0 (default: max(3, floor(c/1000))).",
    )
    parser.add_argument(
        "--budget",
        type=int,
        default=None,
        dest="booster_budget",
        help="Maximum boosters per engine run (default: |V(G*)|).",
    )
    parser.add_argument(
        "--retries",
        type=int,
        default=None,
        help=(
            "Fresh Gamma0 samples tried after a failed engine run. "
            f"Env: PATHCOVER_RETRIES (default: {settings.PATHCOVER_RETRIES})."
        ),
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=None,
        dest="master_seed",
        help=f"Master seed. Env: PATHCOVER_MASTER_SEED (default: {settings.PATHCOVER_MASTER_SEED}).",
    )
    parser.add_argument(
        "--verbose",
        action="store_true",
        help="Route the library loggers through the console at DEBUG level.",
    )


def add_check_arguments(parser) -> None:
    parser.add_argument(
        "--check",
        action="append",
        default=None,
        dest="checks",
        choices=Check.values,
        help=(
            "Acceptance check gating the exit status; repeatable "
            "(default: cover_valid, cycle_found, booster_budget, oracle)."
        ),
    )
    parser.add_argument(
        "--min-pass-rate",
        type=float,
        default=None,
        help="Fraction of applicable trials each check must pass (default: 1.0).",
    )


def pipeline_values(options: dict[str, Any]) -> dict[str, Any]:
    keys = (
        "small_deg",
        "large_deg",
        "close_radius",
        "gamma_cap",
        "booster_budget",
        "retries",
        "master_seed",
    )
    return {key: options.get(key) for key in keys}


def validated(build: Callable[[], T]) -> T:
    """Run a config builder, turning validation problems into usage errors."""
    try:
        return build()
    except ValidationError as exc:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in error['loc']) or 'config'}: {error['msg']}"
            for error in exc.errors()
        )
        raise CommandError(f"Invalid configuration: {problems}", returncode=USAGE_ERROR) from exc
    except (FileNotFoundError, ValueError) as exc:
        raise CommandError(str(exc), returncode=USAGE_ERROR) from exc
