"""
Management command evaluating the closed-form predictions for G(n, c/n).

Usage::

    python manage.py predict --n 100000 --c 6
    python manage.py predict --n 100000 --c 5 --c 6 --c 8 --format json
"""

import json

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from analytics.predictors import (
    SolverDomainError,
    predict_degree_count,
    predict_mu_lower,
    predict_mu_target,
    predict_two_core_lower_bound,
    predict_two_core_size,
    solve_two_core_x,
)
from experiments.cli import USAGE_ERROR
from experiments.output import ExperimentPrinter


def predictions(c: float, n: int, epsilon: float) -> dict[str, float | None]:
    """Every prediction for one ``(c, n)``; 2-core entries are ``None`` for c <= 1."""
    try:
        x = solve_two_core_x(c)
        two_core = predict_two_core_size(c, n)
    except SolverDomainError:
        x = two_core = None
    return {
        "c": c,
        "n": n,
        "|V0|": predict_degree_count(0, c, n),
        "|V1|": predict_degree_count(1, c, n),
        "x": x,
        "|C2|": two_core,
        "|C2| lower bound": predict_two_core_lower_bound(c, n, epsilon),
        "mu target": predict_mu_target(c, n),
        "mu lower": predict_mu_lower(c, n),
    }


class Command(BaseCommand):
    help = "Print the closed-form predictions (degree counts, 2-core size, path cover number)"

    def add_arguments(self, parser):
        parser.add_argument("--n", type=int, required=True, help="Number of vertices.")
        parser.add_argument(
            "--c",
            type=float,
            action="append",
            required=True,
            help="Average degree; repeat for several values.",
        )
        parser.add_argument(
            "--epsilon",
            type=float,
            default=settings.PATHCOVER_EPSILON,
            help=f"Epsilon of the 2-core lower bound (default: {settings.PATHCOVER_EPSILON}).",
        )
        parser.add_argument(
            "--format",
            choices=["table", "json"],
            default="table",
            help="Output format (default: table).",
        )

    def handle(self, *args, **options):
        n = options["n"]
        if n < 0:
            raise CommandError(f"--n must be non-negative, got {n}", returncode=USAGE_ERROR)
        if any(c < 0 for c in options["c"]):
            raise CommandError("--c must be non-negative", returncode=USAGE_ERROR)

        rows = [predictions(c, n, options["epsilon"]) for c in options["c"]]
        if options["format"] == "json":
            self.stdout.write(json.dumps(rows, indent=2, sort_keys=True))
            return

        printer = ExperimentPrinter()
        for row in rows:
            printer.print_mapping(f"c = {row['c']:g}, n = {n:,}", row)
