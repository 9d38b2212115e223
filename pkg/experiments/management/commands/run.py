"""
Management command to run a Monte Carlo experiment.

Usage::

    # 20 trials at each of c = 5, 6, 7, 8 with n = 10^5
    python manage.py run --n 100000 --c 5 --c 6 --c 7 --c 8 --trials 20

    # Everything from a key-value configuration file, flags override it
    python manage.py run --config sweep.env --workers 8 --format json

    # Small graphs checked against the exact path cover number
    python manage.py run --n 12 --c 3 --trials 500 --oracle --check oracle

Environment variables (used as defaults when flags are not passed)::

    PATHCOVER_REPORT_DIR   report directory (default: reports/)
    PATHCOVER_WORKERS      worker processes (default: 1)
    PATHCOVER_MASTER_SEED  master seed (default: 0)
    PATHCOVER_RETRIES      fresh Gamma0 samples after a failure (default: 3)

Exit status: 0 when every enabled check passes, 1 when a check fails,
2 for usage or configuration errors.
"""

from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from experiments.cli import (
    CHECK_FAILURE,
    USAGE_ERROR,
    add_check_arguments,
    add_pipeline_arguments,
    app_loggers,
    pipeline_values,
    settings_defaults,
    validated,
)
from experiments.config import build_config, load_config_file
from experiments.output import ExperimentPrinter
from experiments.runner import run_experiment


class Command(BaseCommand):
    help = "Run trials of the path cover pipeline on G(n, c/n) and write CSV/JSON reports"

    def add_arguments(self, parser):
        parser.add_argument("--n", type=int, default=None, help="Vertices per sampled graph.")
        parser.add_argument(
            "--c",
            type=float,
            action="append",
            default=None,
            help="Average degree; repeat for a c-grid.",
        )
        parser.add_argument(
            "--trials",
            type=int,
            default=None,
            help="Trials per value of c (default: 1).",
        )
        add_pipeline_arguments(parser)
        add_check_arguments(parser)
        parser.add_argument(
            "--oracle",
            action="store_true",
            default=None,
            help="Also compute the exact path cover number when n <= 16.",
        )
        parser.add_argument(
            "--config",
            type=Path,
            default=None,
            help="Key-value configuration file (KEY=value lines; C and CHECKS comma-separated).",
        )
        parser.add_argument(
            "--out",
            type=Path,
            default=None,
            dest="output_dir",
            help=f"Report directory. Env: PATHCOVER_REPORT_DIR (default: {settings.PATHCOVER_REPORT_DIR}).",
        )
        parser.add_argument(
            "--format",
            choices=["csv", "json"],
            default=None,
            help="Report format (default: csv).",
        )
        parser.add_argument(
            "--workers",
            type=int,
            default=None,
            help=f"Worker processes. Env: PATHCOVER_WORKERS (default: {settings.PATHCOVER_WORKERS}).",
        )
        parser.add_argument(
            "--timings",
            action="store_true",
            default=None,
            help="Include wall-clock stage timings in the reports.",
        )

    def handle(self, *args, **options):
        printer = ExperimentPrinter()
        if options["verbose"]:
            printer.install_logging_handler(app_loggers())

        cli_values = {
            "n": options["n"],
            "c": options["c"],
            "trials": options["trials"],
            "oracle": options["oracle"],
            "checks": options["checks"],
            "min_pass_rate": options["min_pass_rate"],
            "output_dir": options["output_dir"],
            "format": options["format"],
            "workers": options["workers"],
            "timings": options["timings"],
            **pipeline_values(options),
        }
        config_path = options["config"]
        cfg = validated(
            lambda: build_config(
                settings_defaults(),
                load_config_file(config_path) if config_path else None,
                cli_values,
            )
        )

        printer.print_run_header(cfg)
        try:
            result = run_experiment(cfg, on_trial=printer.print_trial)
        except OSError as exc:
            raise CommandError(f"Cannot write reports: {exc}", returncode=USAGE_ERROR) from exc

        printer.print_result(result)
        errored = sum(1 for report in result.reports if report.error is not None)
        if errored:
            printer.warn(f"{errored} trial(s) raised errors; see the trials report")
        failed = [outcome.check for outcome in result.checks if not outcome.passed]
        for outcome in result.checks:
            if not outcome.passed:
                printer.error(
                    f"{outcome.check}: {outcome.passed_trials}/{outcome.applicable_trials} "
                    f"passed, needs {outcome.min_pass_rate:.0%}"
                )
        if failed:
            raise CommandError(f"Checks failed: {', '.join(failed)}", returncode=CHECK_FAILURE)
        printer.success(f"{len(result.reports)} trial(s), all checks passed")
