"""
Management command to build a path cover for one graph read from a file.

Usage::

    # Cover written to stdout, summary table to the console
    python manage.py solve graph.txt

    # Explicit c (default: the average degree 2m/n), cover and report files
    python manage.py solve graph.txt --c 6 --out cover.txt --report report.json

    # Also keep the reduced graph G*
    python manage.py solve graph.txt --gstar gstar.txt

The graph file uses the edge-list format: a header line ``n m`` followed by
one ``u v`` line per edge with ``u < v`` in lexicographic order. The cover is
written one path per line.

Exit status: 0 when the cover passes verification, 1 when it does not,
2 for usage errors (unreadable or malformed graph file, invalid flags).
"""

from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from analytics.aggregation import write_summary_json
from covers.extraction import format_cover, write_cover
from experiments.cli import (
    CHECK_FAILURE,
    USAGE_ERROR,
    add_pipeline_arguments,
    app_loggers,
    pipeline_values,
    settings_defaults,
    validated,
)
from experiments.config import build_config
from experiments.output import ExperimentPrinter
from experiments.pipeline import TrialReport, solve_graph
from graphs.edgelist import EdgeListFormatError, read_edge_list


class Command(BaseCommand):
    help = "Compute and verify a path cover of a graph given in edge-list format"

    def add_arguments(self, parser):
        parser.add_argument("graph", type=Path, help="Edge-list file of the input graph.")
        parser.add_argument(
            "--c",
            type=float,
            default=None,
            help="Average-degree parameter for the thresholds (default: 2m/n of the graph).",
        )
        add_pipeline_arguments(parser)
        parser.add_argument(
            "--oracle",
            action="store_true",
            help="Also compute the exact path cover number when n <= 16.",
        )
        parser.add_argument(
            "--out",
            type=Path,
            default=None,
            help="Write the cover to this file instead of stdout.",
        )
        parser.add_argument(
            "--report",
            type=Path,
            default=None,
            help="Write the trial report as JSON to this file.",
        )
        parser.add_argument(
            "--gstar",
            type=Path,
            default=None,
            help="Write G* as an edge list to this file, with a <file>.labels map back to graph labels.",
        )

    def handle(self, *args, **options):
        printer = ExperimentPrinter()
        if options["verbose"]:
            printer.install_logging_handler(app_loggers())

        try:
            g = read_edge_list(options["graph"])
        except (OSError, EdgeListFormatError) as exc:
            raise CommandError(f"Cannot read graph: {exc}", returncode=USAGE_ERROR) from exc
        if g.n == 0:
            raise CommandError("The graph has no vertices", returncode=USAGE_ERROR)

        c = options["c"] if options["c"] is not None else 2 * g.m / g.n
        cli_values = {"n": g.n, "c": [c], "oracle": options["oracle"], **pipeline_values(options)}
        cfg = validated(lambda: build_config(settings_defaults(), None, cli_values))

        report = TrialReport(trial_index=0, seed=cfg.master_seed, n=g.n, c=c)
        try:
            cover = solve_graph(g, c, cfg.master_seed, cfg, report, gstar_out=options["gstar"])
        except OSError as exc:
            raise CommandError(f"Cannot write G*: {exc}", returncode=USAGE_ERROR) from exc
        except (ValueError, AssertionError) as exc:
            raise CommandError(f"Pipeline failed: {exc}", returncode=CHECK_FAILURE) from exc

        if options["out"] is not None:
            write_cover(cover, options["out"])
        else:
            printer.print_text(format_cover(cover))
        if options["report"] is not None:
            write_summary_json(report.to_row(include_timings=False), options["report"])

        printer.print_mapping(
            "Path cover",
            {
                "n": g.n,
                "m": g.m,
                "c": c,
                "|V(G*)|": report.gstar,
                "|M|": report.m,
                "Hamilton M-cycle": report.cycle_found,
                "boosters": report.boosters,
                "cover size": report.cover_size,
                "lower bound": report.lower_bound,
                "exact mu": report.oracle_mu,
            },
        )
        if not report.cycle_found:
            printer.warn(
                f"No Hamilton M-cycle ({report.failure_reason}); cover built from the longest M-path"
            )
        if not report.cover_valid:
            printer.error("Cover failed verification")
            raise CommandError("The cover failed verification", returncode=CHECK_FAILURE)
        printer.success(f"{report.cover_size} path(s), verified")
