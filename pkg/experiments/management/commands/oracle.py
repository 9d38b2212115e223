"""
Management command printing the exact path cover number of a small graph.

Usage::

    python manage.py oracle graph.txt

Graphs with more than 16 vertices are rejected (exit status 2).
"""

from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from covers.bounds import OracleSizeError, exact_mu, is_hamiltonian, lower_bound_mu
from experiments.cli import USAGE_ERROR
from experiments.output import ExperimentPrinter
from graphs.edgelist import EdgeListFormatError, read_edge_list


class Command(BaseCommand):
    help = "Compute the exact path cover number of a graph with at most 16 vertices"

    def add_arguments(self, parser):
        parser.add_argument("graph", type=Path, help="Edge-list file of the input graph.")

    def handle(self, *args, **options):
        printer = ExperimentPrinter()
        try:
            g = read_edge_list(options["graph"])
        except (OSError, EdgeListFormatError) as exc:
            raise CommandError(f"Cannot read graph: {exc}", returncode=USAGE_ERROR) from exc

        try:
            hamiltonian = is_hamiltonian(g)
            mu = exact_mu(g)
        except OracleSizeError as exc:
            raise CommandError(str(exc), returncode=USAGE_ERROR) from exc

        printer.print_mapping(
            "Exact path cover number",
            {
                "n": g.n,
                "m": g.m,
                "Hamiltonian": hamiltonian,
                "mu": mu,
                "lower bound": lower_bound_mu(g, non_hamiltonian=not hamiltonian),
            },
        )
