"""
Rich-based output formatting for the experiment commands.

``ExperimentPrinter`` owns all terminal output of a command run:
- run headers, one line per finished trial, summary and check tables via Rich
- a logging handler that routes the apps' log records (including
  exceptions with full tracebacks) through the same Rich console so they
  never interleave with structured output.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping, Sequence
from datetime import datetime, timezone
from typing import Any

from rich.console import Console
from rich.markup import escape
from rich.rule import Rule
from rich.table import Table
from rich.traceback import Traceback

from experiments.config import ExperimentConfig
from experiments.pipeline import TrialReport
from experiments.runner import CheckOutcome, ExperimentResult

# Colour / style constants
_STEP_COLOR = "bold blue"
_OK_COLOR = "green"
_SKIP_COLOR = "dim"
_WARN_COLOR = "yellow"
_ERR_COLOR = "red"

# Quantities shown in the terminal summary; the files carry all of them.
_SUMMARY_QUANTITIES = (
    "v0",
    "v1",
    "c2",
    "gstar",
    "m",
    "boosters",
    "cover_size",
    "lower_bound",
    "ratio_to_lower_bound",
    "success",
)


def _format_duration(seconds: float) -> str:
    total = max(0, int(round(seconds)))
    mins, secs = divmod(total, 60)
    hours, mins = divmod(mins, 60)
    if hours:
        return f"{hours}h {mins}m {secs}s"
    if mins:
        return f"{mins}m {secs}s"
    return f"{secs}s"


def _format_number(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:,.4g}"
    if isinstance(value, int) and not isinstance(value, bool):
        return f"{value:,}"
    return str(value)


def _utc_timestamp() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


class ExperimentPrinter:
    """
    Single rich console for all terminal output of one command invocation.

    Create one instance per ``handle()`` call.
    """

    def __init__(self, console: Console | None = None, err_console: Console | None = None) -> None:
        self._console = console or Console(highlight=False)
        self._err_console = err_console or Console(highlight=False, stderr=True)

    def _with_ts(self, text: str) -> str:
        return f"[dim]{_utc_timestamp()}[/dim] {text}"

    def print_run_header(self, cfg: ExperimentConfig) -> None:
        grid = ", ".join(f"{c:g}" for c in cfg.c)
        self._console.print()
        self._console.print(
            self._with_ts(
                f"[{_STEP_COLOR}]Experiment[/{_STEP_COLOR}] n={cfg.n:,} c=[{grid}] "
                f"trials={cfg.trials} seed={cfg.master_seed}"
            )
        )
        checks = ", ".join(str(check) for check in cfg.checks) or "none"
        self._console.print(
            self._with_ts(
                f"[dim]{cfg.total_trials} trial(s) on {cfg.workers} worker(s); checks: {checks}[/dim]"
            )
        )

    def print_trial(self, report: TrialReport) -> None:
        if report.error is not None:
            self._console.print(
                self._with_ts(
                    f"[{_ERR_COLOR}]✗ trial {report.trial_index} c={report.c:g}: "
                    f"{escape(report.error)}[/{_ERR_COLOR}]"
                )
            )
            return
        color = _OK_COLOR if report.success else _WARN_COLOR
        mark = "✓" if report.success else "⚠"
        outcome = "cycle" if report.cycle_found else (report.failure_reason or "no cycle")
        elapsed = sum(report.timings.values())
        self._console.print(
            self._with_ts(
                f"[{color}]{mark} trial {report.trial_index} c={report.c:g}[/{color}] "
                f"{outcome}, cover {_format_number(report.cover_size)} "
                f"(lower bound {_format_number(report.lower_bound)}, "
                f"{_format_number(report.boosters)} boosters) "
                f"[dim]({_format_duration(elapsed)})[/dim]"
            )
        )

    def print_summary(self, rows: Sequence[Mapping[str, Any]]) -> None:
        self._console.print()
        self._console.print(Rule("[bold]Summary[/bold]", style="dim"))
        table = Table(box=None, pad_edge=False, show_header=True, header_style="bold")
        for column in ("c", "quantity", "mean", "std", "min", "max", "pass rate"):
            table.add_column(column, justify="left" if column == "quantity" else "right")
        for row in rows:
            if row["quantity"] not in _SUMMARY_QUANTITIES:
                continue
            table.add_row(
                f"{row['c']:g}",
                row["quantity"],
                _format_number(row["mean"]),
                _format_number(row["std"]),
                _format_number(row["min"]),
                _format_number(row["max"]),
                _format_number(row["pass_rate"]),
            )
        self._console.print(table)

    def print_checks(self, checks: Iterable[CheckOutcome]) -> None:
        self._console.print()
        self._console.print(Rule("[bold]Checks[/bold]", style="dim"))
        table = Table(box=None, pad_edge=False, show_header=True, header_style="bold")
        table.add_column("Check")
        table.add_column("Passed", justify="right")
        table.add_column("Applicable", justify="right")
        table.add_column("Result", justify="center")
        for outcome in checks:
            if outcome.applicable_trials == 0:
                result = f"[{_SKIP_COLOR}]n/a[/{_SKIP_COLOR}]"
            elif outcome.passed:
                result = f"[{_OK_COLOR}]pass[/{_OK_COLOR}]"
            else:
                result = f"[{_ERR_COLOR}]FAIL[/{_ERR_COLOR}]"
            table.add_row(
                outcome.check,
                str(outcome.passed_trials),
                str(outcome.applicable_trials),
                result,
            )
        self._console.print(table)
        self._console.print()

    def print_result(self, result: ExperimentResult) -> None:
        self.print_summary(result.summary)
        self.print_checks(result.checks)
        for path in result.files:
            self._console.print(self._with_ts(f"[dim]wrote {path}[/dim]"))

    def print_mapping(self, title: str, values: Mapping[str, Any]) -> None:
        """Two-column key/value table, used by ``solve``, ``oracle`` and ``predict``."""
        self._console.print()
        self._console.print(Rule(f"[bold]{title}[/bold]", style="dim"))
        table = Table(box=None, pad_edge=False, show_header=False)
        table.add_column("Quantity", style="bold")
        table.add_column("Value", justify="right")
        for key, value in values.items():
            table.add_row(key, _format_number(value))
        self._console.print(table)

    def print_text(self, text: str) -> None:
        self._console.print(text, end="", markup=False, highlight=False)

    def success(self, msg: str) -> None:
        self._console.print(self._with_ts(f"[{_OK_COLOR}]✓ {msg}[/{_OK_COLOR}]"))

    def error(self, msg: str) -> None:
        self._err_console.print(self._with_ts(f"[{_ERR_COLOR}]✗ {msg}[/{_ERR_COLOR}]"))

    def warn(self, msg: str) -> None:
        self._console.print(self._with_ts(f"[{_WARN_COLOR}]⚠ {msg}[/{_WARN_COLOR}]"))

    def install_logging_handler(self, app_loggers: Iterable[str], level: int = logging.DEBUG) -> None:
        """
        Route the given app loggers through this Rich console, with
        ``propagate=False`` so records don't also reach the root handler.
        """
        handler = _ExperimentRichHandler(self._console, self._err_console)
        handler.setLevel(level)
        for name in app_loggers:
            app_logger = logging.getLogger(name)
            app_logger.setLevel(level)
            app_logger.handlers.clear()
            app_logger.addHandler(handler)
            app_logger.propagate = False


class _ExperimentRichHandler(logging.Handler):
    """
    Compact Rich logging handler.

    DEBUG / INFO are dim, WARNING yellow, ERROR red, CRITICAL bold red.
    Exception records print a Rich traceback.
    """

    _LEVEL_STYLE: dict[int, str] = {
        logging.DEBUG: "dim",
        logging.INFO: "dim",
        logging.WARNING: "yellow",
        logging.ERROR: "red",
        logging.CRITICAL: "bold red",
    }

    def __init__(self, console: Console, err_console: Console) -> None:
        super().__init__()
        self._console = console
        self._err_console = err_console

    def emit(self, record: logging.LogRecord) -> None:
        try:
            msg = escape(self.format(record))
            style = self._LEVEL_STYLE.get(record.levelno, "")
            level_tag = record.levelname[0]
            target = self._err_console if record.levelno >= logging.ERROR else self._console
            ts = _utc_timestamp()
            target.print(
                f"[dim]{ts}[/dim] [dim]{level_tag}[/dim] [{style}][dim]{record.name}[/dim] {msg}[/{style}]"
            )
            if record.exc_info:
                target.print(Traceback.from_exception(*record.exc_info, show_locals=False))
        except Exception:  # noqa: BLE001
            self.handleError(record)
