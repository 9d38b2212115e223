"""
Multi-trial experiment driver.

Trials are independent work items: each derives its own seed from
``(master_seed, trial_index)``, so the reports come out the same whether the
trials run in-process or on a process pool. Results are collected in trial
order, aggregated per value of ``c`` and written as ``trials``, ``summary``
and ``checks`` files in the configured format.
"""

from __future__ import annotations

import logging
import math
import os
from collections import defaultdict
from collections.abc import Callable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import repeat
from pathlib import Path
from typing import Any

import numpy as np

from analytics.aggregation import aggregate_trials, write_summary_csv, write_summary_json
from experiments.config import Check, ExperimentConfig
from experiments.pipeline import TrialReport, run_trial
from hamilton.engine import FailureReason

logger = logging.getLogger(__name__)

# Per-trial identifiers, not quantities.
_NOT_AGGREGATED = {"trial_index", "seed", "n", "c"}


@dataclass(frozen=True)
class CheckOutcome:
    check: str
    passed_trials: int
    applicable_trials: int
    min_pass_rate: float

    @property
    def pass_rate(self) -> float | None:
        if self.applicable_trials == 0:
            return None
        return self.passed_trials / self.applicable_trials

    @property
    def passed(self) -> bool:
        rate = self.pass_rate
        return rate is None or rate >= self.min_pass_rate

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "passed_trials": self.passed_trials,
            "applicable_trials": self.applicable_trials,
            "pass_rate": self.pass_rate,
            "min_pass_rate": self.min_pass_rate,
            "passed": self.passed,
        }


@dataclass
class ExperimentResult:
    reports: list[TrialReport]
    summary: list[dict[str, Any]]
    checks: list[CheckOutcome]
    files: list[Path] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(outcome.passed for outcome in self.checks)


def check_trial(check: Check, report: TrialReport, cfg: ExperimentConfig) -> bool | None:
    """``True``/``False`` for a pass/fail, ``None`` when the check does not apply."""
    if report.error is not None:
        return False
    match check:
        case Check.COVER_VALID:
            return report.cover_valid
        case Check.CYCLE_FOUND:
            if report.failure_reason == FailureReason.TOO_SMALL:
                return None
            return report.cycle_found
        case Check.BOOSTER_BUDGET:
            if not report.cycle_found:
                return None
            return report.boosters <= report.booster_budget
        case Check.ORACLE:
            return report.oracle_ok
        case Check.MU_RATIO:
            if report.ratio_to_lower_bound is None:
                return None
            return report.ratio_to_lower_bound <= cfg.mu_ratio_limit
        case Check.MU_TREND:
            # Judged over the whole run by evaluate_checks.
            return None
        case Check.GRAPH_PROPERTIES:
            return report.properties_ok
        case Check.REDUCTION_SIZES:
            return report.reduction_sizes_ok
    raise ValueError(f"Unknown check: {check}")


def mu_ratio_trend(reports: list[TrialReport]) -> list[tuple[float, float]]:
    """Mean cover-to-lower-bound ratio per value of c, in ascending c."""
    ratios: dict[float, list[float]] = defaultdict(list)
    for report in reports:
        if report.error is None and report.ratio_to_lower_bound is not None:
            ratios[report.c].append(report.ratio_to_lower_bound)
    return [(c, float(np.mean(values))) for c, values in sorted(ratios.items())]


def _trend_outcome(cfg: ExperimentConfig, reports: list[TrialReport]) -> CheckOutcome:
    """
    Counts values of c rather than trials. A value passes when its mean
    ratio is within the limit and no larger than the previous value's.
    """
    trend = mu_ratio_trend(reports)
    passed = 0
    previous = math.inf
    for c, mean in trend:
        if mean <= cfg.mu_ratio_limit and mean <= previous:
            passed += 1
        else:
            logger.info("Mean ratio %.3f at c=%s breaks the trend (previous %.3f)", mean, c, previous)
        previous = mean
    return CheckOutcome(
        check=str(Check.MU_TREND),
        passed_trials=passed,
        applicable_trials=len(trend),
        min_pass_rate=1.0,
    )


def evaluate_checks(cfg: ExperimentConfig, reports: list[TrialReport]) -> list[CheckOutcome]:
    outcomes = []
    for check in cfg.checks:
        if check == Check.MU_TREND:
            outcomes.append(_trend_outcome(cfg, reports))
            continue
        results = [check_trial(check, report, cfg) for report in reports]
        applicable = [result for result in results if result is not None]
        outcomes.append(
            CheckOutcome(
                check=str(check),
                passed_trials=sum(applicable),
                applicable_trials=len(applicable),
                min_pass_rate=cfg.min_pass_rate,
            )
        )
    return outcomes


def summarize(cfg: ExperimentConfig, reports: list[TrialReport]) -> list[dict[str, Any]]:
    """One row per (c, quantity), in grid order then first-seen field order."""
    rows = []
    for c in dict.fromkeys(cfg.c):
        group = [
            {k: v for k, v in r.to_row(cfg.timings).items() if k not in _NOT_AGGREGATED}
            for r in reports
            if r.c == c
        ]
        for summary in aggregate_trials(group).values():
            rows.append({"c": c, **summary.to_dict()})
    return rows


def ensure_output_dir(path: Path) -> Path:
    path.mkdir(parents=True, exist_ok=True)
    if not os.access(path, os.W_OK):
        raise PermissionError(f"Output directory is not writable: {path}")
    return path


def _run_all(cfg: ExperimentConfig) -> Iterator[TrialReport]:
    indices = range(cfg.total_trials)
    if cfg.workers == 1:
        yield from (run_trial(cfg, i) for i in indices)
        return
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        yield from pool.map(run_trial, repeat(cfg), indices)


def run_experiment(
    cfg: ExperimentConfig,
    on_trial: Callable[[TrialReport], None] | None = None,
) -> ExperimentResult:
    output_dir = ensure_output_dir(Path(cfg.output_dir))
    logger.info(
        "Running %d trials (n=%d, c=%s) on %d worker(s)",
        cfg.total_trials,
        cfg.n,
        cfg.c,
        cfg.workers,
    )

    reports: list[TrialReport] = []
    for report in _run_all(cfg):
        reports.append(report)
        if on_trial is not None:
            on_trial(report)

    result = ExperimentResult(
        reports=reports,
        summary=summarize(cfg, reports),
        checks=evaluate_checks(cfg, reports),
    )
    result.files = write_reports(cfg, result, output_dir)
    return result


def write_reports(cfg: ExperimentConfig, result: ExperimentResult, output_dir: Path) -> list[Path]:
    trials = [report.to_row(cfg.timings) for report in result.reports]
    checks = [outcome.to_dict() for outcome in result.checks]
    if cfg.format == "json":
        payload = {"trials": trials, "summary": result.summary, "checks": checks}
        files = []
        for name, data in payload.items():
            path = output_dir / f"{name}.json"
            write_summary_json(data, path)
            files.append(path)
        return files

    files = [output_dir / "trials.csv", output_dir / "summary.csv", output_dir / "checks.csv"]
    for rows, path in zip((trials, result.summary, checks), files):
        write_summary_csv(rows, path)
    return files
