"""
One trial of the experiment: sample, classify, reduce, build Gamma0, find
a Hamilton M-cycle (retrying with fresh Gamma0 samples), extract and verify
the path cover, and compare it with the bounds.

Runs inside process-pool workers: everything it needs arrives in the
``ExperimentConfig``; it never reads Django settings.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field

from classification.classifier import classify
from classification.properties import check_properties
from covers.bounds import ORACLE_LIMIT, exact_mu, mu_gap
from covers.extraction import (
    PathCover,
    extract_cover,
    extract_path_cover,
    lift_cycle,
    verify_cover,
)
from expanders.gamma import build_gamma0
from experiments.config import Check, ExperimentConfig
from graphs.core import Graph, SampleParams, sample_gnp
from graphs.rng import derive_trial_seed
from hamilton.engine import FailureReason, HamiltonFailure, hamilton_m_cycle
from reduction.reducer import build_gstar, connected_two_core, write_gstar
from reduction.sizes import check_reduction_sizes

logger = logging.getLogger(__name__)


class TrialReport(BaseModel):
    trial_index: int
    seed: int
    n: int
    c: float

    v0: int | None = None
    v1: int | None = None
    small: int | None = None
    large: int | None = None
    close: int | None = None
    x: int | None = None
    y: int | None = None
    bad: int | None = None
    n_v1_neighbours: int | None = None
    c2: int | None = None
    gstar: int | None = None
    gstar_edges: int | None = None
    m: int | None = None
    m_prime: int | None = None
    dropped: int | None = None
    unmatched: int | None = None
    adjacent_m_pairs: int | None = None
    floor_violations: int | None = None

    gamma_edges: int | None = None
    gamma_cap: int | None = None
    gamma_budget: float | None = None
    gamma_within_budget: bool | None = None
    gamma_attempts: int = 0
    boosters: int | None = None
    booster_budget: int | None = None
    cycle_found: bool = False
    failure_reason: str | None = None

    cover_size: int | None = None
    cover_valid: bool = False
    long_cycle: int | None = None
    lower_bound: int | None = None
    target: float | None = None
    ratio_to_lower_bound: float | None = None

    oracle_mu: int | None = None
    oracle_ok: bool | None = None
    properties_ok: bool | None = None
    reduction_sizes_ok: bool | None = None
    # PropertyCheck.to_dict() per check name, for graph properties and reduction sizes.
    property_checks: dict[str, dict[str, Any]] = Field(default_factory=dict)

    error: str | None = None
    timings: dict[str, float] = Field(default_factory=dict)

    @property
    def success(self) -> bool:
        return self.cycle_found and self.cover_valid

    def to_row(self, include_timings: bool = False) -> dict[str, Any]:
        row = self.model_dump(exclude={"timings", "property_checks"})
        row["success"] = self.success
        for name, check in self.property_checks.items():
            row[f"{name}_measured"] = check["measured"]
            row[f"{name}_bound"] = check["bound"]
            row[f"{name}_ok"] = check["status"] != "FAILED"
        if include_timings:
            row.update({f"time_{stage}": seconds for stage, seconds in self.timings.items()})
        return row


class _StageTimer:
    def __init__(self, timings: dict[str, float]):
        self.timings = timings

    @contextmanager
    def __call__(self, stage: str) -> Iterator[None]:
        started = time.perf_counter()
        try:
            yield
        finally:
            self.timings[stage] = round(time.perf_counter() - started, 6)


def run_trial(cfg: ExperimentConfig, trial_index: int) -> TrialReport:
    """Run trial ``trial_index`` of ``cfg``; stage errors end up in ``report.error``."""
    c = cfg.c_for(trial_index)
    seed = derive_trial_seed(cfg.master_seed, trial_index)
    report = TrialReport(trial_index=trial_index, seed=seed, n=cfg.n, c=c)
    timer = _StageTimer(report.timings)
    try:
        with timer("sample"):
            g = sample_gnp(SampleParams(n=cfg.n, c=c, seed=seed))
        solve_graph(g, c, seed, cfg, report, timer)
    except Exception as exc:  # noqa: BLE001
        logger.exception("Trial %d (c=%s, seed=%d) failed", trial_index, c, seed)
        report.error = f"{type(exc).__name__}: {exc}"
    return report


def solve_graph(
    g: Graph,
    c: float,
    seed: int,
    cfg: ExperimentConfig,
    report: TrialReport,
    timer: _StageTimer | None = None,
    *,
    gstar_out: Path | None = None,
) -> PathCover:
    """
    Run every stage after sampling on ``g``, filling ``report`` in place.
    ``gstar_out`` also receives G* and its label map.
    """
    timer = timer or _StageTimer(report.timings)

    with timer("classify"):
        cls = classify(g, cfg.thresholds_for(c))
    for name, size in cls.to_report()["sizes"].items():
        setattr(report, name, size)

    with timer("reduce"):
        c2 = connected_two_core(g)
        r = build_gstar(g, cls, c2)
    for name, value in r.summary().items():
        setattr(report, name, value)
    if gstar_out is not None:
        write_gstar(r, gstar_out)

    small_star = frozenset(r.from_g[v] for v in cls.small if v in r.from_g)
    cap = cfg.cap_for(c)
    budget = cfg.booster_budget if cfg.booster_budget is not None else r.gstar.n
    report.booster_budget = budget
    with timer("hamilton"):
        for attempt in range(cfg.retries + 1):
            gamma = build_gamma0(r.gstar, r.m, small_star, cap, seed, attempt)
            result = hamilton_m_cycle(
                r.gstar,
                r.m,
                gamma,
                budget,
                max_states=cfg.max_rotation_states,
                check_rotations=cfg.debug_rotations,
            )
            report.gamma_attempts = attempt + 1
            summary = gamma.summary(c)
            report.gamma_edges, report.gamma_cap = summary["edges"], summary["cap"]
            report.gamma_budget = summary["budget"]
            report.gamma_within_budget = summary["within_budget"]
            if result.success:
                break
            if result.reason == FailureReason.TOO_SMALL:
                break
            logger.warning(
                "Attempt %d on seed %d failed (%s); retrying with a fresh Gamma0",
                attempt,
                seed,
                result.reason,
            )
    report.boosters = len(result.boosters)
    report.cycle_found = result.success
    if isinstance(result, HamiltonFailure):
        report.failure_reason = str(result.reason)

    with timer("cover"):
        if result.success:
            cover = extract_cover(g, r, result.cycle)
            report.long_cycle = len(lift_cycle(r, result.cycle))
        else:
            cover = extract_path_cover(g, r, result.longest_path)
        verdict = verify_cover(g, cover)
        gap = mu_gap(g, cover, c, long_cycle=report.long_cycle, epsilon=cfg.epsilon)
    report.cover_size = cover.size
    report.cover_valid = verdict.passed
    if not verdict.passed:
        logger.error("Cover for seed %d failed verification: %s", seed, verdict.violations[:5])
    report.lower_bound = gap["lower_bound"]
    report.target = gap["target"]
    report.ratio_to_lower_bound = gap["ratio_to_lower_bound"]

    if cfg.oracle and g.n <= ORACLE_LIMIT:
        with timer("oracle"):
            report.oracle_mu = exact_mu(g)
        report.oracle_ok = cover.size >= report.oracle_mu

    if Check.GRAPH_PROPERTIES in cfg.checks:
        with timer("properties"):
            properties = check_properties(g, cls, c, cfg.tolerances(seed))
        report.properties_ok = properties.passed
        report.property_checks.update(properties.to_dict())
    if Check.REDUCTION_SIZES in cfg.checks:
        sizes = check_reduction_sizes(r, c, g.n, cfg.epsilon, cls=cls, slack=cfg.slack)
        report.reduction_sizes_ok = sizes.passed
        report.property_checks.update(sizes.to_dict())
    return cover
