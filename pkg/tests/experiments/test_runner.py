"""
Tests for the multi-trial driver, the acceptance checks and the report files.
"""

import csv
import json

import pytest

from experiments.config import Check, ExperimentConfig
from experiments.pipeline import TrialReport
from experiments.runner import (
    CheckOutcome,
    check_trial,
    ensure_output_dir,
    evaluate_checks,
    mu_ratio_trend,
    run_experiment,
    summarize,
)


def config(tmp_path, **overrides):
    values = {
        "n": 80,
        "c": [3.0, 5.0],
        "trials": 2,
        "master_seed": 3,
        "output_dir": tmp_path,
        "checks": [Check.COVER_VALID],
    }
    values.update(overrides)
    return ExperimentConfig(**values)


def report(**fields):
    values = {"trial_index": 0, "seed": 1, "n": 10, "c": 2.0}
    values.update(fields)
    return TrialReport(**values)


class TestCheckOutcome:
    def test_pass_rate(self):
        outcome = CheckOutcome("cover_valid", 3, 4, 0.75)

        assert outcome.pass_rate == 0.75
        assert outcome.passed

    def test_below_the_minimum(self):
        assert not CheckOutcome("cover_valid", 2, 4, 0.75).passed

    def test_no_applicable_trials_passes(self):
        outcome = CheckOutcome("oracle", 0, 0, 1.0)

        assert outcome.pass_rate is None
        assert outcome.passed
        assert outcome.to_dict()["pass_rate"] is None


class TestCheckTrial:
    def test_errors_fail_every_check(self, tmp_path):
        cfg = config(tmp_path)
        failed = report(error="RuntimeError: boom", cover_valid=True)

        assert all(check_trial(check, failed, cfg) is False for check in Check)

    def test_cycle_found_skips_tiny_g_star(self, tmp_path):
        cfg = config(tmp_path)

        assert check_trial(Check.CYCLE_FOUND, report(failure_reason="TOO_SMALL"), cfg) is None
        assert check_trial(Check.CYCLE_FOUND, report(failure_reason="BUDGET"), cfg) is False
        assert check_trial(Check.CYCLE_FOUND, report(cycle_found=True), cfg) is True

    def test_booster_budget_needs_a_cycle(self, tmp_path):
        cfg = config(tmp_path)

        assert check_trial(Check.BOOSTER_BUDGET, report(), cfg) is None
        assert check_trial(Check.BOOSTER_BUDGET, report(cycle_found=True, boosters=3, booster_budget=3), cfg)
        assert not check_trial(Check.BOOSTER_BUDGET, report(cycle_found=True, boosters=4, booster_budget=3), cfg)

    def test_mu_ratio_uses_the_configured_limit(self, tmp_path):
        cfg = config(tmp_path, mu_ratio_limit=1.5)

        assert check_trial(Check.MU_RATIO, report(ratio_to_lower_bound=1.5), cfg) is True
        assert check_trial(Check.MU_RATIO, report(ratio_to_lower_bound=1.6), cfg) is False
        assert check_trial(Check.MU_RATIO, report(), cfg) is None

    def test_oracle_and_optional_checks_pass_through(self, tmp_path):
        cfg = config(tmp_path)

        assert check_trial(Check.ORACLE, report(), cfg) is None
        assert check_trial(Check.ORACLE, report(oracle_ok=True), cfg) is True
        assert check_trial(Check.GRAPH_PROPERTIES, report(properties_ok=False), cfg) is False
        assert check_trial(Check.REDUCTION_SIZES, report(reduction_sizes_ok=True), cfg) is True

    def test_evaluate_counts_only_applicable_trials(self, tmp_path):
        cfg = config(tmp_path, checks=[Check.BOOSTER_BUDGET], min_pass_rate=0.5)
        reports = [
            report(),
            report(cycle_found=True, boosters=1, booster_budget=2),
            report(cycle_found=True, boosters=5, booster_budget=2),
        ]

        (outcome,) = evaluate_checks(cfg, reports)

        assert (outcome.passed_trials, outcome.applicable_trials) == (1, 2)
        assert outcome.passed


class TestMuTrend:
    def test_means_per_c_in_ascending_order(self):
        reports = [
            report(c=8.0, ratio_to_lower_bound=1.1),
            report(c=6.0, ratio_to_lower_bound=1.4),
            report(c=6.0, ratio_to_lower_bound=1.2),
            report(c=8.0),
            report(c=10.0, ratio_to_lower_bound=9.0, error="RuntimeError: boom"),
        ]

        trend = mu_ratio_trend(reports)

        assert [c for c, _ in trend] == [6.0, 8.0]
        assert trend[0][1] == pytest.approx(1.3)
        assert trend[1][1] == pytest.approx(1.1)

    def test_decreasing_ratios_pass(self, tmp_path):
        cfg = config(tmp_path, c=[6.0, 8.0], checks=[Check.MU_TREND], mu_ratio_limit=1.5)
        reports = [report(c=6.0, ratio_to_lower_bound=1.4), report(c=8.0, ratio_to_lower_bound=1.2)]

        (outcome,) = evaluate_checks(cfg, reports)

        assert outcome.check == "mu_trend"
        assert (outcome.passed_trials, outcome.applicable_trials) == (2, 2)
        assert outcome.passed

    def test_rising_ratio_fails(self, tmp_path):
        cfg = config(tmp_path, c=[6.0, 8.0], checks=[Check.MU_TREND], min_pass_rate=0.0)
        reports = [report(c=6.0, ratio_to_lower_bound=1.2), report(c=8.0, ratio_to_lower_bound=1.3)]

        (outcome,) = evaluate_checks(cfg, reports)

        assert (outcome.passed_trials, outcome.applicable_trials) == (1, 2)
        assert not outcome.passed

    def test_mean_above_the_limit_fails(self, tmp_path):
        cfg = config(tmp_path, c=[6.0], checks=[Check.MU_TREND], mu_ratio_limit=1.5)

        (outcome,) = evaluate_checks(cfg, [report(c=6.0, ratio_to_lower_bound=1.7)])

        assert not outcome.passed

    def test_not_judged_per_trial(self, tmp_path):
        assert check_trial(Check.MU_TREND, report(ratio_to_lower_bound=1.2), config(tmp_path)) is None


class TestRunExperiment:
    def test_csv_reports(self, tmp_path):
        cfg = config(tmp_path / "out")

        result = run_experiment(cfg)

        assert [r.trial_index for r in result.reports] == [0, 1, 2, 3]
        assert [r.c for r in result.reports] == [3.0, 3.0, 5.0, 5.0]
        assert result.passed
        assert [p.name for p in result.files] == ["trials.csv", "summary.csv", "checks.csv"]
        with (tmp_path / "out" / "trials.csv").open() as handle:
            rows = list(csv.DictReader(handle))
        assert len(rows) == 4
        assert "time_sample" not in rows[0]
        with (tmp_path / "out" / "checks.csv").open() as handle:
            (check,) = list(csv.DictReader(handle))
        assert check["check"] == "cover_valid"

    def test_json_reports_with_timings(self, tmp_path):
        cfg = config(tmp_path, format="json", timings=True, c=[4.0], trials=1)

        result = run_experiment(cfg)

        assert sorted(p.name for p in result.files) == ["checks.json", "summary.json", "trials.json"]
        trials = json.loads((tmp_path / "trials.json").read_text())
        assert "time_hamilton" in trials[0]

    def test_summary_rows_per_c(self, tmp_path):
        cfg = config(tmp_path)
        result = run_experiment(cfg)

        assert {row["c"] for row in result.summary} == {3.0, 5.0}
        quantities = [row["quantity"] for row in result.summary if row["c"] == 3.0]
        assert "cover_size" in quantities
        assert "seed" not in quantities
        assert summarize(cfg, result.reports) == result.summary

    def test_on_trial_sees_every_report(self, tmp_path):
        seen = []

        run_experiment(config(tmp_path, trials=1), on_trial=seen.append)

        assert [r.trial_index for r in seen] == [0, 1]

    def test_worker_pool_gives_the_same_reports(self, tmp_path):
        serial = run_experiment(config(tmp_path / "serial"))
        pooled = run_experiment(config(tmp_path / "pooled", workers=2))

        assert [r.to_row() for r in pooled.reports] == [r.to_row() for r in serial.reports]


def test_output_directory_is_created(tmp_path):
    path = ensure_output_dir(tmp_path / "a" / "b")

    assert path.is_dir()


def test_output_directory_must_be_a_directory(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")

    with pytest.raises(OSError):
        ensure_output_dir(blocker / "reports")
