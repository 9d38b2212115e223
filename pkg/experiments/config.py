"""
Experiment configuration.

An ``ExperimentConfig`` is assembled from three layers, later ones winning:
the Django settings defaults, an optional key-value configuration file
(dotenv syntax, keys case-insensitive, ``c`` comma-separated), and the
command-line flags. The model is plain pydantic so it can be pickled into
process-pool workers that never configure Django.

Example configuration file::

    # c-sweep at n = 10^5
    N=100000
    C=5,6,7,8
    TRIALS=20
    MASTER_SEED=1
    CHECKS=cover_valid,cycle_found,mu_ratio
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from pathlib import Path
from typing import Any, Literal

from django.db import models
from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from classification.classifier import Thresholds
from classification.properties import Tolerances
from expanders.gamma import default_cap


class Check(models.TextChoices):
    """Acceptance checks a run can be gated on."""

    COVER_VALID = "cover_valid", "Every cover passes verification"
    CYCLE_FOUND = "cycle_found", "A Hamilton M-cycle of G* was found"
    BOOSTER_BUDGET = "booster_budget", "Boosters stayed within budget"
    ORACLE = "oracle", "Cover size is at least the exact mu"
    MU_RATIO = "mu_ratio", "Cover size within the ratio limit of the lower bound"
    MU_TREND = "mu_trend", "Mean cover ratio within the limit and non-increasing in c"
    GRAPH_PROPERTIES = "graph_properties", "Structural properties of G hold"
    REDUCTION_SIZES = "reduction_sizes", "Reduction sizes meet their bounds"


DEFAULT_CHECKS = (Check.COVER_VALID, Check.CYCLE_FOUND, Check.BOOSTER_BUDGET, Check.ORACLE)

# Keys whose file values are comma-separated lists.
_LIST_KEYS = {"c", "checks"}


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = Field(..., ge=1, description="Vertices per sampled graph.")
    c: list[float] = Field(..., min_length=1, description="Average-degree grid.")
    trials: int = Field(1, ge=1, description="Trials per value of c.")
    master_seed: int = Field(0, ge=0, lt=2**64)

    small_deg: int | None = Field(None, ge=2)
    large_deg: float | None = Field(None, ge=0)
    close_radius: int = Field(4, ge=1)
    gamma_cap: int | None = Field(None, ge=2)
    booster_budget: int | None = Field(None, ge=0)
    retries: int = Field(3, ge=0)
    max_rotation_states: int = Field(5000, ge=1)
    debug_rotations: bool = False

    oracle: bool = False
    checks: list[Check] = Field(default_factory=lambda: list(DEFAULT_CHECKS))
    min_pass_rate: float = Field(1.0, ge=0.0, le=1.0)
    epsilon: float = Field(0.5, gt=0.0, lt=1.0)
    slack: float = Field(10.0, ge=1.0)
    mu_ratio_limit: float = Field(1.5, gt=0.0)
    p1_delta: float | None = Field(0.05, gt=0.0, lt=1.0)
    property_samples: int = Field(1000, ge=0)

    output_dir: Path = Path("reports")
    format: Literal["csv", "json"] = "csv"
    workers: int = Field(1, ge=1)
    timings: bool = False

    @field_validator("c")
    @classmethod
    def validate_c(cls, values: list[float]) -> list[float]:
        for c in values:
            if not math.isfinite(c) or c < 0:
                raise ValueError(f"c must be a non-negative number, got {c}")
        return values

    @field_validator("checks")
    @classmethod
    def dedupe_checks(cls, values: list[Check]) -> list[Check]:
        return list(dict.fromkeys(values))

    @model_validator(mode="after")
    def validate_c_against_n(self):
        too_large = [c for c in self.c if c > self.n]
        if too_large:
            raise ValueError(f"c must not exceed n = {self.n}, got {too_large}")
        return self

    @property
    def total_trials(self) -> int:
        return len(self.c) * self.trials

    def c_for(self, trial_index: int) -> float:
        """Trials are numbered across the grid: all trials of c[0] first."""
        return self.c[trial_index // self.trials]

    def thresholds_for(self, c: float) -> Thresholds:
        defaults = Thresholds.for_c(c)
        return Thresholds(
            small_deg=self.small_deg if self.small_deg is not None else defaults.small_deg,
            large_deg=self.large_deg if self.large_deg is not None else defaults.large_deg,
            close_radius=self.close_radius,
        )

    def cap_for(self, c: float) -> int:
        return self.gamma_cap if self.gamma_cap is not None else default_cap(c)

    def tolerances(self, seed: int) -> Tolerances:
        return Tolerances(
            p1_delta=self.p1_delta,
            slack=self.slack,
            p5_samples=self.property_samples,
            p6_samples=self.property_samples,
            seed=seed,
        )


def load_config_file(path: Path | str) -> dict[str, Any]:
    """Read a key-value file into lower-cased keys; list keys are split on commas."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Configuration file not found: {path}")
    values: dict[str, Any] = {}
    for key, raw in dotenv_values(path).items():
        if raw is None or not raw.strip():
            continue
        name = key.strip().lower()
        if name == "check":
            name = "checks"
        if name in _LIST_KEYS:
            values[name] = [item.strip() for item in raw.split(",") if item.strip()]
        else:
            values[name] = raw.strip()
    return values


def build_config(
    defaults: Mapping[str, Any],
    file_values: Mapping[str, Any] | None = None,
    cli_values: Mapping[str, Any] | None = None,
) -> ExperimentConfig:
    """Merge the layers (``None`` CLI values mean "not given") and validate."""
    merged = dict(defaults)
    merged.update(file_values or {})
    merged.update({k: v for k, v in (cli_values or {}).items() if v is not None})
    return ExperimentConfig.model_validate(merged)
