"""Summary statistics over trial reports, and their CSV/JSON writers."""

from __future__ import annotations

import csv
import json
from collections.abc import Mapping, Sequence
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any

import numpy as np


@dataclass(frozen=True)
class QuantitySummary:
    quantity: str
    count: int
    mean: float
    std: float
    min: float
    max: float
    pass_rate: float | None = None

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def aggregate_trials(
    reports: Sequence[Mapping[str, Any]],
) -> dict[str, QuantitySummary]:
    """
    Mean, population standard deviation, min and max of every numeric field,
    in first-seen field order. Boolean fields also get a pass rate. ``None``
    values (a stage that did not run) are skipped; non-numeric fields are
    ignored.
    """
    if not reports:
        raise ValueError("aggregate_trials needs at least one report")

    columns: dict[str, list[float]] = {}
    flags: set[str] = set()
    for report in reports:
        for key, value in report.items():
            if value is None or isinstance(value, str):
                continue
            if isinstance(value, bool):
                flags.add(key)
            elif not isinstance(value, (int, float, np.integer, np.floating)):
                continue
            columns.setdefault(key, []).append(float(value))

    summaries = {}
    for key, values in columns.items():
        data = np.asarray(values, dtype=np.float64)
        summaries[key] = QuantitySummary(
            quantity=key,
            count=len(values),
            mean=float(data.mean()),
            std=float(data.std(ddof=0)),
            min=float(data.min()),
            max=float(data.max()),
            pass_rate=float(data.mean()) if key in flags else None,
        )
    return summaries


def write_summary_csv(rows: Sequence[Mapping[str, Any]], path: Path | str) -> None:
    """One CSV row per mapping; columns in first-seen order."""
    fieldnames: list[str] = []
    for row in rows:
        fieldnames.extend(key for key in row if key not in fieldnames)
    with Path(path).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({key: _csv_value(value) for key, value in row.items()})


def _csv_value(value: Any) -> Any:
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return " ".join(str(item) for item in value)
    return value


def write_summary_json(data: Any, path: Path | str) -> None:
    Path(path).write_text(
        json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
