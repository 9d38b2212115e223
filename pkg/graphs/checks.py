"""
Value types for property checks and verdicts shared by every stage.

Checks never raise on a negative outcome: they return a status that the
report layer aggregates.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any

from django.db import models


class CheckStatus(models.TextChoices):
    """Outcome of a single property check."""

    PASSED = "PASSED", "Passed"
    FAILED = "FAILED", "Failed"
    # Sampled checks can only fail to find a counterexample.
    NOT_FALSIFIED = "NOT_FALSIFIED", "Not falsified"
    INAPPLICABLE = "INAPPLICABLE", "Inapplicable"


@dataclass
class PropertyCheck:
    """One checked inequality: ``measured`` against ``bound``."""

    name: str
    status: CheckStatus
    measured: float | None = None
    bound: float | None = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != CheckStatus.FAILED

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["status"] = str(self.status)
        return data


def bound_check(
    name: str,
    measured: float,
    bound: float,
    *,
    upper: bool = True,
    detail: str = "",
) -> PropertyCheck:
    """Check ``measured <= bound`` (or ``>=`` when ``upper`` is False)."""
    holds = measured <= bound if upper else measured >= bound
    return PropertyCheck(
        name=name,
        status=CheckStatus.PASSED if holds else CheckStatus.FAILED,
        measured=float(measured),
        bound=float(bound),
        detail=detail,
    )


@dataclass
class Verdict:
    """Result of a validity check; passes iff no violation was recorded."""

    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def fail(self, message: str) -> None:
        self.violations.append(message)

    def to_dict(self) -> dict[str, Any]:
        return {"passed": self.passed, "violations": list(self.violations)}
