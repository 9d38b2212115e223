"""
Closed-form predictions for ``G(n, c/n)``.

Degree counts follow the Poisson law ``e^-c c^d / d! * n``. The 2-core size
is ``(1 - x)(1 - x/c) n`` where ``x`` is the root in (0, 1) of
``x e^-x = c e^-c``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Any

# Relative errors divide by max(|predicted|, RELATIVE_ERROR_FLOOR).
RELATIVE_ERROR_FLOOR = 1e-12

_MAX_BISECTION_STEPS = 2000


class SolverDomainError(ValueError):
    """Raised when a predictor is evaluated outside its domain."""


@dataclass(frozen=True)
class Prediction:
    quantity: str
    predicted: float
    measured: float
    relative_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.relative_error <= self.tolerance

    def to_dict(self) -> dict[str, Any]:
        return {**asdict(self), "passed": self.passed}


def compare(
    quantity: str, predicted: float, measured: float, tolerance: float
) -> Prediction:
    error = abs(measured - predicted) / max(abs(predicted), RELATIVE_ERROR_FLOOR)
    return Prediction(
        quantity=quantity,
        predicted=float(predicted),
        measured=float(measured),
        relative_error=error,
        tolerance=tolerance,
    )


def predict_degree_count(d: int, c: float, n: int) -> float:
    """Expected number of degree-``d`` vertices: ``e^-c c^d / d! * n``."""
    if d < 0:
        raise SolverDomainError(f"Degree must be non-negative, got {d}")
    if c < 0:
        raise SolverDomainError(f"c must be non-negative, got {c}")
    if c == 0:
        return float(n) if d == 0 else 0.0
    return math.exp(-c + d * math.log(c) - math.lgamma(d + 1)) * n


def solve_two_core_x(c: float) -> float:
    """
    The root ``x`` in (0, 1) of ``x e^-x = c e^-c``, by bisection.

    ``x e^-x`` is increasing on (0, 1), so bisection runs until the midpoint
    stops moving, i.e. to full double precision.
    """
    if c <= 1:
        raise SolverDomainError(f"x e^-x = c e^-c has no root in (0, 1) for c = {c}")
    target = c * math.exp(-c)
    lo, hi = 0.0, 1.0
    for _ in range(_MAX_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if mid * math.exp(-mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def predict_two_core_size(c: float, n: int) -> float:
    if n == 0:
        return 0.0
    x = solve_two_core_x(c)
    return (1 - x) * (1 - x / c) * n


def predict_two_core_lower_bound(c: float, n: int, epsilon: float) -> float:
    """``(1 - (c+1) e^-c - (1+eps) c^2 e^-2c) n``."""
    return (
        1 - (c + 1) * math.exp(-c) - (1 + epsilon) * c**2 * math.exp(-2 * c)
    ) * n


def predict_mu_target(c: float, n: int) -> float:
    """Leading-order path cover number ``c e^-c n / 2``."""
    return 0.5 * c * math.exp(-c) * n


def predict_mu_lower(c: float, n: int) -> float:
    """Isolated vertices plus half the pendants: ``(c/2 + 1) e^-c n``."""
    return (0.5 * c + 1) * math.exp(-c) * n
