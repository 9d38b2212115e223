"""Measured reduction sizes against their predicted lower and upper bounds."""

from __future__ import annotations

import math

from analytics.predictors import SolverDomainError, predict_two_core_size
from classification.classifier import Classification
from classification.properties import PropertyReport
from graphs.checks import CheckStatus, PropertyCheck, bound_check
from reduction.reducer import Reduction


def check_reduction_sizes(
    r: Reduction,
    c: float,
    n: int,
    epsilon: float,
    *,
    cls: Classification | None = None,
    slack: float = 1.0,
    two_core_tolerance: float = 0.01,
) -> PropertyReport:
    """
    Compare |C2|, |V(G*)| and |V(M)| with their predictions.

    ``slack`` (>= 1) scales the deficits: |V(G*)| may fall short of n by
    ``slack`` times the predicted amount, |V(M)| may be ``slack`` times
    smaller than predicted.
    """
    report = PropertyReport()
    pendant_mass = c * math.exp(-c) * n

    c2 = len(r.c2_vertices)
    try:
        predicted = predict_two_core_size(c, n)
    except SolverDomainError:
        predicted = None
    if c2 == 0 or predicted is None or predicted == 0:
        report.checks.append(
            PropertyCheck(
                name="two_core_size",
                status=CheckStatus.INAPPLICABLE,
                measured=c2,
                detail="empty 2-core or c <= 1",
            )
        )
    else:
        error = abs(c2 - predicted) / predicted
        report.checks.append(
            PropertyCheck(
                name="two_core_size",
                status=(
                    CheckStatus.PASSED
                    if error <= two_core_tolerance
                    else CheckStatus.FAILED
                ),
                measured=c2,
                bound=predicted,
                detail=f"relative error {error:.4g} (tolerance {two_core_tolerance})",
            )
        )

    report.checks.append(
        bound_check(
            "gstar_size",
            r.gstar.n,
            n - slack * (1 + epsilon / 4) * pendant_mass,
            upper=False,
        )
    )
    report.checks.append(
        bound_check(
            "matching_support",
            2 * len(r.m),
            (1 - epsilon / 4) * pendant_mass / slack,
            upper=False,
        )
    )
    if cls is not None:
        leftover = n - len(cls.v1 | cls.v0 | r.c2_vertices)
        report.checks.append(
            bound_check(
                "leftover",
                leftover,
                slack * 2 * c**2 * math.exp(-2 * c) * n,
                detail="|V \\ (V1 u V0 u C2)|",
            )
        )
    return report
