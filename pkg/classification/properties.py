"""
Empirical checks of the typical-structure properties of ``G(n, c/n)``.

P1-P4 and the BAD bound are exact comparisons of set sizes. P5 and P6 quantify
over exponentially many vertex sets, so they are checked on random samples
(plus, for P5, the sets most likely to break them); a sampled pass is reported
as NOT_FALSIFIED.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from classification.classifier import Classification
from graphs.checks import CheckStatus, PropertyCheck, bound_check
from graphs.core import Graph
from graphs.rng import Stream, generator

logger = logging.getLogger(__name__)


class Tolerances(BaseModel):
    """Knobs for :func:`check_properties`."""

    model_config = ConfigDict(frozen=True)

    # None uses n^-0.4.
    p1_delta: float | None = Field(None, gt=0, lt=1)
    slack: float = Field(1.0, ge=1.0)
    p5_samples: int = Field(1000, ge=0)
    p6_samples: int = Field(1000, ge=0)
    seed: int = Field(0, ge=0, lt=2**64)


@dataclass
class PropertyReport:
    checks: list[PropertyCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.ok for check in self.checks)

    def by_name(self, name: str) -> PropertyCheck:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def to_dict(self) -> dict[str, Any]:
        return {check.name: check.to_dict() for check in self.checks}


def check_properties(
    g: Graph, cls: Classification, c: float, tolerances: Tolerances | None = None
) -> PropertyReport:
    tol = tolerances or Tolerances()
    n = g.n
    report = PropertyReport()
    if n == 0:
        return report

    target_v1 = c * math.exp(-c) * n
    delta = tol.p1_delta if tol.p1_delta is not None else n**-0.4
    v1 = len(cls.v1)
    report.checks.append(
        PropertyCheck(
            name="p1_v1_size",
            status=(
                CheckStatus.PASSED
                if (1 - delta) * target_v1 <= v1 <= (1 + delta) * target_v1
                else CheckStatus.FAILED
            ),
            measured=v1,
            bound=target_v1,
            detail=f"|V1| within a factor 1 +/- {delta:.4g} of c e^-c n",
        )
    )

    s = tol.slack
    report.checks.extend(
        [
            bound_check("p2_small", len(cls.small), s * math.exp(-0.9 * c) * n),
            bound_check("p3_large", len(cls.large), s * 1e-6 * n),
            bound_check("p4_close", len(cls.close), s * math.exp(-1.8 * c) * n),
            bound_check(
                "bad_size", len(cls.bad), s * 3 * math.sqrt(c) * math.exp(-c) * n
            ),
            bound_check("x_size", len(cls.x), s * math.sqrt(c) * math.exp(-c) * n),
            bound_check(
                "y_minus_x_size",
                len(cls.y - cls.x),
                len(cls.x) + len(cls.close),
                detail="|Y \\ X| <= |X| + |CLOSE|",
            ),
        ]
    )

    rng = generator(tol.seed, Stream.PROPERTIES)
    report.checks.append(_check_sparse_sets(g, cls, c, rng, tol.p5_samples))
    report.checks.append(_check_set_pairs(g, c, rng, tol.p6_samples))

    failed = [check.name for check in report.checks if check.status == CheckStatus.FAILED]
    if failed:
        logger.warning("Structural properties failed on n=%d, c=%.4g: %s", n, c, failed)
    return report


def _edges_within(g: Graph, members: np.ndarray, mask: np.ndarray) -> int:
    return sum(int(mask[list(g.adjacency[v])].sum()) for v in members.tolist()) // 2


def _check_sparse_sets(
    g: Graph, cls: Classification, c: float, rng: np.random.Generator, samples: int
) -> PropertyCheck:
    """Every U with |U| <= 1e-5 n spans fewer than 1e-4 c |U| edges."""
    n = g.n
    limit = max(1, math.floor(1e-5 * n))

    candidates: list[np.ndarray] = []
    for natural in (cls.small, cls.bad, cls.close):
        if natural:
            candidates.append(np.array(sorted(natural)[:limit], dtype=np.int64))
    for v in sorted(cls.small):
        closed = [v, *g.adjacency[v]]
        candidates.append(np.array(sorted(closed)[:limit], dtype=np.int64))
    for _ in range(samples):
        size = int(rng.integers(1, limit + 1))
        candidates.append(rng.choice(n, size=size, replace=False))

    mask = np.zeros(n, dtype=bool)
    for members in candidates:
        mask[members] = True
        spanned = _edges_within(g, members, mask)
        mask[members] = False
        if spanned >= 1e-4 * c * len(members):
            return PropertyCheck(
                name="p5_sparse_sets",
                status=CheckStatus.FAILED,
                measured=spanned,
                bound=1e-4 * c * len(members),
                detail=f"U = {sorted(members.tolist())[:20]} spans too many edges",
            )
    return PropertyCheck(
        name="p5_sparse_sets",
        status=CheckStatus.NOT_FALSIFIED,
        detail=f"{len(candidates)} candidate sets of size <= {limit}",
    )


def _check_set_pairs(
    g: Graph, c: float, rng: np.random.Generator, samples: int
) -> PropertyCheck:
    """Disjoint U, W with |U| = 1e-6 n and |W| = n/5 have e(U, W) >= 1e-7 c n."""
    n = g.n
    u_size = max(1, round(1e-6 * n))
    w_size = n // 5
    bound = 1e-7 * c * n
    if u_size + w_size > n or w_size == 0:
        return PropertyCheck(
            name="p6_set_pairs",
            status=CheckStatus.INAPPLICABLE,
            detail=f"n={n} too small for disjoint U, W",
        )

    in_w = np.zeros(n, dtype=bool)
    for _ in range(samples):
        chosen = rng.choice(n, size=u_size + w_size, replace=False)
        u, w = chosen[:u_size], chosen[u_size:]
        in_w[w] = True
        crossing = sum(int(in_w[list(g.adjacency[v])].sum()) for v in u.tolist())
        in_w[w] = False
        if crossing < bound:
            return PropertyCheck(
                name="p6_set_pairs",
                status=CheckStatus.FAILED,
                measured=crossing,
                bound=bound,
                detail=f"U = {sorted(u.tolist())[:20]} has too few edges into W",
            )
    return PropertyCheck(
        name="p6_set_pairs",
        status=CheckStatus.NOT_FALSIFIED,
        bound=bound,
        detail=f"{samples} sampled pairs",
    )
