"""
The sparse random subgraph Gamma0 of G*.

Every vertex keeps a random sample of at most ``cap`` of its edges into
V(G*) \\ V(M) (SMALL vertices keep all of them); Gamma0 is the union of the
samples plus M.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Collection
from dataclasses import dataclass
from typing import Any

from graphs.core import Graph
from graphs.matching import Matching
from graphs.rng import Stream, generator

logger = logging.getLogger(__name__)


def default_cap(c: float) -> int:
    return max(3, math.floor(c / 1000))


@dataclass(frozen=True)
class Gamma:
    graph: Graph
    m: Matching
    cap: int
    seed: int = 0
    attempt: int = 0
    floor_violations: tuple[int, ...] = ()

    @classmethod
    def from_graph(cls, graph: Graph, m: Matching | None = None) -> Gamma:
        """Wrap an arbitrary graph, e.g. for expansion checks."""
        m = m or Matching()
        cap = max((len(row) for row in graph.adjacency), default=0)
        return cls(graph=graph, m=m, cap=cap)

    @property
    def n(self) -> int:
        return self.graph.n

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self.graph.neighbours(v)

    def has_edge(self, u: int, v: int) -> bool:
        return self.graph.has_edge(u, v)

    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.graph.edges())

    def summary(self, c: float) -> dict[str, Any]:
        budget = c / 950 * self.n
        return {
            "edges": self.graph.m,
            "cap": self.cap,
            "attempt": self.attempt,
            "budget": budget,
            "within_budget": self.graph.m <= budget,
            "floor_violations": len(self.floor_violations),
        }


def build_gamma0(
    gstar: Graph,
    m: Matching,
    small: Collection[int],
    cap: int,
    seed: int,
    attempt: int = 0,
) -> Gamma:
    """
    ``small`` is in gstar labels. Retries draw from the sub-stream
    ``(GAMMA, attempt)`` so each retry gets a fresh, reproducible sample.
    """
    if cap < 2:
        raise ValueError(f"cap must be at least 2, got {cap}")
    rng = generator(seed, Stream.GAMMA, attempt)
    edges = set(m.edges)
    violations = []
    for v, row in enumerate(gstar.adjacency):
        eligible = [u for u in row if not m.covers(u)]
        if len(eligible) < 2:
            violations.append(v)
        if v in small or len(eligible) <= cap:
            chosen = eligible
        else:
            picks = rng.choice(len(eligible), size=cap, replace=False)
            chosen = [eligible[i] for i in sorted(picks.tolist())]
        edges.update((min(u, v), max(u, v)) for u in chosen)

    if violations:
        logger.warning(
            "%d Gamma0 vertices have fewer than 2 edges outside V(M)", len(violations)
        )
    gamma = Gamma(
        graph=Graph.from_edges(gstar.n, edges),
        m=m,
        cap=cap,
        seed=seed,
        attempt=attempt,
        floor_violations=tuple(violations),
    )
    logger.debug("Gamma0 attempt %d: %d edges on %d vertices", attempt, gamma.graph.m, gstar.n)
    return gamma
