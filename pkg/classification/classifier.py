"""
Vertex classes of a sparse random graph.

Computes V0, V1, N(V1), LARGE, SMALL, CLOSE, the fixed-point set X, Y and
BAD = X u Y. The degree cut-offs are configuration (see ``Thresholds``):
the asymptotic constants (c/1000, 20c) only make sense for astronomically
large c, so the defaults are rescaled for desk-scale experiments.
"""

from __future__ import annotations

import heapq
import logging
import math
from collections.abc import Collection, Sequence
from dataclasses import dataclass
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from graphs.core import Graph, degree_into, neighbourhood

logger = logging.getLogger(__name__)


class Thresholds(BaseModel):
    """Degree and distance cut-offs for SMALL, LARGE and CLOSE."""

    model_config = ConfigDict(frozen=True)

    small_deg: int = Field(..., ge=2, description="SMALL: fewer qualifying neighbours than this.")
    large_deg: float = Field(..., ge=0, description="LARGE: degree strictly above this.")
    close_radius: int = Field(4, ge=1, description="CLOSE: distance to another SMALL vertex.")

    @classmethod
    def for_c(cls, c: float) -> Thresholds:
        """Desk-scale defaults: ``max(2, floor(c/1000))``, ``ceil(20c)``, 4."""
        return cls(
            small_deg=max(2, math.floor(c / 1000)),
            large_deg=math.ceil(20 * c),
            close_radius=4,
        )


@dataclass(frozen=True)
class Classification:
    v0: frozenset[int]
    v1: frozenset[int]
    small: frozenset[int]
    large: frozenset[int]
    close: frozenset[int]
    x: frozenset[int]
    y: frozenset[int]
    bad: frozenset[int]
    n_v1_neighbours: frozenset[int]

    def sizes(self) -> dict[str, int]:
        return {
            "v0": len(self.v0),
            "v1": len(self.v1),
            "small": len(self.small),
            "large": len(self.large),
            "close": len(self.close),
            "x": len(self.x),
            "y": len(self.y),
            "bad": len(self.bad),
            "n_v1_neighbours": len(self.n_v1_neighbours),
        }

    def to_report(self, include_members: bool = False) -> dict[str, Any]:
        report: dict[str, Any] = {"sizes": self.sizes()}
        if include_members:
            report["members"] = {
                name: sorted(getattr(self, name)) for name in self.sizes()
            }
        return report


def classify_basic(
    g: Graph, t: Thresholds
) -> tuple[frozenset[int], frozenset[int], frozenset[int], frozenset[int]]:
    """Return ``(V0, V1, LARGE, N(V1))``."""
    deg = g.degrees
    v0 = frozenset(int(v) for v in (deg == 0).nonzero()[0])
    v1 = frozenset(int(v) for v in (deg == 1).nonzero()[0])
    large = frozenset(int(v) for v in (deg > t.large_deg).nonzero()[0])
    n_v1 = neighbourhood(g, v1)
    return v0, v1, large, n_v1


def compute_small(
    g: Graph, t: Thresholds, n_v1_neighbours: Collection[int]
) -> frozenset[int]:
    """Vertices with fewer than ``small_deg`` neighbours outside N(V1)."""
    small = []
    for v, row in enumerate(g.adjacency):
        if len(row) < t.small_deg:
            small.append(v)
        elif len(row) - sum(1 for u in row if u in n_v1_neighbours) < t.small_deg:
            small.append(v)
    return frozenset(small)


def compute_close(g: Graph, t: Thresholds, small: Collection[int]) -> frozenset[int]:
    """
    SMALL vertices within ``close_radius`` of another SMALL vertex, or lying
    on a cycle of length at most ``close_radius``.
    """
    return frozenset(
        v for v in sorted(small) if _is_close(g, v, small, t.close_radius)
    )


def _is_close(g: Graph, v: int, small: Collection[int], radius: int) -> bool:
    # BFS labelling every vertex with the neighbour of v its tree path leaves by.
    dist = {v: 0}
    branch = {v: v}
    frontier = [v]
    for d in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for y in g.adjacency[x]:
                if y in dist:
                    continue
                if y in small:
                    return True
                dist[y] = d
                branch[y] = y if x == v else branch[x]
                nxt.append(y)
        if not nxt:
            break
        frontier = nxt

    # The shortest cycle through v closes over an edge joining two branches.
    for a, da in dist.items():
        if a == v or 2 * da + 1 > radius:
            continue
        for b in g.adjacency[a]:
            if b != v and b in dist and branch[b] != branch[a]:
                if da + dist[b] + 1 <= radius:
                    return True
    return False


def compute_x(
    g: Graph, small: Collection[int], scan_order: Sequence[int] | None = None
) -> frozenset[int]:
    """
    The unique smallest X with ``d(v, SMALL u X) <= 1`` for every v outside X.

    Grown greedily: while some vertex outside X has two or more neighbours in
    SMALL u X, add the first one in ``scan_order`` (ascending labels by
    default). The fixed point does not depend on the order.
    """
    rank = list(range(g.n))
    if scan_order is not None:
        if sorted(scan_order) != rank:
            raise ValueError("scan_order must be a permutation of the vertex labels")
        for position, v in enumerate(scan_order):
            rank[v] = position
    order = list(scan_order) if scan_order is not None else rank.copy()

    in_small = bytearray(g.n)
    for v in small:
        in_small[v] = 1
    hits = [0] * g.n
    for s in small:
        for u in g.adjacency[s]:
            hits[u] += 1

    heap = [rank[v] for v in range(g.n) if hits[v] >= 2]
    heapq.heapify(heap)
    in_x = bytearray(g.n)
    while heap:
        v = order[heapq.heappop(heap)]
        if in_x[v]:
            continue
        in_x[v] = 1
        if in_small[v]:
            # Already counted in SMALL u X.
            continue
        for u in g.adjacency[v]:
            hits[u] += 1
            if hits[u] == 2 and not in_x[u]:
                heapq.heappush(heap, rank[u])
    return frozenset(v for v in range(g.n) if in_x[v])


def compute_bad(
    g: Graph, small: Collection[int]
) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """Return ``(X, Y, BAD)`` where Y holds degree-2 vertices with one X-neighbour."""
    x = compute_x(g, small)
    y = frozenset(
        v
        for v, row in enumerate(g.adjacency)
        if len(row) == 2 and degree_into(g, v, x) == 1
    )
    return x, y, x | y


def classify(g: Graph, t: Thresholds) -> Classification:
    v0, v1, large, n_v1 = classify_basic(g, t)
    small = compute_small(g, t, n_v1)
    close = compute_close(g, t, small)
    x, y, bad = compute_bad(g, small)
    cls = Classification(
        v0=v0,
        v1=v1,
        small=small,
        large=large,
        close=close,
        x=x,
        y=y,
        bad=bad,
        n_v1_neighbours=n_v1,
    )
    logger.info("Classified %d vertices: %s", g.n, cls.sizes())
    return cls
