"""
Lower bounds and exact values of the path cover number.

``mu(G)`` is the least number of vertex-disjoint paths (single vertices
allowed) covering V(G), and 0 when G is Hamiltonian. A path can contain at
most two degree-1 vertices and an isolated vertex is a path on its own, so
``|V0| + ceil(|V1| / 2)`` bounds mu from below for non-Hamiltonian G.
"""

from __future__ import annotations

import math
from typing import Any

import numpy as np

from covers.extraction import PathCover
from graphs.core import Graph

ORACLE_LIMIT = 16


class OracleSizeError(ValueError):
    """Raised when an exhaustive oracle is asked of a graph that is too large."""


def lower_bound_mu(g: Graph, *, non_hamiltonian: bool = False) -> int:
    """
    ``|V0| + ceil(|V1| / 2)``. With ``non_hamiltonian`` the bound is raised
    to at least 1, since a graph known not to be Hamiltonian needs a path.
    """
    degrees = g.degrees
    bound = int((degrees == 0).sum()) + math.ceil(int((degrees == 1).sum()) / 2)
    if non_hamiltonian and g.n > 0:
        return max(1, bound)
    return bound


def _check_size(g: Graph) -> None:
    if g.n > ORACLE_LIMIT:
        raise OracleSizeError(
            f"Exhaustive oracles are limited to {ORACLE_LIMIT} vertices, got {g.n}"
        )


def is_hamiltonian(g: Graph) -> bool:
    """Bitmask DP: is there a Hamilton cycle (on at least 3 vertices)?"""
    _check_size(g)
    n = g.n
    if n < 3:
        return False
    masks = [sum(1 << u for u in row) for row in g.adjacency]
    full = (1 << n) - 1
    reach = [0] * (1 << n)
    reach[1] = 1
    for mask in range(1, 1 << n, 2):
        ends = reach[mask]
        while ends:
            low = ends & -ends
            v = low.bit_length() - 1
            ends ^= low
            fresh = masks[v] & ~mask
            while fresh:
                bit = fresh & -fresh
                fresh ^= bit
                reach[mask | bit] |= bit
    return bool(reach[full] & masks[0])


def exact_mu(g: Graph) -> int:
    """
    0 if G is Hamiltonian, else the minimum number of paths covering V(G),
    by a DP over (visited set, last vertex) where opening a new path costs 1.
    """
    _check_size(g)
    n = g.n
    if n == 0:
        return 0
    if is_hamiltonian(g):
        return 0

    unreachable = n + 1
    adjacent = np.zeros((n, n), dtype=bool)
    for v, row in enumerate(g.adjacency):
        adjacent[v, list(row)] = True
    bits = 1 << np.arange(n, dtype=np.int64)

    best = np.full((1 << n, n), unreachable, dtype=np.int16)
    best[bits, np.arange(n)] = 1
    for mask in range(1, 1 << n):
        row = best[mask]
        fewest = row.min()
        if fewest >= unreachable:
            continue
        # Continue the current path along an edge, or open a new one.
        along = np.where(adjacent, row[:, None], unreachable).min(axis=0)
        cost = np.minimum(along, fewest + 1)
        free = (mask & bits) == 0
        targets = mask | bits[free]
        vertices = np.flatnonzero(free)
        best[targets, vertices] = np.minimum(best[targets, vertices], cost[free])
    return int(best[(1 << n) - 1].min())


def mu_gap(
    g: Graph,
    cover: PathCover,
    c: float,
    *,
    long_cycle: int | None = None,
    epsilon: float = 0.5,
) -> dict[str, Any]:
    """Cover size against the lower bound and the ``c e^-c n / 2`` target."""
    n = g.n
    bound = lower_bound_mu(g)
    target = 0.5 * c * math.exp(-c) * n
    report: dict[str, Any] = {
        "cover_size": cover.size,
        "lower_bound": bound,
        "target": target,
        "predicted_lower": (0.5 * c + 1) * math.exp(-c) * n,
        "ratio_to_lower_bound": cover.size / max(1, bound),
        "ratio_to_target": cover.size / target if target > 0 else None,
    }
    if long_cycle is not None:
        floor = (1 - 0.5 * epsilon * c * math.exp(-c)) * n
        report["long_cycle"] = long_cycle
        report["long_cycle_floor"] = floor
        report["long_cycle_ok"] = long_cycle >= floor
    return report
