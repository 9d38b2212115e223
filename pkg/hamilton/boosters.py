"""
Booster search.

If ``P`` is a maximal M-path fixed at ``v0``, then for every ``u`` in
END(P, v0) and every ``w`` in END(P_u, u), the edge ``{u, w}`` closes a cycle
on V(P). When ``P`` is a longest M-path of a connected Gamma that contains
M and that edge is missing from Gamma, it is a booster: adding it either
closes a Hamilton M-cycle or, after re-opening the cycle through an outgoing
edge, yields a longer M-path.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass

from graphs.core import Graph
from graphs.matching import Matching
from hamilton.paths import Adjacency, MPath
from hamilton.rotation import DEFAULT_MAX_STATES, RotationState, compute_end_set

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClosingEdge:
    """``path`` runs from ``u`` to ``w``; adding ``{w, u}`` closes it into a cycle."""

    u: int
    w: int
    path: MPath

    @property
    def edge(self) -> tuple[int, int]:
        return min(self.u, self.w), max(self.u, self.w)


def double_end_search(
    p: MPath,
    gamma: Adjacency,
    m: Matching,
    candidates: Callable[[int], Iterable[int]],
    *,
    n: int | None = None,
    max_states: int | None = DEFAULT_MAX_STATES,
    outer: RotationState | None = None,
) -> ClosingEdge | None:
    """
    Scan ``u`` in END(P, v0) in ascending order; for each, search END(P_u, u)
    for the first vertex discovered among ``candidates(u)``.
    """
    if len(p) < 3:
        return None
    if outer is None:
        outer = compute_end_set(p, gamma, m, n=n, max_states=max_states)
    on_path = set(p.vertices)
    for u in sorted(outer.end_set):
        wanted = {w for w in candidates(u) if w != u and w in on_path}
        if not wanted:
            continue
        inner = compute_end_set(
            outer.path_to(u).reversed(),
            gamma,
            m,
            n=n,
            max_states=max_states,
            stop=wanted.__contains__,
        )
        if inner.found is not None:
            return ClosingEdge(u=u, w=inner.found, path=inner.path_to(inner.found))
    return None


def find_booster(
    p: MPath,
    gamma: Adjacency,
    gstar: Graph,
    m: Matching,
    *,
    max_states: int | None = DEFAULT_MAX_STATES,
) -> tuple[int, int] | None:
    """
    First edge of G* \\ Gamma joining END(P, v0) to some END(P_u, u).

    The edge is a booster when ``P`` is a longest M-path of a connected
    Gamma containing M. None when Gamma already closes a cycle on V(P).
    """
    free = double_end_search(p, gamma, m, gamma.neighbours, n=gstar.n, max_states=max_states)
    if free is not None:
        logger.debug("Gamma already closes %s on %d vertices", free.edge, len(p))
        return None
    closing = double_end_search(
        p,
        gamma,
        m,
        lambda u: (w for w in gstar.neighbours(u) if not gamma.has_edge(u, w)),
        n=gstar.n,
        max_states=max_states,
    )
    if closing is None:
        return None
    logger.debug("Booster %s closes a cycle on %d vertices", closing.edge, len(p))
    return closing.edge
