"""
Hamilton M-cycle construction by rotation-extension with booster absorption.

Starting from Gamma0, the engine keeps a working graph and a current M-path:

1. grow the path to a maximal one (greedy extension plus rotations);
2. if the working graph closes a cycle on the path's vertices that is
   spanning, or that has an outgoing working edge, use it without spending
   anything; when G* is small enough for the exhaustive oracle, also switch
   to a longest M-path of the working graph if it beats the current one;
3. otherwise, if some END vertex has a G*-edge to a vertex off the path, add
   that edge (a booster) and go back to 1;
4. otherwise find an edge closing a cycle on the path's vertices through the
   double END search, adding it to the working graph if it is not there yet;
5. a spanning cycle is the answer; anything shorter is re-opened through an
   outgoing edge at a non-M incidence, giving a strictly longer path.

The recorded path length never decreases and at most ``budget`` boosters are
added.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

from django.db import models

from expanders.gamma import Gamma
from graphs.checks import Verdict
from graphs.core import Graph
from graphs.matching import Matching
from hamilton.boosters import double_end_search
from hamilton.oracles import ORACLE_LIMIT, longest_m_path
from hamilton.paths import Adjacency, MPath, WorkingGraph
from hamilton.rotation import DEFAULT_MAX_STATES, RotationState, grow_maximal

logger = logging.getLogger(__name__)


class FailureReason(models.TextChoices):
    TOO_SMALL = "TOO_SMALL", "Fewer than three vertices"
    NO_BOOSTER = "NO_BOOSTER", "No booster found"
    BUDGET = "BUDGET", "Booster budget exhausted"
    STUCK = "STUCK", "Cycle has no outgoing edge in G*"


@dataclass(frozen=True)
class HamiltonSuccess:
    cycle: tuple[int, ...]
    boosters: tuple[tuple[int, int], ...] = ()
    path_lengths: tuple[int, ...] = field(default=(), repr=False)

    success = True

    def to_dict(self) -> dict[str, Any]:
        return {"success": True, "boosters": len(self.boosters), "length": len(self.cycle)}


@dataclass(frozen=True)
class HamiltonFailure:
    reason: FailureReason
    longest_path: tuple[int, ...] = ()
    boosters: tuple[tuple[int, int], ...] = ()
    path_lengths: tuple[int, ...] = field(default=(), repr=False)
    detail: str = ""

    success = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "success": False,
            "reason": str(self.reason),
            "boosters": len(self.boosters),
            "longest_path": len(self.longest_path),
            "detail": self.detail,
        }


def verify_m_cycle(cycle: Sequence[int], gstar: Graph, m: Matching) -> Verdict:
    verdict = Verdict()
    n = gstar.n
    if len(cycle) < 3:
        verdict.fail(f"cycle has {len(cycle)} vertices; need at least 3")
    if sorted(cycle) != list(range(n)):
        missing = set(range(n)).difference(cycle)
        if missing:
            verdict.fail(f"not spanning: {len(missing)} vertices missing, e.g. {sorted(missing)[:5]}")
        if len(set(cycle)) != len(cycle):
            verdict.fail("a vertex is visited twice")
        foreign = [v for v in cycle if not 0 <= v < n]
        if foreign:
            verdict.fail(f"labels outside 0..{n - 1}: {foreign[:5]}")
        return verdict

    for a, b in zip(cycle, [*cycle[1:], *cycle[:1]]):
        if not gstar.has_edge(a, b):
            verdict.fail(f"({a}, {b}) is not an edge of G*")
    position = {v: i for i, v in enumerate(cycle)}
    for u, v in m.edges:
        gap = abs(position[u] - position[v])
        if gap not in (1, len(cycle) - 1):
            verdict.fail(f"M edge ({u}, {v}) is not on the cycle")
    return verdict


def _seed_path(work: WorkingGraph, m: Matching) -> list[int]:
    if len(m):
        return list(min(m.edges))
    for u in range(work.n):
        row = work.neighbours(u)
        if row:
            return [u, row[0]]
    return [0]


def _extension_booster(
    state: RotationState, path: Sequence[int], gstar: Graph, m: Matching
) -> tuple[int, int] | None:
    """A G*-edge from an END vertex to a vertex that can join the path."""
    on_path = set(path)
    for u in sorted(state.end_set):
        for w in gstar.neighbours(u):
            if w in on_path:
                continue
            mate = m.mate(w)
            if mate is None or mate not in on_path:
                return u, w
    return None


def _longer_free_path(work: WorkingGraph, m: Matching, path: Sequence[int]) -> list[int] | None:
    """A longest M-path of ``work`` when it beats ``path``; small graphs only."""
    if work.n > ORACLE_LIMIT:
        return None
    longest = longest_m_path(work, m)
    return list(longest) if len(longest) > len(path) else None


def _outgoing(cycle: Sequence[int], graph: Adjacency) -> tuple[int, int] | None:
    on_cycle = set(cycle)
    for x in sorted(cycle):
        for y in graph.neighbours(x):
            if y not in on_cycle:
                return x, y
    return None


def _reopen(cycle: Sequence[int], x: int, y: int, m: Matching) -> list[int]:
    """
    Path through ``y`` then the whole cycle starting at ``x``, dropping one of
    x's cycle edges that is not in M (M is a matching, so one always exists).
    """
    size = len(cycle)
    i = cycle.index(x)
    before, after = cycle[i - 1], cycle[(i + 1) % size]
    dropped = min(z for z in (before, after) if not m.contains_edge(x, z))
    if dropped == after:
        walk = [cycle[(i - k) % size] for k in range(size)]
    else:
        walk = [cycle[(i + k) % size] for k in range(size)]
    mate = m.mate(y)
    return ([mate] if mate is not None else []) + [y] + walk


def hamilton_m_cycle(
    gstar: Graph,
    m: Matching,
    gamma0: Gamma | Graph,
    budget: int | None = None,
    *,
    max_states: int | None = DEFAULT_MAX_STATES,
    check_rotations: bool = False,
) -> HamiltonSuccess | HamiltonFailure:
    """
    Find a Hamilton cycle of G* containing every edge of M, or report why
    not. ``budget`` (default ``|V(G*)|``) caps the boosters taken from
    G* \\ Gamma0.
    """
    n = gstar.n
    budget = n if budget is None else budget
    if budget < 0:
        raise ValueError(f"budget must be non-negative, got {budget}")

    base = gamma0.graph if isinstance(gamma0, Gamma) else gamma0
    work = WorkingGraph.from_graph(base)
    for u, v in m.edges:
        work.add_edge(u, v)

    if n < 3:
        seed = _seed_path(work, m) if n else []
        return HamiltonFailure(
            reason=FailureReason.TOO_SMALL,
            longest_path=tuple(seed),
            detail=f"G* has {n} vertices",
        )

    boosters: list[tuple[int, int]] = []
    lengths: list[int] = []
    path = _seed_path(work, m)
    best: tuple[int, ...] = tuple(path)

    def failure(reason: FailureReason, detail: str = "") -> HamiltonFailure:
        logger.info(
            "Hamilton search failed (%s) after %d boosters; longest path %d of %d",
            reason,
            len(boosters),
            len(best),
            n,
        )
        return HamiltonFailure(
            reason=reason,
            longest_path=best,
            boosters=tuple(boosters),
            path_lengths=tuple(lengths),
            detail=detail,
        )

    def success(cycle: list[int]) -> HamiltonSuccess:
        verdict = verify_m_cycle(cycle, gstar, m)
        if not verdict.passed:
            raise AssertionError(f"Engine built an invalid cycle: {verdict.violations}")
        logger.info("Hamilton M-cycle found with %d boosters", len(boosters))
        return HamiltonSuccess(
            cycle=tuple(cycle),
            boosters=tuple(boosters),
            path_lengths=tuple(lengths),
        )

    def absorb(u: int, w: int) -> bool:
        if work.has_edge(u, w):
            return True
        if len(boosters) >= budget:
            return False
        work.add_edge(u, w)
        boosters.append((min(u, w), max(u, w)))
        return True

    while True:
        grown, state = grow_maximal(
            MPath(tuple(path)),
            work,
            m,
            n=n,
            max_states=max_states,
            check_rotations=check_rotations,
        )
        path = list(grown.vertices)
        lengths.append(len(path))
        if len(path) > len(best):
            best = tuple(path)
        logger.debug("Maximal M-path: %d of %d vertices", len(path), n)

        # A cycle the working graph closes on its own, reopened through one
        # of its own edges, costs nothing.
        closing = double_end_search(
            grown,
            work,
            m,
            work.neighbours,
            n=n,
            max_states=max_states,
            outer=state,
        )
        if closing is not None:
            cycle = list(closing.path.vertices)
            if len(cycle) == n:
                return success(cycle)
            exit_edge = _outgoing(cycle, work)
            if exit_edge is not None:
                path = _reopen(cycle, *exit_edge, m)
                continue

        longer = _longer_free_path(work, m, path)
        if longer is not None:
            logger.debug("Working graph holds a longer M-path: %d vertices", len(longer))
            path = longer
            continue

        extension = _extension_booster(state, path, gstar, m)
        if extension is not None:
            u, w = extension
            if not absorb(u, w):
                return failure(FailureReason.BUDGET, f"extension {extension}")
            path = list(state.path_to(u).vertices)
            continue

        if closing is None:
            closing = double_end_search(
                grown,
                work,
                m,
                gstar.neighbours,
                n=n,
                max_states=max_states,
                outer=state,
            )
        if closing is None:
            return failure(FailureReason.NO_BOOSTER)
        if not work.has_edge(closing.u, closing.w):
            regrown, _ = grow_maximal(
                closing.path,
                work,
                m,
                n=n,
                max_states=max_states,
                check_rotations=check_rotations,
            )
            if len(regrown) > len(path):
                path = list(regrown.vertices)
                continue
        if not absorb(closing.u, closing.w):
            return failure(FailureReason.BUDGET, f"closing edge {closing.edge}")

        cycle = list(closing.path.vertices)
        if len(cycle) == n:
            return success(cycle)

        exit_edge = _outgoing(cycle, work)
        if exit_edge is None:
            exit_edge = _outgoing(cycle, gstar)
            if exit_edge is None:
                return failure(FailureReason.STUCK, f"cycle on {len(cycle)} vertices")
            if not absorb(*exit_edge):
                return failure(FailureReason.BUDGET, f"outgoing edge {exit_edge}")
        path = _reopen(cycle, *exit_edge, m)
