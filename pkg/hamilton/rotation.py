"""
END-set search and maximal M-path growth.

``compute_end_set`` runs a BFS over the rotation graph of a path: states are
endpoints, and each one keeps only ``(parent endpoint, pivot)``. Any path
``P_u`` is rebuilt on demand by replaying the pivots from the root path, so
memory stays linear in the number of endpoints reached.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from graphs.matching import Matching
from hamilton.paths import Adjacency, MPath, is_m_path

logger = logging.getLogger(__name__)

DEFAULT_MAX_STATES = 5000


@dataclass
class RotationState:
    """
    Endpoints reachable from ``root`` by M-respecting rotations that keep
    ``root[0]`` fixed. ``records[u]`` is ``(parent, pivot)``, or None for
    the root's own endpoint. ``end_set`` includes that endpoint.
    """

    root: tuple[int, ...]
    n: int
    records: dict[int, tuple[int, int] | None] = field(default_factory=dict)
    order: list[int] = field(default_factory=list)
    truncated: bool = False
    found: int | None = None

    @property
    def fixed_end(self) -> int:
        return self.root[0]

    @property
    def end_set(self) -> frozenset[int]:
        return frozenset(self.records)

    def replay(self, u: int) -> tuple[np.ndarray, np.ndarray]:
        """``P_u`` and its position array (``-1`` for vertices off the path)."""
        if u not in self.records:
            raise KeyError(f"{u} is not a reachable endpoint")
        pivots = []
        x = u
        while (record := self.records[x]) is not None:
            x, pivot = record
            pivots.append(pivot)
        path = np.asarray(self.root, dtype=np.int64).copy()
        position = np.full(self.n, -1, dtype=np.int64)
        position[path] = np.arange(len(path))
        for pivot in reversed(pivots):
            i = int(position[pivot])
            tail = path[i + 1 :][::-1].copy()
            path[i + 1 :] = tail
            position[tail] = np.arange(i + 1, len(path))
        return path, position

    def path_array(self, u: int) -> np.ndarray:
        return self.replay(u)[0]

    def path_to(self, u: int) -> MPath:
        return MPath(tuple(self.path_array(u).tolist()))


def compute_end_set(
    p: MPath,
    gamma: Adjacency,
    m: Matching,
    *,
    n: int | None = None,
    max_states: int | None = DEFAULT_MAX_STATES,
    stop: Callable[[int], bool] | None = None,
    check_rotations: bool = False,
) -> RotationState:
    """
    BFS over rotations of ``p`` with ``p[0]`` fixed.

    Stops early (setting ``found``) at the first endpoint accepted by
    ``stop``, and marks the state truncated once ``max_states`` endpoints are
    known. ``n`` is the size of the label space (defaults to ``gamma.n``).
    """
    size = n if n is not None else gamma.n
    state = RotationState(root=p.vertices, n=size)
    if len(p) < 2:
        return state

    start = p.endpoint
    state.records[start] = None
    state.order.append(start)
    if stop is not None and stop(start):
        state.found = start
        return state

    last = len(p) - 1
    queue = deque([start])
    while queue:
        e = queue.popleft()
        path, position = state.replay(e)
        if check_rotations and not is_m_path(path.tolist(), gamma, m):
            raise AssertionError(f"Rotation to endpoint {e} broke the M-path property")
        for x in gamma.neighbours(e):
            i = int(position[x])
            if i < 0 or i >= last - 1 or m.covers(x):
                continue
            new_end = int(path[i + 1])
            if new_end in state.records:
                continue
            state.records[new_end] = (e, x)
            state.order.append(new_end)
            if stop is not None and stop(new_end):
                state.found = new_end
                return state
            if max_states is not None and len(state.records) >= max_states:
                state.truncated = True
                logger.debug("END search from %d truncated at %d states", p.fixed_end, max_states)
                return state
            queue.append(new_end)
    return state


def _can_enter(w: int, on_path: set[int], gamma: Adjacency, m: Matching) -> bool:
    if w in on_path:
        return False
    mate = m.mate(w)
    return mate is None or (mate not in on_path and gamma.has_edge(w, mate))


def _greedy_extend(
    path: list[int], on_path: set[int], gamma: Adjacency, m: Matching
) -> bool:
    """Append off-path neighbours of the free end (with their M mate) while possible."""
    grew = False
    while True:
        u = path[-1]
        for w in gamma.neighbours(u):
            if not _can_enter(w, on_path, gamma, m):
                continue
            mate = m.mate(w)
            path.append(w)
            on_path.add(w)
            if mate is not None:
                path.append(mate)
                on_path.add(mate)
            grew = True
            break
        else:
            return grew


def _extendable(
    on_path: set[int], gamma: Adjacency, m: Matching
) -> Callable[[int], bool]:
    def accept(u: int) -> bool:
        return any(_can_enter(w, on_path, gamma, m) for w in gamma.neighbours(u))

    return accept


def grow_maximal(
    p: MPath,
    gamma: Adjacency,
    m: Matching,
    *,
    n: int | None = None,
    max_states: int | None = DEFAULT_MAX_STATES,
    check_rotations: bool = False,
) -> tuple[MPath, RotationState]:
    """
    :func:`extend_maximal`, also returning the final END search of the
    returned path (which found no extension).
    """
    path = list(p.vertices)
    on_path = set(path)
    accept = _extendable(on_path, gamma, m)
    stuck_ends = 0
    while True:
        if _greedy_extend(path, on_path, gamma, m):
            stuck_ends = 0
        state = compute_end_set(
            MPath(tuple(path)),
            gamma,
            m,
            n=n,
            max_states=max_states,
            stop=accept,
            check_rotations=check_rotations,
        )
        if state.found is not None:
            path = list(state.path_to(state.found).vertices)
            stuck_ends = 0
            continue
        stuck_ends += 1
        if stuck_ends == 2 or len(path) < 2:
            return MPath(tuple(path)), state
        path.reverse()


def extend_maximal(
    p: MPath,
    gamma: Adjacency,
    m: Matching,
    *,
    n: int | None = None,
    max_states: int | None = DEFAULT_MAX_STATES,
) -> MPath:
    """
    Grow ``p`` until neither end, nor any endpoint reachable by rotations,
    has a usable neighbour off the path. A vertex covered by M is appended
    together with its mate; one whose mate is already on the path is skipped.
    """
    return grow_maximal(p, gamma, m, n=n, max_states=max_states)[0]


def end_set_neighbourhood_closed(
    state: RotationState, gamma: Adjacency, m: Matching
) -> bool:
    """
    For a maximal path P and its complete END set: every Gamma-neighbour of
    END that is outside END and V(M) is next to some END vertex on P.
    """
    path = state.root
    position = {v: i for i, v in enumerate(path)}
    ends = state.end_set
    beside = set()
    for u in ends:
        i = position[u]
        if i > 0:
            beside.add(path[i - 1])
        if i + 1 < len(path):
            beside.add(path[i + 1])
    for u in ends:
        for w in gamma.neighbours(u):
            if w in ends or m.covers(w):
                continue
            if w not in beside:
                return False
    return True
