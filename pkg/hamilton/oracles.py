"""Exhaustive M-path oracles for graphs with at most 12 vertices."""

from __future__ import annotations

from graphs.matching import Matching
from hamilton.paths import Adjacency

ORACLE_LIMIT = 12


def _check_size(graph: Adjacency) -> None:
    if graph.n > ORACLE_LIMIT:
        raise ValueError(f"Exhaustive oracles are limited to {ORACLE_LIMIT} vertices, got {graph.n}")


def _steps(adj: list[int], mates: list[int], mask: int, v: int) -> int:
    """Bitset of the vertices a path on ``mask`` ending at ``v`` may step to."""
    options = adj[v] & ~mask
    mate = mates[v]
    if mate >= 0 and not (mask >> mate) & 1:
        return options & (1 << mate)
    allowed = 0
    while options:
        low = options & -options
        w = low.bit_length() - 1
        options ^= low
        # w's mate may only be behind it if it is the vertex just left.
        w_mate = mates[w]
        if w_mate < 0 or w_mate == v or not (mask >> w_mate) & 1:
            allowed |= low
    return allowed


def longest_m_path(graph: Adjacency, m: Matching) -> tuple[int, ...]:
    """
    A longest M-path of ``graph``, by a DP over (visited set, end vertex).
    Empty if no single vertex or M edge forms one.
    """
    _check_size(graph)
    n = graph.n
    adj = [sum(1 << int(w) for w in graph.neighbours(v)) for v in range(n)]
    mates = [-1 if m.mate(v) is None else int(m.mate(v)) for v in range(n)]
    reach = [0] * (1 << n)
    for v in range(n):
        reach[1 << v] |= 1 << v

    best_mask, best_end, best_size = 0, -1, 0
    for mask in range(1, 1 << n):
        ends = reach[mask]
        size = mask.bit_count()
        while ends:
            low = ends & -ends
            v = low.bit_length() - 1
            ends ^= low
            mate = mates[v]
            if size > best_size and (mate < 0 or (mask >> mate) & 1):
                best_mask, best_end, best_size = mask, v, size
            steps = _steps(adj, mates, mask, v)
            while steps:
                bit = steps & -steps
                steps ^= bit
                reach[mask | bit] |= bit

    if best_end < 0:
        return ()
    path = [best_end]
    mask, v = best_mask, best_end
    while mask != 1 << v:
        prev_mask = mask ^ (1 << v)
        ends = reach[prev_mask]
        u = next(
            u
            for u in range(n)
            if (ends >> u) & 1 and (_steps(adj, mates, prev_mask, u) >> v) & 1
        )
        path.append(u)
        mask, v = prev_mask, u
    path.reverse()
    return tuple(path)


def longest_m_path_length(graph: Adjacency, m: Matching) -> int:
    """Vertex count of a longest M-path (0 if there is none)."""
    return len(longest_m_path(graph, m))


def is_m_hamiltonian(graph: Adjacency, m: Matching) -> bool:
    """
    Whether ``graph`` has a Hamilton cycle through every M edge, by a DP over
    (visited set, end vertex) starting at vertex 0.
    """
    _check_size(graph)
    n = graph.n
    if n < 3:
        return False
    for u, v in m.edges:
        if not graph.has_edge(u, v):
            return False

    full = (1 << n) - 1
    start = 0
    reach = [0] * (1 << n)
    reach[1 << start] = 1 << start
    for mask in range(1 << n):
        ends = reach[mask]
        while ends:
            low = ends & -ends
            v = low.bit_length() - 1
            ends ^= low
            mate = m.mate(v)
            pending = mate is not None and not (mask >> mate) & 1
            for w in graph.neighbours(v):
                if (mask >> w) & 1 or (pending and w != mate):
                    continue
                nxt = mask | (1 << w)
                w_mate = m.mate(w)
                if w_mate is not None and (mask >> w_mate) & 1 and w_mate != v:
                    # w's mate is already used; only allowed as the closing step.
                    if not (w_mate == start and nxt == full):
                        continue
                reach[nxt] |= 1 << w
    ends = reach[full]
    for v in range(n):
        if (ends >> v) & 1 and graph.has_edge(v, start):
            return True
    return False
