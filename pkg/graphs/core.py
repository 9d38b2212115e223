"""
Immutable undirected simple graphs over the labels ``0..n-1``.

Also houses seeded ``G(n, c/n)`` sampling and the traversal primitives the
classification, reduction and rotation stages are built on: degrees, bounded
BFS, k-core peeling, connected components and induced subgraphs.
"""

from __future__ import annotations

import logging
import math
from bisect import bisect_left
from collections import deque
from collections.abc import Collection, Iterable, Iterator
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from graphs.rng import Stream, generator, validate_seed

logger = logging.getLogger(__name__)


class GraphParameterError(ValueError):
    """Raised for invalid graph construction or sampling parameters."""


@dataclass(frozen=True, eq=False)
class Graph:
    """
    Adjacency-list graph. ``adjacency[v]`` is the sorted tuple of v's
    neighbours; the structure is symmetric and has no loops or multi-edges.

    Build instances with :meth:`from_edges` (validating) or :func:`sample_gnp`;
    the raw constructor trusts its input.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def empty(cls, n: int) -> Graph:
        if n < 0:
            raise GraphParameterError(f"Vertex count must be non-negative, got {n}")
        return cls(n=n, adjacency=((),) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        """
        Build a graph from an edge iterable. Duplicate edges (in either
        orientation) collapse; loops and out-of-range labels are rejected.
        """
        if n < 0:
            raise GraphParameterError(f"Vertex count must be non-negative, got {n}")
        pairs = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if pairs.size and (pairs.min() < 0 or pairs.max() >= n):
            raise GraphParameterError(f"Edge endpoint outside 0..{n - 1}")
        if np.any(pairs[:, 0] == pairs[:, 1]):
            loop = int(pairs[pairs[:, 0] == pairs[:, 1]][0, 0])
            raise GraphParameterError(f"Self-loop at vertex {loop}")
        lo = np.minimum(pairs[:, 0], pairs[:, 1])
        hi = np.maximum(pairs[:, 0], pairs[:, 1])
        keys = np.unique(lo * max(n, 1) + hi)
        return cls._from_unique_pairs(n, keys // max(n, 1), keys % max(n, 1))

    @classmethod
    def _from_unique_pairs(cls, n: int, lo: np.ndarray, hi: np.ndarray) -> Graph:
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        targets = dst[order].tolist()
        offsets = np.concatenate(
            [[0], np.cumsum(np.bincount(src, minlength=n))]
        ).tolist()
        adjacency = tuple(
            tuple(targets[offsets[v] : offsets[v + 1]]) for v in range(n)
        )
        return cls(n=n, adjacency=adjacency)

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.fromiter((len(a) for a in self.adjacency), dtype=np.int64, count=self.n)

    @cached_property
    def m(self) -> int:
        return int(self.degrees.sum()) // 2

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self.adjacency[_check_vertex(self, v)]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.adjacency[_check_vertex(self, u)]
        i = bisect_left(row, v)
        return i < len(row) and row[i] == v

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, row in enumerate(self.adjacency):
            for v in row[bisect_left(row, u + 1) :]:
                yield u, v

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class SampleParams:
    """Parameters of ``G(n, p)`` with ``p = c / n``, plus the 64-bit seed."""

    n: int
    c: float
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphParameterError(f"n must be at least 1, got {self.n}")
        if not 0 <= self.c <= self.n:
            raise GraphParameterError(
                f"c must lie in [0, n] = [0, {self.n}], got {self.c}"
            )
        try:
            validate_seed(self.seed)
        except ValueError as exc:
            raise GraphParameterError(str(exc)) from exc

    @property
    def p(self) -> float:
        return self.c / self.n


def sample_gnp(params: SampleParams) -> Graph:
    """
    Sample ``G(n, c/n)``.

    The ``C(n, 2)`` edge slots are visited in order with geometric skips
    between retained slots, so the cost is ``O(n + m)``. The same
    ``(n, c, seed)`` always gives the same graph.
    """
    n, p = params.n, params.p
    slots = n * (n - 1) // 2
    if slots == 0 or p <= 0.0:
        return Graph.empty(n)

    if p >= 1.0:
        keys = np.arange(slots, dtype=np.int64)
    else:
        keys = _skip_sample(generator(params.seed, Stream.SAMPLING), slots, p)

    lo, hi = _slot_to_pair(keys)
    graph = Graph._from_unique_pairs(n, lo, hi)
    logger.debug("Sampled G(%d, %.4g/n): m=%d", n, params.c, graph.m)
    return graph


def _skip_sample(rng: np.random.Generator, slots: int, p: float) -> np.ndarray:
    """Indices of retained slots in ``[0, slots)``, each kept with probability p."""
    expected = slots * p
    batch = int(expected + 6.0 * math.sqrt(expected * (1.0 - p)) + 64)
    position = -1
    chunks = []
    while True:
        gaps = rng.geometric(p, size=batch)
        indices = position + np.cumsum(gaps, dtype=np.int64)
        chunks.append(indices[indices < slots])
        if indices[-1] >= slots:
            break
        position = int(indices[-1])
        batch = max(64, batch // 4)
    return np.concatenate(chunks)


def _slot_to_pair(keys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Map slot ``k = v(v-1)/2 + w`` (``w < v``) back to the pair ``(w, v)``."""
    v = ((1.0 + np.sqrt(1.0 + 8.0 * keys.astype(np.float64))) // 2).astype(np.int64)
    # Float rounding can be off by one for very large k.
    v[v * (v - 1) // 2 > keys] -= 1
    v[(v + 1) * v // 2 <= keys] += 1
    w = keys - v * (v - 1) // 2
    return w, v


def _check_vertex(g: Graph, v: int) -> int:
    if not 0 <= v < g.n:
        raise IndexError(f"Vertex {v} out of range for graph on {g.n} vertices")
    return v


def degree(g: Graph, v: int) -> int:
    return len(g.adjacency[_check_vertex(g, v)])


def degree_into(g: Graph, v: int, s: Collection[int]) -> int:
    """Number of neighbours of ``v`` that lie in ``s``."""
    return sum(1 for u in g.adjacency[_check_vertex(g, v)] if u in s)


def bounded_bfs(g: Graph, v: int, radius: int) -> dict[int, int]:
    """Exact distances from ``v`` to every vertex within ``radius`` (``v`` maps to 0)."""
    _check_vertex(g, v)
    if radius < 0:
        raise ValueError(f"radius must be non-negative, got {radius}")
    dist = {v: 0}
    frontier = [v]
    for d in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for y in g.adjacency[x]:
                if y not in dist:
                    dist[y] = d
                    nxt.append(y)
        if not nxt:
            break
        frontier = nxt
    return dist


def k_core(g: Graph, k: int) -> frozenset[int]:
    """The maximal vertex set whose members all have ``>= k`` neighbours inside it."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    deg = g.degrees.tolist()
    removed = bytearray(g.n)
    queue = deque(v for v in range(g.n) if deg[v] < k)
    while queue:
        v = queue.popleft()
        if removed[v]:
            continue
        removed[v] = 1
        for u in g.adjacency[v]:
            if not removed[u]:
                deg[u] -= 1
                if deg[u] == k - 1:
                    queue.append(u)
    return frozenset(v for v in range(g.n) if not removed[v])


def components(g: Graph) -> list[frozenset[int]]:
    """
    Connected components, largest first; ties broken by the smallest label
    each component contains.
    """
    seen = bytearray(g.n)
    found = []
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = 1
        members = [root]
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in g.adjacency[x]:
                if not seen[y]:
                    seen[y] = 1
                    members.append(y)
                    queue.append(y)
        # Roots are visited in ascending order, so ``root`` is the minimum.
        found.append((root, frozenset(members)))
    found.sort(key=lambda item: (-len(item[1]), item[0]))
    return [members for _, members in found]


def induced_subgraph(
    g: Graph, vertices: Iterable[int]
) -> tuple[Graph, tuple[int, ...]]:
    """
    Subgraph induced on ``vertices``, relabelled ``0..k-1`` in ascending
    original-label order. Returns the graph and the new-to-original label map.
    """
    to_g = tuple(sorted(set(vertices)))
    index = {v: i for i, v in enumerate(to_g)}
    # Relabelling is monotone, so filtered rows stay sorted.
    adjacency = tuple(
        tuple(index[u] for u in g.adjacency[_check_vertex(g, v)] if u in index)
        for v in to_g
    )
    return Graph(n=len(to_g), adjacency=adjacency), to_g


def neighbourhood(g: Graph, vertices: Collection[int]) -> frozenset[int]:
    """External neighbourhood ``N(U)``: vertices outside U adjacent to U."""
    found = set()
    for v in vertices:
        found.update(g.adjacency[_check_vertex(g, v)])
    return frozenset(found.difference(vertices))
