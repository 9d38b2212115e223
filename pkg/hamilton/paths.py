"""
M-paths, the working graph and single Posa rotations.

A path is an M-path if every M edge is either an edge of the path or
disjoint from it. A rotation with fixed end ``v0`` and pivot ``v_i`` uses
the chord ``{v_i, v_l}`` to turn ``(v0 .. v_i, v_i+1 .. v_l)`` into
``(v0 .. v_i, v_l .. v_i+1)``; it is M-respecting when ``v_i`` is not
covered by M, so the deleted edge ``{v_i, v_i+1}`` is never an M edge.
"""

from __future__ import annotations

from bisect import bisect_left, insort
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Protocol

from graphs.core import Graph
from graphs.matching import Matching


class RotationConstraintError(ValueError):
    """Raised when a rotation would pivot on a vertex covered by M."""


class MissingEdgeError(ValueError):
    """Raised when a rotation chord is not an edge of the working graph."""


class Adjacency(Protocol):
    n: int

    def neighbours(self, v: int) -> Sequence[int]: ...

    def has_edge(self, u: int, v: int) -> bool: ...


class WorkingGraph:
    """
    Mutable copy of Gamma that boosters are added to. Neighbour lists stay
    sorted so every search visits them in label order.
    """

    def __init__(self, n: int, adjacency: Iterable[Iterable[int]]):
        self.n = n
        self._rows = [sorted(row) for row in adjacency]

    @classmethod
    def from_graph(cls, g: Graph) -> WorkingGraph:
        return cls(g.n, g.adjacency)

    def neighbours(self, v: int) -> list[int]:
        return self._rows[v]

    def has_edge(self, u: int, v: int) -> bool:
        row = self._rows[u]
        i = bisect_left(row, v)
        return i < len(row) and row[i] == v

    def add_edge(self, u: int, v: int) -> None:
        if u == v or self.has_edge(u, v):
            return
        insort(self._rows[u], v)
        insort(self._rows[v], u)

    @property
    def m(self) -> int:
        return sum(len(row) for row in self._rows) // 2


@dataclass(frozen=True)
class MPath:
    vertices: tuple[int, ...]

    @classmethod
    def of(cls, vertices: Iterable[int]) -> MPath:
        return cls(tuple(vertices))

    @property
    def fixed_end(self) -> int:
        return self.vertices[0]

    @property
    def endpoint(self) -> int:
        return self.vertices[-1]

    def reversed(self) -> MPath:
        return MPath(self.vertices[::-1])

    def contains_m(self, m: Matching) -> dict[tuple[int, int], bool]:
        """For each M edge: True if on the path, False if disjoint from it."""
        position = {v: i for i, v in enumerate(self.vertices)}
        status = {}
        for u, v in m.edges:
            if u in position and v in position:
                status[(u, v)] = abs(position[u] - position[v]) == 1
            else:
                status[(u, v)] = False
        return status

    def __len__(self) -> int:
        return len(self.vertices)


def is_m_path(vertices: Sequence[int], gamma: Adjacency, m: Matching) -> bool:
    if not vertices or len(set(vertices)) != len(vertices):
        return False
    for a, b in zip(vertices, vertices[1:]):
        if not gamma.has_edge(a, b):
            return False
    last = len(vertices) - 1
    for i, v in enumerate(vertices):
        mate = m.mate(v)
        if mate is None:
            continue
        if not (
            (i > 0 and vertices[i - 1] == mate) or (i < last and vertices[i + 1] == mate)
        ):
            return False
    return True


def rotate(p: MPath, pivot_index: int, gamma: Adjacency, m: Matching) -> MPath:
    """
    Rotate ``p`` at ``vertices[pivot_index]`` keeping ``vertices[0]`` fixed.
    The new endpoint is ``vertices[pivot_index + 1]``.
    """
    path = p.vertices
    last = len(path) - 1
    if not 0 <= pivot_index < last - 1:
        raise ValueError(
            f"Pivot index must lie in [0, {last - 2}] for a path of {len(path)} vertices, "
            f"got {pivot_index}"
        )
    pivot = path[pivot_index]
    if m.covers(pivot):
        raise RotationConstraintError(f"Pivot {pivot} is covered by M")
    if not gamma.has_edge(pivot, path[-1]):
        raise MissingEdgeError(f"Chord ({pivot}, {path[-1]}) is not an edge")
    return MPath(path[: pivot_index + 1] + path[: pivot_index : -1])
