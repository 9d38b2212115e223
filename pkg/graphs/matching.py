"""Matchings: sets of pairwise vertex-disjoint edges (the M and M' of a reduction)."""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Matching:
    """
    Vertex-disjoint edges, each stored as ``(min, max)`` in the order given.

    >>> m = Matching.from_pairs([(4, 0), (2, 3)])
    >>> m.mate(0), m.mate(3), m.mate(1)
    (4, 2, None)
    """

    edges: tuple[tuple[int, int], ...] = ()
    _mates: dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        mates: dict[int, int] = {}
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"Matching edge ({u}, {v}) is a loop")
            if u in mates or v in mates:
                raise ValueError(f"Matching edges overlap at ({u}, {v})")
            mates[u] = v
            mates[v] = u
        object.__setattr__(self, "_mates", mates)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> Matching:
        return cls(edges=tuple((min(u, v), max(u, v)) for u, v in pairs))

    def mate(self, v: int) -> int | None:
        return self._mates.get(v)

    def covers(self, v: int) -> bool:
        return v in self._mates

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self._mates)

    def contains_edge(self, u: int, v: int) -> bool:
        return self._mates.get(u) == v

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.edges)
