"""
From a Hamilton M-cycle of G* to a path cover of G.

Each M edge ``{u, v}`` on the cycle is replaced by the 3-path
``(u, u', v', v)`` through the pendants, giving a cycle C' of G + M'.
Deleting the M' edges splits C' into ``|M'|`` paths of G (or one path when
M' is empty); every vertex of G off C' becomes a path of length 0.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from graphs.checks import Verdict
from graphs.core import Graph
from hamilton.engine import verify_m_cycle
from reduction.reducer import Reduction

logger = logging.getLogger(__name__)


class CoverContractError(ValueError):
    """Raised when extraction is given a cycle or path that fails verification."""


@dataclass(frozen=True)
class PathCover:
    paths: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.paths)

    def __len__(self) -> int:
        return len(self.paths)


def _lift(r: Reduction, walk: Sequence[int]) -> list[int]:
    """Map a G* walk to g labels, expanding each M edge through the pendants."""
    lifted: list[int] = []
    for i, a in enumerate(walk):
        v = r.to_g[a]
        if lifted and r.m.contains_edge(walk[i - 1], a):
            lifted.extend((r.partner[lifted[-1]], r.partner[v]))
        lifted.append(v)
    return lifted


def lift_cycle(r: Reduction, cycle: Sequence[int]) -> list[int]:
    """The long cycle C' of G + M' (in g labels), as a cyclic sequence."""
    lifted = _lift(r, cycle)
    first, last = cycle[0], cycle[-1]
    if len(cycle) > 2 and r.m.contains_edge(last, first):
        lifted.extend((r.partner[r.to_g[last]], r.partner[r.to_g[first]]))
    return lifted


def _cut_at_m_prime(r: Reduction, sequence: list[int]) -> list[tuple[int, ...]]:
    pieces = []
    current = [sequence[0]]
    for a, b in zip(sequence, sequence[1:]):
        if r.m_prime.contains_edge(a, b):
            pieces.append(tuple(current))
            current = []
        current.append(b)
    pieces.append(tuple(current))
    return pieces


def _with_singletons(g: Graph, paths: list[tuple[int, ...]]) -> PathCover:
    covered = {v for path in paths for v in path}
    paths.extend((v,) for v in range(g.n) if v not in covered)
    return PathCover(paths=tuple(paths))


def extract_cover(g: Graph, r: Reduction, cycle: Sequence[int]) -> PathCover:
    verdict = verify_m_cycle(cycle, r.gstar, r.m)
    if not verdict.passed:
        raise CoverContractError(f"Cycle is not a Hamilton M-cycle of G*: {verdict.violations}")

    long_cycle = lift_cycle(r, cycle)
    size = len(long_cycle)
    closing = list(zip(long_cycle, long_cycle[1:] + long_cycle[:1]))
    if len(r.m_prime):
        # Start right after an M' edge so the seam is one of the cuts.
        k = next(k for k, (a, b) in enumerate(closing) if r.m_prime.contains_edge(a, b))
        paths = _cut_at_m_prime(r, long_cycle[k + 1 :] + long_cycle[: k + 1])
    else:
        # Open the cycle at its lowest-labelled edge.
        k = min(range(size), key=lambda j: (min(closing[j]), max(closing[j])))
        paths = [tuple(long_cycle[k + 1 :] + long_cycle[: k + 1])]

    cover = _with_singletons(g, paths)
    logger.info(
        "Cover: %d paths (%d from C', %d singletons)",
        cover.size,
        len(paths),
        cover.size - len(paths),
    )
    return cover


def extract_path_cover(g: Graph, r: Reduction, path: Sequence[int]) -> PathCover:
    """The same translation applied to an M-path of G* instead of a cycle."""
    if not path:
        return _with_singletons(g, [])
    problems = _check_m_path(r, path)
    if problems:
        raise CoverContractError(f"Not an M-path of G*: {problems}")
    paths = _cut_at_m_prime(r, _lift(r, path))
    return _with_singletons(g, paths)


def _check_m_path(r: Reduction, path: Sequence[int]) -> list[str]:
    problems = []
    if len(set(path)) != len(path):
        problems.append("repeated vertex")
    for a, b in zip(path, path[1:]):
        if not r.gstar.has_edge(a, b):
            problems.append(f"({a}, {b}) is not an edge of G*")
    position = {v: i for i, v in enumerate(path)}
    for u, v in r.m.edges:
        if (u in position) != (v in position):
            problems.append(f"M edge ({u}, {v}) is cut by the path")
        elif u in position and abs(position[u] - position[v]) != 1:
            problems.append(f"M edge ({u}, {v}) is not on the path")
    return problems


def verify_cover(g: Graph, cover: PathCover) -> Verdict:
    verdict = Verdict()
    seen: dict[int, int] = {}
    for k, path in enumerate(cover.paths):
        if not path:
            verdict.fail(f"path {k} is empty")
        for v in path:
            if not 0 <= v < g.n:
                verdict.fail(f"path {k}: vertex {v} outside 0..{g.n - 1}")
                continue
            if v in seen:
                verdict.fail(f"paths {seen[v]} and {k} share vertex {v}")
            seen[v] = k
        for a, b in zip(path, path[1:]):
            if 0 <= a < g.n and 0 <= b < g.n and not g.has_edge(a, b):
                verdict.fail(f"path {k}: ({a}, {b}) is not an edge")
    missing = g.n - len(seen)
    if missing > 0:
        verdict.fail(f"{missing} vertices are not covered")
    return verdict


def format_cover(cover: PathCover) -> str:
    """One path per line, labels separated by single spaces."""
    return "".join(" ".join(map(str, path)) + "\n" for path in cover.paths)


def parse_cover(text: str) -> PathCover:
    paths = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        try:
            paths.append(tuple(int(token) for token in line.split()))
        except ValueError as exc:
            raise ValueError(f"Line {lineno}: expected integers, got '{line}'") from exc
        if not paths[-1]:
            raise ValueError(f"Line {lineno}: empty path")
    return PathCover(paths=tuple(paths))


def write_cover(cover: PathCover, path: Path | str) -> None:
    Path(path).write_text(format_cover(cover), encoding="ascii")
