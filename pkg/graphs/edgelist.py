"""
Plain-text edge-list format.

First line ``"n m"``, then one ``"u v"`` line per edge with ``u < v``, sorted
lexicographically, every line newline-terminated. Writing then reading a
graph reproduces it exactly, and a file read then written is byte-identical.
"""

from __future__ import annotations

from pathlib import Path

from graphs.core import Graph


class EdgeListFormatError(ValueError):
    """Raised when edge-list text does not follow the canonical format."""


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    lines = text.splitlines()
    if not lines:
        raise EdgeListFormatError("Empty edge list: missing 'n m' header")

    n, m = _parse_pair(lines[0], 1)
    body = lines[1:]
    if len(body) != m:
        raise EdgeListFormatError(f"Header declares {m} edges but {len(body)} follow")

    edges = []
    previous = None
    for lineno, line in enumerate(body, start=2):
        u, v = _parse_pair(line, lineno)
        if not u < v:
            raise EdgeListFormatError(f"Line {lineno}: expected u < v, got '{line}'")
        if v >= n:
            raise EdgeListFormatError(f"Line {lineno}: vertex {v} outside 0..{n - 1}")
        if previous is not None and (u, v) <= previous:
            raise EdgeListFormatError(
                f"Line {lineno}: edges must be strictly increasing, got '{line}'"
            )
        previous = (u, v)
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def _parse_pair(line: str, lineno: int) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise EdgeListFormatError(f"Line {lineno}: expected two integers, got '{line}'")
    try:
        a, b = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise EdgeListFormatError(
            f"Line {lineno}: expected two integers, got '{line}'"
        ) from exc
    if a < 0 or b < 0:
        raise EdgeListFormatError(f"Line {lineno}: negative value in '{line}'")
    return a, b


def read_edge_list(path: Path | str) -> Graph:
    raw = Path(path).read_bytes()
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError as exc:
        raise EdgeListFormatError(
            f"{path}: byte {exc.start} is not ASCII; edge lists hold only digits and spaces"
        ) from exc
    return parse_edge_list(text)


def write_edge_list(g: Graph, path: Path | str) -> None:
    Path(path).write_text(format_edge_list(g), encoding="ascii")
