"""
Pytest configuration for the test suite.

Registers the Hypothesis profiles and the small handmade graphs shared by
several test modules.
"""

import os

import pytest
from hypothesis import settings as hypothesis_settings

from classification.classifier import Classification
from graphs.core import Graph


def _is_ci() -> bool:
    """Return True when running in CI."""
    return os.environ.get("CI", "").lower() in ("true", "1", "yes")


# ---------------------------------------------------------------------------
# Hypothesis profiles
# ---------------------------------------------------------------------------
# "default": used locally; generous deadline, standard example count.
# "ci": activated when CI=true; keeps example count low to stay within
#   the PR build budget.
# ---------------------------------------------------------------------------
hypothesis_settings.register_profile(
    "default",
    deadline=400,
)
hypothesis_settings.register_profile(
    "ci",
    deadline=800,
    max_examples=10,
)

if _is_ci():
    hypothesis_settings.load_profile("ci")
else:
    hypothesis_settings.load_profile("default")


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def manual_classification(n: int, *, v0=(), v1=(), small=None, close=(), x=(), y=()) -> Classification:
    """A Classification built by hand, for reductions of graphs too small for the real thresholds."""
    v1 = frozenset(v1)
    small = v1 if small is None else frozenset(small)
    x, y = frozenset(x), frozenset(y)
    return Classification(
        v0=frozenset(v0),
        v1=v1,
        small=small,
        large=frozenset(),
        close=frozenset(close),
        x=x,
        y=y,
        bad=x | y,
        n_v1_neighbours=frozenset(),
    )


@pytest.fixture
def hexagon_with_pendants():
    """
    C6 on 0..5 plus the chord {1, 4} and pendants 6 (on 0) and 7 (on 3).

    With V1 = {6, 7} the reduction pairs 0 and 3 into M, and
    (0, 3, 2, 1, 4, 5) is a Hamilton M-cycle of G*.
    """
    edges = [(i, (i + 1) % 6) for i in range(6)] + [(1, 4), (0, 6), (3, 7)]
    g = Graph.from_edges(8, edges)
    cls = manual_classification(8, v1={6, 7})
    return g, cls


@pytest.fixture
def octagon_with_pendants():
    """C8 on 0..7 with pendants 8 (on 0) and 9 (on 4)."""
    edges = [(i, (i + 1) % 8) for i in range(8)] + [(0, 8), (4, 9)]
    g = Graph.from_edges(10, edges)
    cls = manual_classification(10, v1={8, 9})
    return g, cls
