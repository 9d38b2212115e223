"""
Tests for the double END search and booster selection.
"""

from hypothesis import given, settings

from graphs.core import Graph
from graphs.matching import Matching
from hamilton.boosters import ClosingEdge, double_end_search, find_booster
from hamilton.oracles import is_m_hamiltonian, longest_m_path, longest_m_path_length
from hamilton.paths import MPath
from tests.conftest import complete_graph, cycle_graph, path_graph
from tests.strategies import booster_instances


def test_missing_cycle_edge_is_a_booster():
    p = MPath.of(range(5))

    assert find_booster(p, path_graph(5), cycle_graph(5), Matching()) == (0, 4)


def test_no_booster_when_g_star_adds_nothing():
    assert find_booster(MPath.of(range(5)), path_graph(5), path_graph(5), Matching()) is None


def test_short_paths_have_no_closing_edge():
    assert find_booster(MPath.of((0, 1)), path_graph(2), complete_graph(2), Matching()) is None


def test_closing_edge_path_runs_between_its_ends():
    closing = double_end_search(
        MPath.of(range(6)),
        complete_graph(6),
        Matching(),
        lambda u: complete_graph(6).neighbours(u),
    )

    assert closing is not None
    assert closing.path.vertices[0] == closing.u
    assert closing.path.vertices[-1] == closing.w
    assert sorted(closing.path.vertices) == list(range(6))


def test_scans_end_vertices_in_ascending_order():
    # Every END vertex of K6 has candidates; the first scanned is 1.
    closing = double_end_search(
        MPath.of(range(6)),
        complete_graph(6),
        Matching(),
        lambda u: [0, 5] if u != 5 else [0],
    )

    assert closing.u == 1


def test_candidates_off_the_path_are_ignored():
    closing = double_end_search(
        MPath.of((0, 1, 2)),
        path_graph(5),
        Matching(),
        lambda u: [3, 4],
    )

    assert closing is None


def test_closing_edge_is_canonical():
    assert ClosingEdge(u=4, w=1, path=MPath.of((4, 1))).edge == (1, 4)


def _with_edge(g, edge):
    return Graph.from_edges(g.n, [*g.edges(), edge])


# Connected, M inside it; vertex 0 hangs off its mate 3 and vertex 4 off 1 and 5.
SIX_VERTEX_GAMMA = Graph.from_edges(
    6, [(0, 3), (1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 5), (3, 5), (4, 5)]
)
SIX_VERTEX_M = Matching.from_pairs([(0, 3), (1, 5)])


def test_gamma_closing_its_own_cycle_needs_no_booster():
    assert find_booster(MPath.of(range(5)), cycle_graph(5), complete_graph(5), Matching()) is None


def test_shorter_maximal_path_is_not_boosted_past_a_longer_one():
    gstar = _with_edge(SIX_VERTEX_GAMMA, (0, 2))
    longest = longest_m_path(SIX_VERTEX_GAMMA, SIX_VERTEX_M)

    assert len(longest) == 6
    assert find_booster(MPath.of(longest), SIX_VERTEX_GAMMA, gstar, SIX_VERTEX_M) is None
    # (0, 2) neither closes an M-cycle nor lengthens anything.
    assert not is_m_hamiltonian(gstar, SIX_VERTEX_M)


@settings(max_examples=60, deadline=None)
@given(booster_instances())
def test_booster_from_a_longest_path_is_sound(instance):
    gamma, m, gstar = instance
    longest = longest_m_path(gamma, m)
    if len(longest) < 3:
        return

    edge = find_booster(MPath.of(longest), gamma, gstar, m)

    if edge is not None:
        assert not gamma.has_edge(*edge)
        assert gstar.has_edge(*edge)
        boosted = _with_edge(gamma, edge)
        assert is_m_hamiltonian(boosted, m) or longest_m_path_length(boosted, m) > len(longest)
