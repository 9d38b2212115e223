"""
Tests for the END-set search and maximal M-path growth.
"""

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from expanders.expansion import is_m_expander
from expanders.gamma import Gamma
from graphs.core import Graph
from graphs.matching import Matching
from hamilton.paths import MPath, is_m_path
from hamilton.rotation import (
    compute_end_set,
    end_set_neighbourhood_closed,
    extend_maximal,
    grow_maximal,
)
from tests.conftest import complete_graph, cycle_graph, path_graph
from tests.strategies import graphs_with_matching


def start_path(g, m):
    free = [v for v in range(g.n) if not m.covers(v)]
    if free:
        return MPath.of((free[0],))
    return MPath.of(m.edges[0])


class TestComputeEndSet:
    def test_path_without_chords_has_only_its_endpoint(self):
        state = compute_end_set(MPath.of(range(5)), path_graph(5), Matching())

        assert state.end_set == frozenset({4})
        assert not state.truncated

    def test_cycle_chord_back_to_the_fixed_end(self):
        state = compute_end_set(MPath.of(range(5)), cycle_graph(5), Matching())

        assert state.end_set == frozenset({1, 4})
        assert state.records[1] == (4, 0)
        assert state.path_to(1).vertices == (0, 4, 3, 2, 1)

    def test_complete_graph_reaches_every_other_vertex(self):
        state = compute_end_set(MPath.of(range(6)), complete_graph(6), Matching())

        assert state.end_set == frozenset(range(1, 6))
        assert state.order[0] == 5

    def test_covered_pivots_are_skipped(self):
        # With M = {1, 2} the only pivot at the start is the fixed end.
        m = Matching.from_pairs([(1, 2)])
        state = compute_end_set(MPath.of(range(5)), complete_graph(5), m, check_rotations=True)

        assert state.records[1] == (4, 0)
        for u in state.end_set:
            assert is_m_path(state.path_to(u).vertices, complete_graph(5), m)

    def test_truncation(self):
        state = compute_end_set(MPath.of(range(8)), complete_graph(8), Matching(), max_states=3)

        assert state.truncated
        assert len(state.end_set) == 3

    def test_stop_predicate(self):
        state = compute_end_set(MPath.of(range(6)), complete_graph(6), Matching(), stop=lambda u: u == 2)

        assert state.found == 2
        assert state.path_to(2).endpoint == 2

    def test_single_vertex_path_has_no_endpoints(self):
        assert compute_end_set(MPath.of((3,)), complete_graph(5), Matching()).end_set == frozenset()

    def test_unknown_endpoint(self):
        state = compute_end_set(MPath.of(range(5)), path_graph(5), Matching())

        with pytest.raises(KeyError):
            state.path_to(2)

    @given(graphs_with_matching(max_n=9))
    def test_every_endpoint_is_reached_by_an_m_path(self, gm):
        g, m = gm
        p = extend_maximal(start_path(g, m), g, m)
        state = compute_end_set(p, g, m)

        for u in state.end_set:
            q = state.path_to(u)
            assert q.endpoint == u
            assert q.fixed_end == p.fixed_end
            assert sorted(q.vertices) == sorted(p.vertices)
            assert is_m_path(q.vertices, g, m)


class TestGrowMaximal:
    def test_grows_from_the_middle_of_a_path(self):
        p = extend_maximal(MPath.of((2,)), path_graph(5), Matching())

        assert sorted(p.vertices) == list(range(5))
        assert is_m_path(p.vertices, path_graph(5), Matching())

    def test_covered_vertex_enters_with_its_mate(self):
        m = Matching.from_pairs([(1, 2)])

        assert extend_maximal(MPath.of((0,)), path_graph(3), m).vertices == (0, 1, 2)

    def test_mate_must_be_adjacent_to_enter(self):
        # 1 is matched to 3 but the edge {1, 3} is missing from the graph.
        m = Matching.from_pairs([(1, 3)])

        assert extend_maximal(MPath.of((0,)), path_graph(4), m).vertices == (0,)

    def test_rotation_unlocks_an_extension(self):
        # From (0, 1, 2, 3) the end 3 is stuck; rotating on {0, 3} exposes 1, which sees 4.
        g = Graph.from_edges(5, [*cycle_graph(4).edges(), (1, 4)])

        p = extend_maximal(MPath.of((0, 1, 2, 3)), g, Matching())

        assert sorted(p.vertices) == list(range(5))
        assert is_m_path(p.vertices, g, Matching())

    @given(graphs_with_matching(max_n=9))
    def test_result_is_a_maximal_m_path(self, gm):
        g, m = gm
        start = start_path(g, m)

        p, state = grow_maximal(start, g, m)

        assert is_m_path(p.vertices, g, m)
        assert set(start.vertices) <= set(p.vertices)
        on_path = set(p.vertices)
        for u in state.end_set:
            for w in g.neighbours(u):
                if w in on_path:
                    continue
                mate = m.mate(w)
                assert mate is not None and (mate in on_path or not g.has_edge(w, mate))
        if not state.truncated:
            assert end_set_neighbourhood_closed(state, g, m)


@st.composite
def dense_expanders(draw, min_n=8, max_n=16):
    """K_n minus up to n non-M edges, with M empty or a single edge."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    m = Matching.from_pairs([(0, 1)]) if draw(st.booleans()) else Matching()
    slots = [(u, v) for u in range(n) for v in range(u + 1, n) if not m.contains_edge(u, v)]
    removed = set(draw(st.lists(st.sampled_from(slots), unique=True, max_size=n)))
    g = Graph.from_edges(n, [e for e in complete_graph(n).edges() if e not in removed])
    return g, m


class TestEndSetSize:
    @settings(max_examples=30, deadline=None)
    @given(dense_expanders())
    def test_maximal_path_on_an_expander_has_a_large_end_set(self, gm):
        g, m = gm
        assume(is_m_expander(Gamma.from_graph(g, m), m).is_expander)

        _, state = grow_maximal(start_path(g, m), g, m)

        assert not state.truncated
        assert len(state.end_set) > g.n / 4
