"""
Tests for the connected 2-core and the G* reduction with its matchings.
"""

from hypothesis import given

from graphs.core import Graph, components, induced_subgraph, k_core
from graphs.edgelist import read_edge_list
from reduction.reducer import build_gstar, connected_two_core, lift_matching
from tests.conftest import complete_graph, cycle_graph, manual_classification
from tests.strategies import graphs


def with_pendants(core_edges, core_n, hosts):
    """``core_n`` core vertices plus one pendant per host, labelled from core_n."""
    pendants = {core_n + i: host for i, host in enumerate(hosts)}
    g = Graph.from_edges(core_n + len(hosts), [*core_edges, *((h, p) for p, h in pendants.items())])
    return g, frozenset(pendants)


class TestConnectedTwoCore:
    def test_tree_has_empty_two_core(self):
        assert connected_two_core(Graph.from_edges(4, [(0, 1), (1, 2), (1, 3)])) == frozenset()

    def test_cycle_with_tail(self):
        g = Graph.from_edges(7, [*cycle_graph(5).edges(), (4, 5), (5, 6)])

        assert connected_two_core(g) == frozenset(range(5))

    def test_only_the_largest_component_counts(self):
        # K3 on {0, 1, 2} beside K4 on {3, 4, 5, 6}
        g = Graph.from_edges(7, [*complete_graph(3).edges(), *((u + 3, v + 3) for u, v in complete_graph(4).edges())])

        assert connected_two_core(g) == frozenset({3, 4, 5, 6})

    def test_tied_largest_components_give_empty_core(self):
        g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])

        assert connected_two_core(g) == frozenset()

    def test_empty_graph(self):
        assert connected_two_core(Graph.empty(0)) == frozenset()

    @given(graphs())
    def test_is_the_two_core_of_the_largest_component(self, g):
        core = connected_two_core(g)
        parts = components(g)

        if core:
            sub, to_g = induced_subgraph(g, parts[0])
            assert core == frozenset(to_g[v] for v in k_core(sub, 2))
            assert core <= k_core(g, 2)


class TestBuildGstar:
    def test_hexagon_pairs_the_two_pendant_hosts(self, hexagon_with_pendants):
        g, cls = hexagon_with_pendants
        r = build_gstar(g, cls, connected_two_core(g))

        assert r.c2_vertices == frozenset(range(6))
        assert r.to_g == (0, 1, 2, 3, 4, 5)
        assert r.m_edges == ((0, 3),)
        assert r.gstar.has_edge(0, 3)
        assert r.gstar.m == 8
        assert dict(r.partner) == {0: 6, 3: 7}
        assert r.v1_star == frozenset({6, 7})
        assert r.m_prime.edges == ((6, 7),)
        assert r.unmatched is None
        assert r.floor_violations == ()

    def test_odd_host_count_leaves_the_largest_unmatched(self):
        g, v1 = with_pendants(cycle_graph(6).edges(), 6, [0, 2, 4])
        r = build_gstar(g, manual_classification(g.n, v1=v1), connected_two_core(g))

        assert r.m_edges == ((0, 2),)
        assert r.unmatched == 4
        assert 4 not in r.partner
        assert r.m_prime.edges == ((6, 7),)

    def test_host_with_two_pendants_is_dropped(self):
        g, v1 = with_pendants(cycle_graph(4).edges(), 4, [0, 0, 2])
        r = build_gstar(g, manual_classification(g.n, v1=v1), connected_two_core(g))

        assert r.dropped == (0,)
        assert len(r.m) == 0
        assert r.unmatched == 2

    def test_close_and_bad_vertices_are_removed(self):
        g = cycle_graph(6)
        cls = manual_classification(6, close={2}, x={4})
        r = build_gstar(g, cls, connected_two_core(g))

        assert r.to_g == (0, 1, 3, 5)
        assert r.gstar.n == 4
        assert list(r.gstar.edges()) == [(0, 1), (0, 3)]

    def test_close_pendants_are_not_matched(self):
        g, v1 = with_pendants(cycle_graph(6).edges(), 6, [0, 3])
        cls = manual_classification(g.n, v1=v1, close={6})
        r = build_gstar(g, cls, connected_two_core(g))

        assert len(r.m) == 0
        assert r.unmatched == 3

    def test_m_vertices_joined_outside_m_are_reported(self):
        g, v1 = with_pendants(cycle_graph(4).edges(), 4, [0, 1, 2, 3])
        r = build_gstar(g, manual_classification(g.n, v1=v1), connected_two_core(g))

        assert r.m_edges == ((0, 1), (2, 3))
        assert r.adjacent_m_pairs == ((0, 3), (1, 2))
        assert r.floor_violations == (0, 1, 2, 3)

    def test_gstar_contains_m_and_lifted_matching_is_in_g_labels(self, octagon_with_pendants):
        g, cls = octagon_with_pendants
        r = build_gstar(g, cls, connected_two_core(g))

        for a, b in r.m_edges:
            assert r.gstar.has_edge(a, b)
        assert lift_matching(r) == r.m_prime
        assert r.m_prime.edges == ((8, 9),)
        assert not r.m_prime.vertices & {r.to_g[v] for v in r.m.vertices}

    def test_summary_counts(self, hexagon_with_pendants):
        g, cls = hexagon_with_pendants
        summary = build_gstar(g, cls, connected_two_core(g)).summary()

        assert summary["gstar"] == 6
        assert summary["m"] == 1
        assert summary["dropped"] == 0


def test_write_gstar_writes_edges_and_labels(tmp_path, octagon_with_pendants):
    from reduction.reducer import write_gstar

    g, cls = octagon_with_pendants
    r = build_gstar(g, cls, connected_two_core(g))
    path = tmp_path / "gstar.txt"

    write_gstar(r, path)

    assert read_edge_list(path) == r.gstar
    labels = (tmp_path / "gstar.txt.labels").read_text().splitlines()
    assert labels == [f"{i} {i}" for i in range(8)]
