"""
Tests for lifting Hamilton M-cycles to path covers and for cover verification.
"""

import pytest

from covers.extraction import (
    CoverContractError,
    PathCover,
    extract_cover,
    extract_path_cover,
    format_cover,
    lift_cycle,
    parse_cover,
    verify_cover,
    write_cover,
)
from graphs.core import Graph
from reduction.reducer import build_gstar, connected_two_core
from tests.conftest import cycle_graph, manual_classification, path_graph


def reduce(g, cls):
    return build_gstar(g, cls, connected_two_core(g))


class TestExtractCover:
    def test_hexagon_lifts_to_one_path(self, hexagon_with_pendants):
        g, cls = hexagon_with_pendants
        r = reduce(g, cls)
        cycle = (0, 3, 2, 1, 4, 5)

        assert lift_cycle(r, cycle) == [0, 6, 7, 3, 2, 1, 4, 5]

        cover = extract_cover(g, r, cycle)

        assert cover.paths == ((7, 3, 2, 1, 4, 5, 0, 6),)
        assert verify_cover(g, cover).passed

    def test_m_edge_across_the_seam(self, hexagon_with_pendants):
        g, cls = hexagon_with_pendants
        r = reduce(g, cls)

        assert lift_cycle(r, (3, 2, 1, 4, 5, 0)) == [3, 2, 1, 4, 5, 0, 6, 7]
        assert extract_cover(g, r, (3, 2, 1, 4, 5, 0)).size == 1

    def test_without_pendants_the_cycle_opens_at_its_lowest_edge(self):
        g = cycle_graph(5)
        r = reduce(g, manual_classification(5))

        cover = extract_cover(g, r, (2, 3, 4, 0, 1))

        assert cover.paths == ((1, 2, 3, 4, 0),)

    def test_vertices_off_the_cycle_become_singletons(self):
        g = Graph.from_edges(7, [*cycle_graph(5).edges(), (0, 5)])
        r = reduce(g, manual_classification(7, v0={6}, v1={5}, close={5}))

        cover = extract_cover(g, r, (0, 1, 2, 3, 4))

        assert (5,) in cover.paths
        assert (6,) in cover.paths
        assert cover.size == 3
        assert verify_cover(g, cover).passed

    def test_invalid_cycle_is_rejected(self, hexagon_with_pendants):
        g, cls = hexagon_with_pendants
        r = reduce(g, cls)

        with pytest.raises(CoverContractError, match="not a Hamilton M-cycle"):
            extract_cover(g, r, (0, 1, 2, 3, 4, 5))


class TestExtractPathCover:
    def test_path_through_m_splits_at_m_prime(self, octagon_with_pendants):
        g, cls = octagon_with_pendants
        r = reduce(g, cls)

        cover = extract_path_cover(g, r, (1, 2, 3, 4, 0, 7, 6, 5))

        assert cover.paths == ((1, 2, 3, 4, 9), (8, 0, 7, 6, 5))
        assert verify_cover(g, cover).passed

    def test_empty_path_gives_singletons(self):
        g = path_graph(3)
        cover = extract_path_cover(g, reduce(g, manual_classification(3)), ())

        assert cover.paths == ((0,), (1,), (2,))

    def test_path_cutting_an_m_edge_is_rejected(self, octagon_with_pendants):
        g, cls = octagon_with_pendants
        r = reduce(g, cls)

        with pytest.raises(CoverContractError, match="cut by the path"):
            extract_path_cover(g, r, (1, 2, 3, 4))


class TestVerifyCover:
    def test_complete_cover(self):
        assert verify_cover(path_graph(4), PathCover(((0, 1), (2, 3)))).passed

    def test_uncovered_vertex(self):
        verdict = verify_cover(path_graph(4), PathCover(((0, 1, 2),)))

        assert verdict.violations == ["1 vertices are not covered"]

    def test_shared_vertex(self):
        verdict = verify_cover(path_graph(4), PathCover(((0, 1, 2), (2, 3))))

        assert "paths 0 and 1 share vertex 2" in verdict.violations

    def test_non_edge(self):
        verdict = verify_cover(path_graph(4), PathCover(((0, 2), (1,), (3,))))

        assert verdict.violations == ["path 0: (0, 2) is not an edge"]

    def test_out_of_range_and_empty(self):
        verdict = verify_cover(path_graph(2), PathCover(((0, 1), (), (5,))))

        assert "path 1 is empty" in verdict.violations
        assert "path 2: vertex 5 outside 0..1" in verdict.violations


class TestCoverFile:
    def test_format_and_parse(self):
        cover = PathCover(((0, 1, 2), (5,), (4, 3)))

        assert format_cover(cover) == "0 1 2\n5\n4 3\n"
        assert parse_cover(format_cover(cover)) == cover

    @pytest.mark.parametrize(
        "text, message",
        [("0 1\n\n2\n", "Line 2: empty path"), ("0 a\n", "Line 1: expected integers")],
    )
    def test_malformed_cover(self, text, message):
        with pytest.raises(ValueError, match=message):
            parse_cover(text)

    def test_write_cover(self, tmp_path):
        path = tmp_path / "cover.txt"
        write_cover(PathCover(((1, 0),)), path)

        assert path.read_text() == "1 0\n"
