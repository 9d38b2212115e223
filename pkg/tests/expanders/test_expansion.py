"""
Tests for exact and sampled M-expander checking.
"""

import pytest
from hypothesis import given, settings

from expanders.expansion import (
    EXACT_LIMIT,
    ExpansionModeError,
    is_m_expander,
)
from expanders.gamma import Gamma
from graphs.checks import CheckStatus
from graphs.matching import Matching
from tests.conftest import complete_graph, cycle_graph
from tests.strategies import graphs


class TestExact:
    def test_cycle_fails_on_an_adjacent_pair(self):
        verdict = is_m_expander(Gamma.from_graph(cycle_graph(8)), Matching())

        assert verdict.status == CheckStatus.FAILED
        assert verdict.witness == (0, 1)
        assert verdict.subsets_checked == 9
        assert not verdict.is_expander

    def test_complete_graphs_pass(self):
        for n in (6, 9):
            verdict = is_m_expander(Gamma.from_graph(complete_graph(n)), Matching())

            assert verdict.status == CheckStatus.PASSED
            assert verdict.is_expander

    def test_v_m_does_not_count_as_neighbours(self):
        # In K6, a singleton outside M sees 3 of the 5 others once {1, 2} is in M.
        k6 = Gamma.from_graph(complete_graph(6))
        m = Matching.from_pairs([(1, 2)])

        assert is_m_expander(k6, m).status == CheckStatus.PASSED

        m = Matching.from_pairs([(1, 2), (3, 4)])
        verdict = is_m_expander(k6, m)
        assert verdict.status == CheckStatus.FAILED
        assert verdict.witness == (0,)

    def test_missing_m_edge_fails_immediately(self):
        verdict = is_m_expander(Gamma.from_graph(cycle_graph(8)), Matching.from_pairs([(0, 4)]))

        assert verdict.status == CheckStatus.FAILED
        assert "not in Gamma" in verdict.reason
        assert verdict.subsets_checked == 0

    def test_too_large_for_exact_mode(self):
        with pytest.raises(ExpansionModeError, match=str(EXACT_LIMIT)):
            is_m_expander(Gamma.from_graph(complete_graph(EXACT_LIMIT + 1)), Matching())

    def test_unknown_mode(self):
        with pytest.raises(ExpansionModeError, match="Unknown"):
            is_m_expander(Gamma.from_graph(cycle_graph(5)), Matching(), mode="fast")

    def test_verdict_to_dict(self):
        data = is_m_expander(Gamma.from_graph(cycle_graph(8)), Matching()).to_dict()

        assert data["status"] == "FAILED"
        assert data["witness"] == [0, 1]


class TestSampled:
    def test_cycle_is_falsified(self):
        verdict = is_m_expander(Gamma.from_graph(cycle_graph(8)), Matching(), mode="sampled", samples=10)

        assert verdict.status == CheckStatus.FAILED
        assert verdict.witness == tuple(sorted(verdict.witness))
        assert len(verdict.witness) == 2

    def test_complete_graph_is_not_falsified(self):
        verdict = is_m_expander(Gamma.from_graph(complete_graph(30)), Matching(), mode="sampled", samples=5)

        assert verdict.status == CheckStatus.NOT_FALSIFIED
        assert verdict.is_expander
        assert verdict.subsets_checked > 30

    @settings(max_examples=30)
    @given(graphs(max_n=12))
    def test_sampled_failure_implies_exact_failure(self, g):
        gamma = Gamma.from_graph(g)
        sampled = is_m_expander(gamma, Matching(), mode="sampled", samples=10)

        if sampled.status == CheckStatus.FAILED:
            assert is_m_expander(gamma, Matching()).status == CheckStatus.FAILED
