"""
Tests for the measured-versus-predicted reduction sizes.
"""

from graphs.checks import CheckStatus
from reduction.reducer import build_gstar, connected_two_core
from reduction.sizes import check_reduction_sizes
from tests.conftest import cycle_graph, manual_classification


def test_hexagon_sizes(hexagon_with_pendants):
    g, cls = hexagon_with_pendants
    r = build_gstar(g, cls, connected_two_core(g))

    report = check_reduction_sizes(r, 2.0, g.n, 0.5, cls=cls)

    assert [check.name for check in report.checks] == [
        "two_core_size",
        "gstar_size",
        "matching_support",
        "leftover",
    ]
    # 6 core vertices against a predicted 3.78 at c = 2.
    assert report.by_name("two_core_size").status == CheckStatus.FAILED
    assert report.by_name("gstar_size").status == CheckStatus.PASSED
    assert report.by_name("matching_support").measured == 2
    assert report.by_name("matching_support").status == CheckStatus.PASSED
    assert report.by_name("leftover").measured == 0


def test_two_core_check_inapplicable_below_the_threshold():
    g = cycle_graph(5)
    r = build_gstar(g, manual_classification(5), connected_two_core(g))

    report = check_reduction_sizes(r, 1.0, 5, 0.5)

    assert report.by_name("two_core_size").status == CheckStatus.INAPPLICABLE
    assert "leftover" not in [check.name for check in report.checks]


def test_loose_tolerance_accepts_the_two_core(hexagon_with_pendants):
    g, cls = hexagon_with_pendants
    r = build_gstar(g, cls, connected_two_core(g))

    report = check_reduction_sizes(r, 2.0, g.n, 0.5, two_core_tolerance=1.0)

    assert report.by_name("two_core_size").status == CheckStatus.PASSED
