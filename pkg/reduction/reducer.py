"""
Reduction of G to the auxiliary graph G*.

G* is the connected 2-core minus CLOSE and BAD, plus a matching M that pairs
(in ascending label order) the vertices hanging a pendant V1 vertex. A
Hamilton cycle of G* through M lifts to a long cycle of G plus the matching
M' on the pendants, which is where the path cover comes from.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

from classification.classifier import Classification
from graphs.core import Graph, components, induced_subgraph, k_core
from graphs.edgelist import write_edge_list
from graphs.matching import Matching

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Reduction:
    """
    ``gstar`` is relabelled ``0..N-1`` in ascending g-label order; ``to_g``
    maps back. ``m`` uses gstar labels, ``m_prime`` and ``partner`` use g
    labels (``partner[v]`` is the pendant of ``v`` for every v in V(M)).
    """

    c2_vertices: frozenset[int]
    gstar: Graph
    to_g: tuple[int, ...]
    m: Matching
    m_prime: Matching
    v1_star: frozenset[int]
    partner: Mapping[int, int]
    dropped: tuple[int, ...] = ()
    unmatched: int | None = None
    adjacent_m_pairs: tuple[tuple[int, int], ...] = ()
    floor_violations: tuple[int, ...] = ()
    from_g: Mapping[int, int] = field(default_factory=dict, repr=False)

    @property
    def m_edges(self) -> tuple[tuple[int, int], ...]:
        return self.m.edges

    def summary(self) -> dict[str, Any]:
        return {
            "c2": len(self.c2_vertices),
            "gstar": self.gstar.n,
            "gstar_edges": self.gstar.m,
            "m": len(self.m),
            "m_prime": len(self.m_prime),
            "dropped": len(self.dropped),
            "unmatched": self.unmatched,
            "adjacent_m_pairs": len(self.adjacent_m_pairs),
            "floor_violations": len(self.floor_violations),
        }


def connected_two_core(g: Graph) -> frozenset[int]:
    """2-core of the unique largest component; empty if the largest is tied."""
    parts = components(g)
    if not parts:
        return frozenset()
    if len(parts) > 1 and len(parts[0]) == len(parts[1]):
        logger.info("No unique largest component (size %d); 2-core is empty", len(parts[0]))
        return frozenset()
    sub, to_g = induced_subgraph(g, parts[0])
    return frozenset(to_g[v] for v in k_core(sub, 2))


def build_gstar(g: Graph, cls: Classification, c2: frozenset[int]) -> Reduction:
    excluded = cls.close | cls.bad
    core, to_g = induced_subgraph(g, (v for v in c2 if v not in excluded))
    from_g = {v: i for i, v in enumerate(to_g)}

    pendants = cls.v1 - cls.close
    partner: dict[int, int] = {}
    dropped = []
    for v in to_g:
        hanging = [u for u in g.adjacency[v] if u in pendants]
        if not hanging:
            continue
        if len(hanging) > 1:
            dropped.append(v)
            continue
        partner[v] = hanging[0]
    if dropped:
        logger.warning(
            "Dropped %d vertices with several pendant neighbours from M: %s",
            len(dropped),
            dropped[:10],
        )

    eligible = sorted(partner)
    unmatched = None
    if len(eligible) % 2:
        unmatched = eligible.pop()
        del partner[unmatched]
    pairs = [(from_g[a], from_g[b]) for a, b in zip(eligible[0::2], eligible[1::2])]
    m = Matching.from_pairs(pairs)

    gstar = Graph.from_edges(core.n, [*core.edges(), *pairs])
    adjacent = tuple(
        (a, b)
        for a, b in core.edges()
        if m.covers(a) and m.covers(b) and not m.contains_edge(a, b)
    )
    if adjacent:
        logger.warning("%d non-M edges of G* join two M vertices", len(adjacent))
    floor = tuple(
        v
        for v in range(gstar.n)
        if sum(1 for u in gstar.adjacency[v] if not m.covers(u)) < 2
    )
    if floor:
        logger.warning(
            "%d of %d G* vertices have fewer than 2 neighbours outside V(M)",
            len(floor),
            gstar.n,
        )

    r = Reduction(
        c2_vertices=frozenset(c2),
        gstar=gstar,
        to_g=to_g,
        m=m,
        m_prime=Matching(),
        v1_star=frozenset(partner.values()),
        partner=partner,
        dropped=tuple(dropped),
        unmatched=unmatched,
        adjacent_m_pairs=tuple((to_g[a], to_g[b]) for a, b in adjacent),
        floor_violations=tuple(to_g[v] for v in floor),
        from_g=from_g,
    )
    r = replace(r, m_prime=lift_matching(r))
    logger.info("Reduced to G*: %s", r.summary())
    return r


def lift_matching(r: Reduction) -> Matching:
    """M' = {{partner(u), partner(v)} : {u, v} in M}, in g labels."""
    lifted = [
        (r.partner[r.to_g[a]], r.partner[r.to_g[b]]) for a, b in r.m.edges
    ]
    try:
        m_prime = Matching.from_pairs(lifted)
    except ValueError:
        # Two M vertices sharing a pendant is excluded by construction.
        logger.error("Lifted matching is not vertex-disjoint: %s", lifted)
        raise
    clash = m_prime.vertices & {r.to_g[v] for v in r.m.vertices}
    if clash:
        logger.warning("V(M') meets V(M) at %s", sorted(clash)[:10])
    return m_prime


def write_gstar(r: Reduction, path: Path | str) -> None:
    """Write G* as an edge list plus a ``<path>.labels`` map back to g labels."""
    path = Path(path)
    write_edge_list(r.gstar, path)
    labels = "".join(f"{i} {v}\n" for i, v in enumerate(r.to_g))
    path.with_name(path.name + ".labels").write_text(labels, encoding="ascii")
