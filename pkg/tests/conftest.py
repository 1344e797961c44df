from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest

from hypermatch.core import Hypergraph, complete_hypergraph


def incidence_graph(H: Hypergraph) -> nx.Graph:
    """Bipartite vertex/edge incidence graph; parallel edges stay separate nodes."""
    G = nx.Graph()
    G.add_nodes_from((("v", v) for v in range(H.n)), side=0)
    for idx, e in enumerate(H.edges):
        G.add_node(("e", idx), side=1)
        G.add_edges_from((("e", idx), ("v", u)) for u in e.vertices)
    return G


def nx_isomorphic(H1: Hypergraph, H2: Hypergraph) -> bool:
    if (H1.n, H1.k, H1.m) != (H2.n, H2.k, H2.m):
        return False
    return nx.is_isomorphic(
        incidence_graph(H1), incidence_graph(H2), node_match=lambda a, b: a["side"] == b["side"]
    )


def matching_counts_by_independent_sets(H: Hypergraph) -> list[int]:
    """Matchings are independent sets of the edge-intersection graph."""
    counts = [0] * (H.n // H.k + 1)
    sets = [set(e.vertices) for e in H.edges]
    for size in range(len(counts)):
        for chosen in combinations(range(len(sets)), size):
            if all(not sets[a] & sets[b] for a, b in combinations(chosen, 2)):
                counts[size] += 1
    return counts


@pytest.fixture
def k4_3() -> Hypergraph:
    return complete_hypergraph(4, 3)
