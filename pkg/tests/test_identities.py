from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from hypermatch.core import Hypergraph, HypergraphError, complete_hypergraph
from hypermatch.generators import (
    connected_simple_hypergraphs,
    random_connected_hypergraph,
    random_hypergraph,
    random_k_tree,
    random_orderings,
)
from hypermatch.identities import (
    IdentityReport,
    closed_walk_counts_digraph,
    closed_walk_counts_series,
    verify_derivative_identity,
    verify_godsil_identity,
    verify_source_sink_reduction,
    verify_tree_char_identity,
    verify_walk_routes,
)
from hypermatch.walktree import Digraph, digraph_of, digraph_of_walk_tree, walk_tree


def test_report_requires_witness_on_failure():
    with pytest.raises(ValueError):
        IdentityReport("x", "y", False)
    assert IdentityReport("x", "y", True).to_json() == {"identity": "x", "instance": "y", "pass": True, "witness": {}}


class TestGodsil:
    def test_k4(self, k4_3):
        report = verify_godsil_identity(k4_3, 0)
        assert report.passed and report.witness == {}

    def test_edgeless(self):
        assert verify_godsil_identity(Hypergraph(3, 3), 1).passed

    def test_disconnected(self):
        H = Hypergraph.from_edges(7, 3, [[0, 1, 2], [3, 4, 5]])
        assert verify_godsil_identity(H, 0).passed

    def test_multi_edges(self):
        H = Hypergraph.from_edges(4, 3, [[0, 1, 2], [0, 1, 2], [1, 2, 3]])
        for v in range(4):
            assert verify_godsil_identity(H, v).passed

    def test_all_small_connected_3_graphs(self):
        for n in range(1, 6):
            for H in connected_simple_hypergraphs(n, 3):
                for v in range(H.n):
                    assert verify_godsil_identity(H, v).passed

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10_000))
    def test_random_connected(self, seed):
        rng = random.Random(seed)
        n = rng.randint(3, 6)
        H = random_connected_hypergraph(rng, n, rng.choice((2, 3)))
        assert verify_godsil_identity(H, rng.randrange(n)).passed

    def test_budget_propagates(self):
        from hypermatch.walktree import WalkTreeBudgetError

        with pytest.raises(WalkTreeBudgetError):
            verify_godsil_identity(complete_hypergraph(6, 3), 0, budget=10)


class TestTreeIdentity:
    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000))
    def test_random_trees_and_orderings(self, seed):
        rng = random.Random(seed)
        T = random_k_tree(rng, rng.choice((2, 3, 4)), 16)
        assert verify_tree_char_identity(T, random_orderings(rng, T)).passed

    def test_walk_tree_of_k4(self, k4_3):
        assert verify_tree_char_identity(walk_tree(k4_3, 0).hypergraph).passed

    def test_rejects_cyclic(self, k4_3):
        with pytest.raises(HypergraphError):
            verify_tree_char_identity(k4_3)


class TestSourceSink:
    def test_source_and_sink(self):
        D = Digraph(4, frozenset({(0, 1), (1, 2), (2, 1), (2, 3)}))
        assert verify_source_sink_reduction(D, 0).passed
        assert verify_source_sink_reduction(D, 3).passed

    def test_neither(self):
        D = Digraph(2, frozenset({(0, 1), (1, 0)}))
        with pytest.raises(ValueError):
            verify_source_sink_reduction(D, 0)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10_000))
    def test_random_digraphs(self, seed):
        rng = random.Random(seed)
        n = rng.randint(2, 7)
        arcs = {(u, w) for u in range(n) for w in range(n) if u != w and rng.random() < 0.3}
        s = rng.randrange(n)
        arcs = {(u, w) for u, w in arcs if w != s}  # make s a source
        assert verify_source_sink_reduction(Digraph(n, frozenset(arcs)), s).passed


class TestClosedWalks:
    def test_k4_counts(self, k4_3):
        assert closed_walk_counts_series(k4_3, 0, 6) == [1, 0, 0, 3, 0, 0, 12]
        assert closed_walk_counts_digraph(digraph_of_walk_tree(k4_3, 0), 0, 6) == [1, 0, 0, 3, 0, 0, 12]

    def test_digon(self):
        # single graph edge: D is a digon, closed walks at even lengths only
        D = digraph_of(Hypergraph.from_edges(2, 2, [[0, 1]]))
        assert closed_walk_counts_digraph(D, 0, 4) == [1, 0, 1, 0, 1]

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000))
    def test_two_routes_agree(self, seed):
        rng = random.Random(seed)
        H = random_hypergraph(rng, rng.randint(1, 5), rng.choice((2, 3)), multi=rng.random() < 0.3)
        assert verify_walk_routes(H, rng.randrange(H.n), 8).passed

    def test_bad_vertex(self, k4_3):
        with pytest.raises(HypergraphError):
            closed_walk_counts_series(k4_3, 9, 3)
        with pytest.raises(ValueError):
            closed_walk_counts_digraph(Digraph(2, frozenset()), 5, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_derivative_identity(seed):
    rng = random.Random(seed)
    H = random_hypergraph(rng, rng.randint(0, 7), rng.choice((2, 3, 4)), multi=rng.random() < 0.3)
    assert verify_derivative_identity(H).passed
