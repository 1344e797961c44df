from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from hypermatch.core import (
    Edge,
    Hypergraph,
    HypergraphError,
    add_isolated_vertices,
    berge_path_check,
    complete_hypergraph,
    connected_components,
    count_matchings,
    delete_edge,
    delete_vertices,
    disjoint_union,
    has_berge_cycle,
    has_perfect_matching,
    induced_subgraph,
    is_connected,
    is_k_tree,
    is_linear,
    matching_counts,
    parse_hg,
    read_hg,
    to_hg,
)
from hypermatch.generators import random_hypergraph, random_k_tree

from conftest import matching_counts_by_independent_sets


class TestValidation:
    def test_edge_size_must_match_k(self):
        with pytest.raises(HypergraphError, match="expected 3"):
            Hypergraph.from_edges(4, 3, [[0, 1]])

    def test_vertex_out_of_range(self):
        with pytest.raises(HypergraphError, match="outside"):
            Hypergraph.from_edges(3, 2, [[1, 3]])

    def test_repeated_vertex(self):
        with pytest.raises(HypergraphError, match="repeats"):
            Hypergraph.from_edges(3, 2, [[1, 1]])

    def test_duplicate_identifier(self):
        with pytest.raises(HypergraphError, match="duplicate"):
            Hypergraph(3, 2, (Edge(0, (0, 1)), Edge(0, (1, 2))))

    def test_unsorted_edge_tuple(self):
        with pytest.raises(HypergraphError, match="increasing"):
            Hypergraph(3, 2, (Edge(0, (1, 0)),))

    def test_small_k(self):
        with pytest.raises(HypergraphError):
            Hypergraph(3, 1)

    def test_multi_edges_allowed(self):
        H = Hypergraph.from_edges(3, 2, [[0, 1], [1, 0]])
        assert H.m == 2 and H.vertex_sets() == [(0, 1), (0, 1)]


def test_induced_subgraph_keeps_ids_and_relabels():
    H = Hypergraph.from_edges(5, 2, [[0, 1], [1, 3], [3, 4], [2, 4]])
    sub, relabel = induced_subgraph(H, [1, 3, 4])
    assert relabel == {1: 0, 3: 1, 4: 2}
    assert [(e.id, e.vertices) for e in sub.edges] == [(1, (0, 1)), (2, (1, 2))]


def test_delete_vertices_and_edges(k4_3):
    assert delete_vertices(k4_3, [0]).m == 1
    assert delete_edge(k4_3, 2).m == 3
    with pytest.raises(HypergraphError):
        delete_edge(k4_3, 99)
    with pytest.raises(HypergraphError):
        delete_vertices(k4_3, [4])


def test_disjoint_union_and_components():
    P = Hypergraph.from_edges(3, 2, [[0, 1], [1, 2]])
    U = add_isolated_vertices(disjoint_union(P, P), 1)
    assert U.n == 7 and U.m == 4
    assert connected_components(U) == [[0, 1, 2], [3, 4, 5], [6]]
    assert not is_connected(U) and is_connected(P)


def test_linearity_and_berge_cycles(k4_3):
    assert not is_linear(k4_3)
    assert has_berge_cycle(k4_3)
    path = Hypergraph.from_edges(5, 3, [[0, 1, 2], [2, 3, 4]])
    assert is_linear(path) and is_k_tree(path)
    # two parallel edges make a Berge 2-cycle
    assert has_berge_cycle(Hypergraph.from_edges(2, 2, [[0, 1], [0, 1]]))
    triangle = complete_hypergraph(3, 2)
    assert is_linear(triangle) and not is_k_tree(triangle)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_random_k_trees_are_acyclic(seed):
    rng = random.Random(seed)
    T = random_k_tree(rng, rng.choice((2, 3, 4)), 16)
    assert is_k_tree(T) and is_linear(T) and is_connected(T)
    assert T.n == 1 + T.m * (T.k - 1)


def test_matching_counts_k4(k4_3):
    assert matching_counts(k4_3) == [1, 4]
    assert count_matchings(k4_3, 2) == 0
    assert not has_perfect_matching(k4_3)
    assert has_perfect_matching(complete_hypergraph(6, 3))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_matching_counts_agree_with_independent_sets(seed):
    rng = random.Random(seed)
    H = random_hypergraph(rng, rng.randint(0, 8), rng.choice((2, 3, 4)), multi=rng.random() < 0.4)
    assert matching_counts(H) == matching_counts_by_independent_sets(H)


class TestBergePath:
    H = Hypergraph.from_edges(5, 3, [[0, 1, 2], [2, 3, 4], [0, 3, 4]])

    def test_valid(self):
        assert berge_path_check(self.H, [0, 0, 2, 1, 4])

    def test_repeated_vertex_or_edge(self):
        assert not berge_path_check(self.H, [0, 0, 2, 0, 1])
        assert not berge_path_check(self.H, [0, 0, 2, 1, 0])

    def test_not_incident(self):
        assert not berge_path_check(self.H, [1, 1, 3])

    def test_malformed(self):
        with pytest.raises(HypergraphError):
            berge_path_check(self.H, [0, 0])
        with pytest.raises(HypergraphError):
            berge_path_check(self.H, [0, 7, 1])


class TestHgFormat:
    def test_round_trip(self, k4_3):
        assert parse_hg(to_hg(k4_3)) == k4_3

    def test_comments_and_blank_lines(self):
        H = parse_hg("# header next\n3 2\n\n0 1\n# edge\n2 1\n")
        assert H.vertex_sets() == [(0, 1), (1, 2)]

    @pytest.mark.parametrize(
        "text, message",
        [("", "empty"), ("3\n0 1\n", "header"), ("3 2\n0 x\n", "non-integer"), ("3 2\n0 1 2\n", "expected 2")],
    )
    def test_malformed(self, text, message):
        with pytest.raises(HypergraphError, match=message):
            parse_hg(text)

    def test_read_file(self, tmp_path, k4_3):
        path = tmp_path / "k4.hg"
        path.write_text(to_hg(k4_3))
        assert read_hg(path) == k4_3


def test_relabel_rejects_non_permutation(k4_3):
    with pytest.raises(HypergraphError):
        k4_3.relabel([0, 0, 1, 2])
    assert k4_3.relabel([3, 2, 1, 0]).vertex_sets() == [(1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)]
