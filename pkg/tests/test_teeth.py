from __future__ import annotations

from itertools import combinations

import pytest

from hypermatch.core import connected_components, delete_vertices, has_perfect_matching, induced_subgraph
from hypermatch.deck import are_isomorphic, deck_equal, is_isomorphism, make_deck
from hypermatch.poly import IntPolynomial, matching_polynomial
from hypermatch.reconstruct import reconstruct_from_hypergraph
from hypermatch.teeth import (
    TeethError,
    aligned_teeth,
    flip_map,
    misaligned_teeth,
    teeth_bijection,
    teeth_files,
    verify_eta,
    verify_sharpness,
)

PAIRS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1)]


class TestLayouts:
    @pytest.mark.parametrize("k", [2, 3, 4])
    @pytest.mark.parametrize("ell", [0, 1, 2, 3])
    def test_sizes(self, k, ell):
        at, mt = aligned_teeth(k, ell), misaligned_teeth(k, ell)
        assert at.hypergraph.n == mt.hypergraph.n == k * (ell + 1)
        assert sum(name[0] == "e" for name in at.edge_names) == ell + 1
        assert sum(name[0] == "f" for name in at.edge_names) == max(ell - 1, 0)
        assert sum(name[0] == "e" for name in mt.edge_names) == ell
        assert sum(name[0] == "f" for name in mt.edge_names) == ell

    def test_small_cases(self):
        assert aligned_teeth(3, 0).hypergraph.m == 1
        assert misaligned_teeth(3, 0).hypergraph.m == 0
        at1 = aligned_teeth(3, 1).hypergraph
        a, b = (set(e.vertices) for e in at1.edges)
        assert len(a & b) == 1
        c, d = (set(e.vertices) for e in misaligned_teeth(3, 1).hypergraph.edges)
        assert not c & d

    def test_named_edges(self):
        at = aligned_teeth(3, 2)
        idx = at.index
        e1 = at.hypergraph.edges[at.edge_names.index("e1")]
        assert set(e1.vertices) == {idx["u1"], idx["c1^1"], idx["u2"]}
        mt = misaligned_teeth(3, 2)
        f2 = mt.hypergraph.edges[mt.edge_names.index("f2")]
        assert set(f2.vertices) == set(mt.vertices(["b2", "c2^1", "b3"]))

    def test_bottom_paths_at_k2(self):
        # MT(2, l) is two disjoint paths on l+1 vertices
        for ell in range(1, 5):
            P = misaligned_teeth(2, ell).hypergraph
            assert sorted(len(c) for c in connected_components(P)) == [ell + 1, ell + 1]

    def test_invalid(self):
        with pytest.raises(TeethError):
            aligned_teeth(1, 2)
        with pytest.raises(TeethError):
            misaligned_teeth(3, -1)


class TestFlip:
    @pytest.mark.parametrize("k, ell", PAIRS)
    def test_isomorphism_off_u0(self, k, ell):
        at, mt = aligned_teeth(k, ell), misaligned_teeth(k, ell)
        phi = flip_map(k, ell)
        u0 = at.index["u0"]
        assert phi[u0] == mt.index["u0"]
        A, M = delete_vertices(at.hypergraph, [u0]), delete_vertices(mt.hypergraph, [mt.index["u0"]])
        # vertex u0 is index 0 in both layouts, so deletion shifts everything by one
        assert is_isomorphism(A, M, [phi[v + 1] - 1 for v in range(A.n)])

    def test_names(self):
        at, mt = aligned_teeth(3, 2), misaligned_teeth(3, 2)
        phi = flip_map(3, 2)
        name = {v: mt.names[phi[v]] for v in range(at.hypergraph.n)}
        assert name[at.index["u3"]] == "b3"
        assert name[at.index["b1"]] == "u1"
        assert name[at.index["c1^1"]] == "c1^1"


class TestBijection:
    def test_case_two_example(self):
        at, mt = aligned_teeth(3, 1), misaligned_teeth(3, 1)
        J = at.vertices(["u0", "c0^1", "u1", "c1^1"])
        image, case = teeth_bijection(3, 1, J)
        assert case == "2"
        assert set(mt.subset_names(image)) == {"u0", "c0^1", "u1", "c1^1"}
        assert are_isomorphic(induced_subgraph(at.hypergraph, J)[0], induced_subgraph(mt.hypergraph, image)[0])[0]

    def test_case_one_is_flip(self):
        at = aligned_teeth(3, 2)
        phi = flip_map(3, 2)
        for J in combinations(range(1, at.hypergraph.n), 6):
            image, case = teeth_bijection(3, 2, J)
            assert case == "1" and image == {phi[v] for v in J}

    @pytest.mark.parametrize("k, ell", PAIRS)
    def test_exhaustive(self, k, ell):
        report = verify_eta(k, ell)
        assert report["status"] == "pass", report["failures"][:3]

    def test_all_cases_exercised(self):
        assert set(verify_eta(3, 2)["cases"]) == {"1", "2", "3a", "3b"}
        assert verify_eta(3, 2)["subsets"] == 84

    def test_errors(self):
        with pytest.raises(TeethError):
            teeth_bijection(3, 1, [0, 1, 2])
        with pytest.raises(TeethError):
            teeth_bijection(3, 0, [0, 1])


class TestSharpness:
    def test_k3_l1_values(self):
        report = verify_sharpness(3, 1)
        assert report.t == 4
        assert report.aligned_polynomial == IntPolynomial([0, 0, 0, -2, 0, 0, 1])
        assert report.misaligned_polynomial == IntPolynomial([1, 0, 0, -2, 0, 0, 1])
        assert report.passed and report.eta_ok

    @pytest.mark.parametrize("k, ell", PAIRS)
    def test_pairs(self, k, ell):
        report = verify_sharpness(k, ell)
        assert report.decks_equal and report.next_decks_differ
        assert report.polynomials_differ and report.parity_ok and report.eta_ok
        assert report.to_json()["pass"]

    def test_k2_l0_needs_isolated_vertex(self):
        plain = verify_sharpness(2, 0)
        assert plain.t == 1 and plain.decks_equal
        # with the extra vertex n is odd and floor(n/2) is still 1
        padded = verify_sharpness(2, 0, isolated=True)
        assert padded.n == 3 and padded.t == 1
        assert padded.decks_equal and padded.polynomials_differ
        assert padded.eta["status"] == "not applicable"

    @pytest.mark.parametrize("k", [3, 4])
    def test_ell_zero(self, k):
        report = verify_sharpness(k, 0)
        assert report.passed and report.eta["status"] == "not applicable"

    def test_parity(self):
        for k in (2, 3):
            for ell in range(4):
                assert has_perfect_matching(aligned_teeth(k, ell).hypergraph) == (ell % 2 == 0)
                assert has_perfect_matching(misaligned_teeth(k, ell).hypergraph) == (ell % 2 == 1)

    @pytest.mark.parametrize("k, ell", [(2, 2), (3, 1), (3, 2)])
    def test_one_more_vertex_reconstructs_both(self, k, ell):
        at, mt = aligned_teeth(k, ell).hypergraph, misaligned_teeth(k, ell).hypergraph
        pa, pm = reconstruct_from_hypergraph(at)[0], reconstruct_from_hypergraph(mt)[0]
        assert pa == matching_polynomial(at) and pm == matching_polynomial(mt) and pa != pm

    def test_decks_equal_directly(self):
        at, mt = aligned_teeth(2, 2).hypergraph, misaligned_teeth(2, 2).hypergraph
        assert deck_equal(make_deck(at, 3), make_deck(mt, 3))


def test_files():
    files = teeth_files(3, 1)
    assert files["aligned"].splitlines()[0] == "6 3"
    assert len(files["misaligned"].splitlines()) == 3


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_k2_isolated_vertex_variant(ell):
    report = verify_sharpness(2, ell, isolated=True)
    assert report.n == 2 * ell + 3 and report.t == ell + 1
    assert report.passed
