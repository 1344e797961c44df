from __future__ import annotations

import json
import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from hypermatch.core import Hypergraph, complete_hypergraph, induced_subgraph
from hypermatch.deck import (
    Deck,
    DeckError,
    are_isomorphic,
    canonical_form,
    canonical_labeling,
    canonical_representative,
    decode_canonical,
    deck_equal,
    deck_restrict,
    is_isomorphism,
    isomorphism_classes,
    make_deck,
)
from hypermatch.generators import random_hypergraph, random_k_tree, random_permutation

from conftest import nx_isomorphic


def random_instance(rng, max_n=8):
    return random_hypergraph(rng, rng.randint(0, max_n), rng.choice((2, 3)), multi=rng.random() < 0.3)


class TestCanonicalForm:
    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10_000))
    def test_invariant_under_relabeling(self, seed):
        rng = random.Random(seed)
        H = random_instance(rng)
        canon = canonical_form(H)
        for _ in range(10):
            assert canonical_form(H.relabel(random_permutation(rng, H.n))) == canon

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 10_000))
    def test_agrees_with_networkx_isomorphism(self, seed):
        rng = random.Random(seed)
        n, k = rng.randint(1, 7), rng.choice((2, 3))
        m = rng.randint(0, 6)
        H1 = random_hypergraph(rng, n, k, m, multi=rng.random() < 0.3)
        H2 = random_hypergraph(rng, n, k, m, multi=rng.random() < 0.3)
        assert (canonical_form(H1) == canonical_form(H2)) == nx_isomorphic(H1, H2)

    def test_decode_round_trip(self, k4_3):
        canon = canonical_form(k4_3)
        assert canonical_form(decode_canonical(canon)) == canon
        assert canonical_representative(k4_3) == decode_canonical(canon)

    def test_multiplicity_matters(self):
        single = Hypergraph.from_edges(2, 2, [[0, 1]])
        double = Hypergraph.from_edges(2, 2, [[0, 1], [0, 1]])
        assert canonical_form(single) != canonical_form(double)

    def test_labeling_is_a_permutation(self):
        H = random_k_tree(random.Random(3), 3, 13)
        form, labels = canonical_labeling(H)
        assert sorted(labels) == list(range(H.n))
        assert sorted(tuple(sorted(labels[u] for u in e.vertices)) for e in H.edges) == list(form)

    def test_highly_symmetric_inputs(self):
        # regular structures stress the refinement; compare against relabeled copies
        rng = random.Random(1)
        for H in (complete_hypergraph(7, 3), Hypergraph.from_edges(9, 3, [[i, (i + 1) % 9, (i + 3) % 9] for i in range(9)])):
            canon = canonical_form(H)
            for _ in range(5):
                assert canonical_form(H.relabel(random_permutation(rng, H.n))) == canon


class TestIsomorphism:
    def test_witness(self):
        rng = random.Random(8)
        H = random_hypergraph(rng, 7, 3, 6)
        perm = random_permutation(rng, 7)
        ok, witness = are_isomorphic(H, H.relabel(perm))
        assert ok and is_isomorphism(H, H.relabel(perm), witness)

    def test_non_isomorphic(self):
        path = Hypergraph.from_edges(4, 2, [[0, 1], [1, 2], [2, 3]])
        star = Hypergraph.from_edges(4, 2, [[0, 1], [0, 2], [0, 3]])
        assert are_isomorphic(path, star) == (False, None)
        assert not is_isomorphism(path, star, [0, 1, 2, 3])

    def test_classes(self):
        graphs = [Hypergraph.from_edges(3, 2, [[0, 1]]), Hypergraph.from_edges(3, 2, [[1, 2]]), Hypergraph(3, 2)]
        assert len(isomorphism_classes(graphs)) == 2


def brute_force_deck(H, t):
    """Group t-subsets by networkx isomorphism; return sorted multiplicities per class size signature."""
    reps: list[tuple[Hypergraph, int]] = []
    for X in combinations(range(H.n), t):
        sub = induced_subgraph(H, X)[0]
        for i, (rep, c) in enumerate(reps):
            if nx_isomorphic(rep, sub):
                reps[i] = (rep, c + 1)
                break
        else:
            reps.append((sub, 1))
    return reps


class TestDeck:
    def test_k4_deck(self, k4_3):
        deck = make_deck(k4_3, 3)
        assert deck.size == 4 and len(deck.classes) == 1

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10_000))
    def test_against_brute_force(self, seed):
        rng = random.Random(seed)
        H = random_instance(rng, 6)
        t = rng.randint(0, H.n)
        deck = make_deck(H, t)
        reps = brute_force_deck(H, t)
        assert sorted(deck.classes.values()) == sorted(c for _, c in reps)
        for rep, c in reps:
            assert deck.classes[canonical_form(rep)] == c

    def test_parallel_matches_serial(self):
        H = random_hypergraph(random.Random(4), 8, 3, 12)
        assert make_deck(H, 5, jobs=2) == make_deck(H, 5)

    def test_json_round_trip(self, k4_3):
        deck = make_deck(complete_hypergraph(5, 2), 3)
        data = json.loads(json.dumps(deck.to_json()))
        assert Deck.from_json(data) == deck
        # classes may also be given by sample only
        for entry in data["classes"]:
            del entry["canon"]
        assert Deck.from_json(data) == deck

    @pytest.mark.parametrize(
        "data",
        [{"n": 3}, {"n": 3, "k": 2, "t": 2, "classes": [{"canon": "!!", "mult": 1}]},
         {"n": 3, "k": 2, "t": 2, "classes": [{"sample": "3 2\n0 1\n", "mult": 1}]}],
    )
    def test_malformed_json(self, data):
        with pytest.raises(DeckError):
            Deck.from_json(data)

    def test_bad_t(self, k4_3):
        with pytest.raises(DeckError):
            make_deck(k4_3, 5)

    def test_compare_mismatched(self, k4_3):
        with pytest.raises(DeckError):
            deck_equal(make_deck(k4_3, 2), make_deck(k4_3, 3))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10_000))
    def test_restrict(self, seed):
        rng = random.Random(seed)
        H = random_instance(rng, 7)
        t = rng.randint(0, H.n)
        s = rng.randint(0, t)
        assert deck_equal(deck_restrict(make_deck(H, t), s), make_deck(H, s))

    def test_restrict_detects_corruption(self):
        deck = make_deck(complete_hypergraph(5, 2), 3)
        (canon, mult), = deck.classes.items()
        bad = Deck(deck.n, deck.k, deck.t, {canon: mult + 1})
        with pytest.raises(DeckError, match="not divisible"):
            deck_restrict(bad, 1)
        with pytest.raises(DeckError):
            deck_restrict(deck, 4)
