"""Matching polynomials of uniform hypergraphs, walk-trees, and reconstruction from decks."""

from .core import Edge, Hypergraph, HypergraphError, parse_hg, read_hg, to_hg
from .deck import Deck, are_isomorphic, canonical_form, deck_equal, deck_restrict, make_deck
from .poly import IntPolynomial, char_polynomial, matching_polynomial
from .reconstruct import reconstruct_matching_polynomial
from .walktree import Digraph, digraph_of, walk_tree

__version__ = "0.1.0"

__all__ = [
    "Deck",
    "Digraph",
    "Edge",
    "Hypergraph",
    "HypergraphError",
    "IntPolynomial",
    "are_isomorphic",
    "canonical_form",
    "char_polynomial",
    "deck_equal",
    "deck_restrict",
    "digraph_of",
    "make_deck",
    "matching_polynomial",
    "parse_hg",
    "read_hg",
    "reconstruct_matching_polynomial",
    "to_hg",
    "walk_tree",
]
