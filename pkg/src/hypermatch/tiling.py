"""F-tiling polynomials of graphs through the hypergraph of F-copies.

Every copy of the motif ``F`` inside ``G`` becomes one hyperedge on its vertex
set, so vertex-disjoint copies are exactly matchings of the copy hypergraph.
A copy is a subgraph: it is identified by its vertex set together with the
identifiers of the ``G``-edges it uses, which means two different copies on
one vertex set turn into parallel hyperedges.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import Hypergraph, HypergraphError, induced_subgraph
from .deck import Deck, are_isomorphic, canonical_form
from .poly import IntPolynomial, matching_polynomial
from .reconstruct import ReconstructionTrace, deck_size_for, reconstruct_matching_polynomial


@dataclass(frozen=True)
class Copy:
    vertices: tuple[int, ...]
    edge_ids: frozenset[int]


@dataclass(frozen=True)
class CopyHypergraph:
    hypergraph: Hypergraph
    copies: tuple[Copy, ...]  # copies[i] is the provenance of hyperedge i


def _check_graph(G: Hypergraph, what: str) -> None:
    if G.k != 2:
        raise HypergraphError(f"{what} must be a graph (k=2), got k={G.k}")


def enumerate_f_copies(G: Hypergraph, F: Hypergraph) -> list[Copy]:
    """All subgraphs of ``G`` isomorphic to ``F``, sorted by (vertices, edges)."""
    _check_graph(G, "host")
    _check_graph(F, "motif")
    if F.n < 2:
        raise HypergraphError("motif needs at least two vertices")
    k = F.n
    # map F vertices in an order where each new vertex is adjacent to earlier ones when possible
    order: list[int] = []
    f_adj = [set() for _ in range(k)]
    for e in F.edges:
        a, b = e.vertices
        f_adj[a].add(b)
        f_adj[b].add(a)
    remaining = set(range(k))
    while remaining:
        pick = max(remaining, key=lambda u: (len(f_adj[u] & set(order)), len(f_adj[u]), -u))
        order.append(pick)
        remaining.remove(pick)
    # F edges are checked once both endpoints are placed
    checks: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    position = {u: i for i, u in enumerate(order)}
    for e in F.edges:
        a, b = e.vertices
        later = a if position[a] > position[b] else b
        checks[position[later]].append((a, b))

    between: dict[tuple[int, int], list[int]] = {}
    g_adj = [set() for _ in range(G.n)]
    for e in G.edges:
        a, b = e.vertices
        between.setdefault((a, b), []).append(e.id)
        g_adj[a].add(b)
        g_adj[b].add(a)

    found: set[Copy] = set()
    image = [-1] * k
    used: set[int] = set()

    def choose_edges(pairs, i, chosen):
        if i == len(pairs):
            yield chosen
            return
        a, b = pairs[i]
        x, y = sorted((image[a], image[b]))
        for eid in between.get((x, y), ()):
            yield from choose_edges(pairs, i + 1, chosen + (eid,))

    def extend(depth, chosen):
        if depth == k:
            found.add(Copy(tuple(sorted(image)), frozenset(chosen)))
            return
        u = order[depth]
        placed = [w for w in order[:depth] if w in f_adj[u]]
        if placed:
            candidates = set.intersection(*(g_adj[image[w]] for w in placed)) - used
        else:
            candidates = set(range(G.n)) - used
        if f_adj[u]:
            candidates = {c for c in candidates if len(g_adj[c]) >= len(f_adj[u])}
        for c in sorted(candidates):
            image[u] = c
            used.add(c)
            for more in choose_edges(checks[depth], 0, ()):
                extend(depth + 1, chosen + more)
            used.remove(c)
            image[u] = -1

    extend(0, ())
    return sorted(found, key=lambda c: (c.vertices, sorted(c.edge_ids)))


def copy_hypergraph(G: Hypergraph, F: Hypergraph) -> CopyHypergraph:
    copies = tuple(enumerate_f_copies(G, F))
    H = Hypergraph.from_edges(G.n, F.n, [c.vertices for c in copies])
    return CopyHypergraph(H, copies)


def tiling_polynomial(G: Hypergraph, F: Hypergraph) -> IntPolynomial:
    """``sum_i (-1)^i p_F(G, i) x^(n - k i)`` with ``p_F`` counting sets of disjoint copies."""
    return matching_polynomial(copy_hypergraph(G, F).hypergraph)


def copy_deck(graph_deck: Deck, F: Hypergraph) -> Deck:
    """Map each graph deck class to the class of its copy hypergraph."""
    if graph_deck.k != 2:
        raise HypergraphError(f"graph deck must have k=2, got k={graph_deck.k}")
    classes: dict[bytes, int] = {}
    for member, mult in graph_deck.members():
        key = canonical_form(copy_hypergraph(member, F).hypergraph)
        classes[key] = classes.get(key, 0) + mult
    return Deck(graph_deck.n, F.n, graph_deck.t, classes)


def reconstruct_tiling_polynomial(graph_deck: Deck, F: Hypergraph, n: int) -> tuple[IntPolynomial, ReconstructionTrace]:
    k = F.n
    if graph_deck.t != deck_size_for(n, k):
        raise HypergraphError(f"tiling reconstruction for |V(F)|={k} needs t={deck_size_for(n, k)}, got {graph_deck.t}")
    return reconstruct_matching_polynomial(copy_deck(graph_deck, F), n, k)


def _block_partitions(vertices: tuple[int, ...], k: int):
    if not vertices:
        yield []
        return
    first, rest = vertices[0], vertices[1:]
    for others in combinations(rest, k - 1):
        block = (first, *others)
        left = tuple(v for v in rest if v not in others)
        for tail in _block_partitions(left, k):
            yield [block, *tail]


def count_perfect_tilings(G: Hypergraph, F: Hypergraph) -> int:
    """Brute force: partition ``V(G)`` into ``|V(F)|``-blocks, count copies per block by edge-subset isomorphism."""
    _check_graph(G, "host")
    _check_graph(F, "motif")
    k = F.n
    if G.n % k:
        return 0
    per_block: dict[tuple[int, ...], int] = {}

    def copies_on(block):
        if block not in per_block:
            sub, _ = induced_subgraph(G, block)
            count = 0
            for chosen in combinations(sub.edges, F.m):
                candidate = Hypergraph(k, 2, chosen)
                if are_isomorphic(candidate, F)[0]:
                    count += 1
            per_block[block] = count
        return per_block[block]

    total = 0
    for partition in _block_partitions(tuple(range(G.n)), k):
        prod = 1
        for block in partition:
            prod *= copies_on(block)
            if not prod:
                break
        total += prod
    return total
