"""Random and exhaustive instance generators.

All randomness comes from :class:`random.Random`, i.e. the Mersenne Twister
MT19937, seeded explicitly by the caller, so a seed reproduces a run exactly.
"""

from __future__ import annotations

import random
from itertools import combinations

from .core import Hypergraph, connected_components, is_connected
from .deck import canonical_form


def random_hypergraph(rng: random.Random, n: int, k: int, m: int | None = None, multi: bool = False) -> Hypergraph:
    """``m`` edges (random if omitted); without ``multi`` the edges are distinct k-sets."""
    pool = list(combinations(range(n), k))
    if not pool:
        return Hypergraph(n, k)
    if m is None:
        m = rng.randint(0, min(len(pool), 2 * n))
    if multi:
        edges = [rng.choice(pool) for _ in range(m)]
    else:
        edges = rng.sample(pool, min(m, len(pool)))
    return Hypergraph.from_edges(n, k, sorted(edges))


def random_connected_hypergraph(rng: random.Random, n: int, k: int, extra: int | None = None) -> Hypergraph:
    """Grow a connected spanning structure, then add ``extra`` random distinct edges."""
    if n < k:
        raise ValueError(f"a connected {k}-graph with edges needs n >= k, got n={n}")
    edges: set[tuple[int, ...]] = set()
    order = list(range(n))
    rng.shuffle(order)
    covered = order[:k]
    edges.add(tuple(sorted(covered)))
    i = k
    while i < n:
        # each new edge reuses at least one covered vertex
        take = rng.randint(1, min(k - 1, n - i))
        anchor = rng.sample(covered, k - take)
        fresh = order[i:i + take]
        edges.add(tuple(sorted(anchor + fresh)))
        covered += fresh
        i += take
    pool = [e for e in combinations(range(n), k) if e not in edges]
    if extra is None:
        extra = rng.randint(0, min(len(pool), n))
    edges.update(rng.sample(pool, min(extra, len(pool))))
    H = Hypergraph.from_edges(n, k, sorted(edges))
    assert is_connected(H)
    return H


def random_k_tree(rng: random.Random, k: int, max_vertices: int) -> Hypergraph:
    """A connected Berge-acyclic k-graph: each new edge meets the current tree in one vertex."""
    if max_vertices < 1:
        raise ValueError("max_vertices must be positive")
    edges_possible = (max_vertices - 1) // (k - 1)
    m = rng.randint(0, edges_possible)
    n = 1 + m * (k - 1)
    edges = []
    for j in range(m):
        attach = rng.randrange(1 + j * (k - 1))
        edges.append([attach, *range(1 + j * (k - 1), 1 + (j + 1) * (k - 1))])
    perm = list(range(n))
    rng.shuffle(perm)
    return Hypergraph.from_edges(n, k, edges).relabel(perm)


def random_orderings(rng: random.Random, H: Hypergraph) -> dict[int, list[int]]:
    """A uniformly random cyclic traversal order for every edge."""
    out = {}
    for e in H.edges:
        vs = list(e.vertices)
        rng.shuffle(vs)
        out[e.id] = vs
    return out


def random_permutation(rng: random.Random, n: int) -> list[int]:
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Hypergraph:
    return Hypergraph.from_edges(n, 2, [e for e in combinations(range(n), 2) if rng.random() < p])


def connected_simple_hypergraphs(n: int, k: int) -> list[Hypergraph]:
    """Every connected ``n``-vertex k-graph without repeated edges, one per isomorphism class."""
    pool = list(combinations(range(n), k))
    seen: dict[bytes, Hypergraph] = {}
    for mask in range(1 << len(pool)):
        H = Hypergraph.from_edges(n, k, [pool[i] for i in range(len(pool)) if mask >> i & 1])
        if len(connected_components(H)) != 1:
            continue
        seen.setdefault(canonical_form(H), H)
    return [seen[key] for key in sorted(seen)]
