"""Uniform hypergraphs with multi-edges, plus brute-force matching counts.

Vertices are the integers ``0..n-1`` and their index order is the vertex
ordering used everywhere downstream.  Edges carry integer identifiers so that
parallel edges (same vertex set) stay distinguishable and survive subgraph
operations unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence


class HypergraphError(ValueError):
    """Invalid hypergraph data or an operation on a missing vertex/edge."""


class Edge(NamedTuple):
    id: int
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """An ``n``-vertex ``k``-uniform hypergraph.

    ``edges`` is an ordered tuple of :class:`Edge`; each edge's vertex tuple is
    strictly increasing and every identifier is unique.
    """

    n: int
    k: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise HypergraphError(f"vertex count must be non-negative, got {self.n}")
        if self.k < 2:
            raise HypergraphError(f"uniformity must be at least 2, got {self.k}")
        edges = tuple(e if isinstance(e, Edge) else Edge(*e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        seen = set()
        for e in edges:
            if e.id in seen:
                raise HypergraphError(f"duplicate edge identifier {e.id}")
            seen.add(e.id)
            vs = e.vertices
            if len(vs) != self.k:
                raise HypergraphError(f"edge {e.id} has {len(vs)} vertices, expected {self.k}")
            if any(vs[i] >= vs[i + 1] for i in range(len(vs) - 1)):
                raise HypergraphError(f"edge {e.id} vertices must be strictly increasing: {vs}")
            if vs[0] < 0 or vs[-1] >= self.n:
                raise HypergraphError(f"edge {e.id} has a vertex outside 0..{self.n - 1}")

    @classmethod
    def from_edges(cls, n: int, k: int, vertex_lists: Iterable[Iterable[int]]) -> "Hypergraph":
        """Build a hypergraph with identifiers ``0, 1, ...`` in list order."""
        edges = []
        for i, vs in enumerate(vertex_lists):
            vs = tuple(sorted(vs))
            if len(set(vs)) != len(vs):
                raise HypergraphError(f"edge {i} repeats a vertex: {vs}")
            edges.append(Edge(i, vs))
        return cls(n, k, tuple(edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertex_sets(self) -> list[tuple[int, ...]]:
        return [e.vertices for e in self.edges]

    def edge(self, edge_id: int) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise HypergraphError(f"unknown edge identifier {edge_id}")

    def incident(self, v: int) -> list[Edge]:
        return [e for e in self.edges if v in e.vertices]

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e.vertices)

    def relabel(self, perm: Sequence[int]) -> "Hypergraph":
        """Return the copy where vertex ``v`` becomes ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise HypergraphError("relabeling must be a permutation of 0..n-1")
        return Hypergraph(
            self.n,
            self.k,
            tuple(Edge(e.id, tuple(sorted(perm[u] for u in e.vertices))) for e in self.edges),
        )

    def __str__(self):
        return to_hg(self).rstrip("\n")


# ---------------------------------------------------------------------------
# structural operations
# ---------------------------------------------------------------------------

def induced_subgraph(H: Hypergraph, X: Iterable[int]) -> tuple[Hypergraph, dict[int, int]]:
    """Return ``H[X]`` relabeled to ``0..|X|-1`` and the old-to-new vertex map."""
    X = sorted(set(X))
    for v in X:
        if not 0 <= v < H.n:
            raise HypergraphError(f"vertex {v} out of range for n={H.n}")
    relabel = {v: i for i, v in enumerate(X)}
    edges = tuple(
        Edge(e.id, tuple(relabel[u] for u in e.vertices))
        for e in H.edges
        if all(u in relabel for u in e.vertices)
    )
    return Hypergraph(len(X), H.k, edges), relabel


def delete_vertices(H: Hypergraph, X: Iterable[int]) -> Hypergraph:
    X = set(X)
    for v in X:
        if not 0 <= v < H.n:
            raise HypergraphError(f"vertex {v} out of range for n={H.n}")
    return induced_subgraph(H, [v for v in range(H.n) if v not in X])[0]


def delete_edge(H: Hypergraph, edge_id: int) -> Hypergraph:
    H.edge(edge_id)
    return Hypergraph(H.n, H.k, tuple(e for e in H.edges if e.id != edge_id))


def disjoint_union(*graphs: Hypergraph) -> Hypergraph:
    """Place the graphs side by side; edge identifiers are renumbered."""
    if not graphs:
        raise HypergraphError("disjoint_union needs at least one hypergraph")
    k = graphs[0].k
    offset = 0
    vertex_lists = []
    for G in graphs:
        if G.k != k:
            raise HypergraphError("all parts of a disjoint union must share uniformity")
        vertex_lists.extend([u + offset for u in e.vertices] for e in G.edges)
        offset += G.n
    return Hypergraph.from_edges(offset, k, vertex_lists)


def add_isolated_vertices(H: Hypergraph, count: int = 1) -> Hypergraph:
    return Hypergraph(H.n + count, H.k, H.edges)


def connected_components(H: Hypergraph) -> list[list[int]]:
    """Vertex sets of connected components, each sorted, ordered by minimum."""
    parent = list(range(H.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in H.edges:
        r = find(e.vertices[0])
        for u in e.vertices[1:]:
            s = find(u)
            if s != r:
                parent[s] = r
    groups: dict[int, list[int]] = {}
    for v in range(H.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values(), key=lambda c: c[0])


def is_connected(H: Hypergraph) -> bool:
    return H.n <= 1 or len(connected_components(H)) == 1


def is_linear(H: Hypergraph) -> bool:
    """True if no two distinct edges share two or more vertices."""
    pairs = set()
    for e in H.edges:
        vs = e.vertices
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                if (vs[i], vs[j]) in pairs:
                    return False
                pairs.add((vs[i], vs[j]))
    return True


def has_berge_cycle(H: Hypergraph) -> bool:
    """A Berge-cycle exists iff the vertex/edge incidence graph has a cycle."""
    # union-find over vertices 0..n-1 and edge nodes n..n+m-1
    parent = list(range(H.n + H.m))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for idx, e in enumerate(H.edges):
        node = H.n + idx
        for u in e.vertices:
            a, b = find(node), find(u)
            if a == b:
                return True
            parent[a] = b
    return False


def is_k_tree(H: Hypergraph) -> bool:
    """True if ``H`` has no Berge-cycle (a forest of k-trees)."""
    return not has_berge_cycle(H)


# ---------------------------------------------------------------------------
# matchings
# ---------------------------------------------------------------------------

def matching_counts(H: Hypergraph) -> list[int]:
    """``[p(H,0), p(H,1), ...]`` up to ``floor(n/k)`` by backtracking over edges."""
    masks = [sum(1 << u for u in e.vertices) for e in H.edges]
    top = H.n // H.k
    counts = [0] * (top + 1)

    def extend(start, used, size):
        counts[size] += 1
        for j in range(start, len(masks)):
            if not masks[j] & used:
                extend(j + 1, used | masks[j], size + 1)

    extend(0, 0, 0)
    return counts


def count_matchings(H: Hypergraph, i: int) -> int:
    if i < 0:
        raise HypergraphError("matching size must be non-negative")
    if i > H.n // H.k:
        return 0
    return matching_counts(H)[i]


def has_perfect_matching(H: Hypergraph) -> bool:
    if H.n % H.k:
        return False
    return count_matchings(H, H.n // H.k) > 0


def berge_path_check(H: Hypergraph, sequence: Sequence[int]) -> bool:
    """Check an alternating ``(v0, e1, v1, ..., el, vl)`` sequence is a Berge-path.

    Entries at even positions are vertices, at odd positions edge identifiers.
    """
    if len(sequence) % 2 == 0:
        raise HypergraphError("a Berge sequence must alternate vertex, edge, ..., vertex")
    verts = list(sequence[0::2])
    edge_ids = list(sequence[1::2])
    for v in verts:
        if not 0 <= v < H.n:
            raise HypergraphError(f"vertex {v} out of range for n={H.n}")
    by_id = {e.id: e for e in H.edges}
    for eid in edge_ids:
        if eid not in by_id:
            raise HypergraphError(f"unknown edge identifier {eid}")
    if len(set(verts)) != len(verts) or len(set(edge_ids)) != len(edge_ids):
        return False
    for i, eid in enumerate(edge_ids):
        vs = by_id[eid].vertices
        if verts[i] not in vs or verts[i + 1] not in vs:
            return False
    return True


# ---------------------------------------------------------------------------
# .hg text format
# ---------------------------------------------------------------------------

def parse_hg(text: str) -> Hypergraph:
    """Parse ``.hg`` text: header ``n k`` then one edge per line; ``#`` comments."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise HypergraphError("empty .hg input: missing 'n k' header")
    header = lines[0].split()
    if len(header) != 2:
        raise HypergraphError(f"malformed .hg header {lines[0]!r}, expected 'n k'")
    try:
        n, k = int(header[0]), int(header[1])
        edges = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise HypergraphError(f"non-integer token in .hg input: {exc}") from None
    return Hypergraph.from_edges(n, k, edges)


def to_hg(H: Hypergraph) -> str:
    out = [f"{H.n} {H.k}"]
    out.extend(" ".join(map(str, e.vertices)) for e in H.edges)
    return "\n".join(out) + "\n"


def read_hg(path) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse_hg(fh.read())


def complete_hypergraph(n: int, k: int) -> Hypergraph:
    from itertools import combinations

    return Hypergraph.from_edges(n, k, combinations(range(n), k))
