"""Conflict-free walks, walk-trees, and the cycle digraphs of linear hypergraphs."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import Edge, Hypergraph, HypergraphError, is_linear

DEFAULT_BUDGET = 50_000


class WalkTreeBudgetError(RuntimeError):
    """The walk-tree would exceed the configured vertex budget."""


def default_budget() -> int:
    raw = os.environ.get("HYPERMATCH_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"HYPERMATCH_BUDGET must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class ConflictFreeWalk:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    conflict: frozenset[int]

    @property
    def terminal(self) -> int:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.edges)

    def sequence(self) -> list[int]:
        """Alternating ``[v0, e1, v1, ...]`` as accepted by ``berge_path_check``."""
        out = [self.vertices[0]]
        for e, v in zip(self.edges, self.vertices[1:]):
            out += [e, v]
        return out

    def label(self) -> str:
        parts = [str(self.vertices[0])]
        for e, v in zip(self.edges, self.vertices[1:]):
            parts += [f"e{e}", str(v)]
        return "(" + ",".join(parts) + ")"


def step_conflict(edge: Edge, start: int, end: int) -> frozenset[int]:
    """Vertices blocked by the step ``start -e-> end``: ``start`` and edge-mates below ``end``."""
    return frozenset([start]) | frozenset(u for u in edge.vertices if u != start and u != end and u < end)


def _extensions(H: Hypergraph, incident, walk: ConflictFreeWalk):
    """Usable edges from the end of ``walk`` with their one-step child walks."""
    u0 = walk.terminal
    for e in incident[u0]:
        if walk.edges and not walk.conflict.isdisjoint(e.vertices):
            continue
        children = [
            ConflictFreeWalk(
                walk.vertices + (u,), walk.edges + (e.id,), walk.conflict | step_conflict(e, u0, u)
            )
            for u in e.vertices
            if u != u0
        ]
        yield e, children


def _incidence(H):
    incident = [[] for _ in range(H.n)]
    for e in H.edges:
        for u in e.vertices:
            incident[u].append(e)
    return incident


def _check_root(H, v):
    if not 0 <= v < H.n:
        raise HypergraphError(f"root vertex {v} out of range for n={H.n}")


def enumerate_conflict_free_walks(H: Hypergraph, v: int, budget: int | None = None) -> list[ConflictFreeWalk]:
    """All conflict-free walks from ``v`` in depth-first order, ``(v)`` first."""
    return walk_tree(H, v, budget).walks


@dataclass(frozen=True)
class WalkTree:
    """The k-walk-tree ``T(H, v)``: tree vertex ``i`` is the walk ``walks[i]``; root is 0."""

    host: Hypergraph
    root_vertex: int
    hypergraph: Hypergraph
    walks: list[ConflictFreeWalk]
    source_edge: tuple[int, ...]  # host edge behind each tree hyperedge

    @property
    def size(self) -> int:
        return len(self.walks)

    @property
    def pi(self) -> list[int]:
        return [w.terminal for w in self.walks]

    def labels(self) -> list[str]:
        return [w.label() for w in self.walks]

    def export(self) -> str:
        """One tree hyperedge per line, each vertex written as its walk."""
        out = [f"# walk-tree of root {self.root_vertex}: {self.size} walks, {self.hypergraph.m} hyperedges"]
        for e in self.hypergraph.edges:
            out.append(" ".join(self.walks[i].label() for i in e.vertices))
        return "\n".join(out) + "\n"


def walk_tree(H: Hypergraph, v: int, budget: int | None = None) -> WalkTree:
    _check_root(H, v)
    if budget is None:
        budget = default_budget()
    incident = _incidence(H)
    walks = [ConflictFreeWalk((v,), (), frozenset())]
    tree_edges, sources = [], []
    stack = [0]
    while stack:
        idx = stack.pop()
        pending = []
        for e, children in _extensions(H, incident, walks[idx]):
            if len(walks) + len(children) > budget:
                raise WalkTreeBudgetError(
                    f"walk-tree from vertex {v} exceeds the budget of {budget} vertices"
                )
            start = len(walks)
            walks.extend(children)
            tree_edges.append((idx, *range(start, start + len(children))))
            sources.append(e.id)
            pending.extend(range(start, start + len(children)))
        stack.extend(reversed(pending))
    tree = Hypergraph(len(walks), H.k, tuple(Edge(i, vs) for i, vs in enumerate(tree_edges)))
    return WalkTree(H, v, tree, walks, tuple(sources))


# ---------------------------------------------------------------------------
# digraphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self):
        arcs = frozenset((int(u), int(w)) for u, w in self.arcs)
        for u, w in arcs:
            if u == w:
                raise ValueError(f"digraph loop at {u}")
            if not (0 <= u < self.n and 0 <= w < self.n):
                raise ValueError(f"arc ({u}, {w}) outside 0..{self.n - 1}")
        object.__setattr__(self, "arcs", arcs)

    def out_neighbors(self) -> list[list[int]]:
        out = [[] for _ in range(self.n)]
        for u, w in sorted(self.arcs):
            out[u].append(w)
        return out

    def is_source(self, v: int) -> bool:
        return all(w != v for _, w in self.arcs)

    def is_sink(self, v: int) -> bool:
        return all(u != v for u, _ in self.arcs)

    def delete_vertex(self, v: int) -> "Digraph":
        """``D - v`` with vertices above ``v`` shifted down by one."""
        def shift(a):
            return a - 1 if a > v else a

        return Digraph(self.n - 1, frozenset((shift(a), shift(b)) for a, b in self.arcs if v not in (a, b)))

    def without_arcs_at(self, v: int) -> "Digraph":
        return Digraph(self.n, frozenset(a for a in self.arcs if v not in a))

    def to_arc_list(self) -> str:
        return f"{self.n}\n" + "".join(f"{u} {w}\n" for u, w in sorted(self.arcs))


def parse_arc_list(text: str) -> Digraph:
    """``u v`` per line; an optional single-integer line fixes the vertex count."""
    n = None
    arcs = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        toks = ln.split()
        try:
            vals = [int(t) for t in toks]
        except ValueError:
            raise ValueError(f"malformed arc line {ln!r}") from None
        if len(vals) == 1 and n is None and not arcs:
            n = vals[0]
        elif len(vals) == 2:
            arcs.append(tuple(vals))
        else:
            raise ValueError(f"malformed arc line {ln!r}")
    if n is None:
        n = 1 + max((max(a) for a in arcs), default=-1)
    return Digraph(n, frozenset(arcs))


def digraph_of(L: Hypergraph, orderings: Mapping[int, Sequence[int]] | None = None) -> Digraph:
    """Replace each edge ``(w1..wk)`` of a linear hypergraph by the cycle ``w1 -> ... -> wk -> w1``.

    ``orderings`` maps edge identifiers to the vertex order; missing edges use
    increasing vertex order.
    """
    if not is_linear(L):
        raise HypergraphError("digraph_of needs a linear hypergraph")
    orderings = orderings or {}
    arcs = set()
    for e in L.edges:
        order = tuple(orderings.get(e.id, e.vertices))
        if sorted(order) != list(e.vertices):
            raise HypergraphError(f"ordering {order} is not a permutation of edge {e.id}")
        for i in range(len(order)):
            arcs.add((order[i], order[(i + 1) % len(order)]))
    return Digraph(L.n, frozenset(arcs))


def walk_tree_orderings(T: WalkTree) -> dict[int, tuple[int, ...]]:
    """Order every tree hyperedge by the host order of its terminal vertices."""
    pi = T.pi
    return {e.id: tuple(sorted(e.vertices, key=lambda w: pi[w])) for e in T.hypergraph.edges}


def digraph_of_walk_tree(H: Hypergraph, v: int, budget: int | None = None) -> Digraph:
    """``D(H, v)``: the walk-tree digraph; the root walk ``(v)`` is vertex 0."""
    T = walk_tree(H, v, budget)
    return digraph_of(T.hypergraph, walk_tree_orderings(T))
