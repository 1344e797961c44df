"""Executable checks of the polynomial identities linking matchings, walk-trees and digraphs.

Ratio identities are checked by cross-multiplying integer polynomials, so no
rational-function normalization is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from .core import Hypergraph, HypergraphError, delete_vertices, is_connected, is_k_tree, to_hg
from .poly import (
    IntPolynomial,
    char_polynomial,
    derivative,
    matching_polynomial,
    reversed_poly,
    series_quotient,
)
from .walktree import Digraph, digraph_of, walk_tree


@dataclass
class IdentityReport:
    identity: str
    instance: str
    passed: bool
    witness: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.passed and not self.witness:
            raise ValueError("a failing identity report must carry a witness")

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "instance": self.instance,
            "pass": self.passed,
            "witness": self.witness,
        }


def _poly_witness(**polys: IntPolynomial) -> dict:
    return {name: p.to_json() for name, p in polys.items()}


def _describe(H: Hypergraph) -> str:
    return to_hg(H).strip().replace("\n", "; ")


def verify_godsil_identity(H: Hypergraph, v: int, budget: int | None = None) -> IdentityReport:
    """``m(H-v) * m(T) == m(T-root) * m(H)`` for ``T = T(H, v)``; plus ``m(H) | m(T)`` if connected."""
    T = walk_tree(H, v, budget).hypergraph
    m_h = matching_polynomial(H)
    m_hv = matching_polynomial(delete_vertices(H, [v]))
    m_t = matching_polynomial(T, method="forest")
    m_tv = matching_polynomial(delete_vertices(T, [0]), method="forest")
    lhs, rhs = m_hv * m_t, m_tv * m_h
    ok = lhs == rhs
    witness = {}
    if not ok:
        witness = _poly_witness(lhs=lhs, rhs=rhs)
    if is_connected(H):
        _, rem = m_t.divmod(m_h)
        if rem:
            ok = False
            witness.update(_poly_witness(divisibility_remainder=rem))
    return IdentityReport("godsil", f"root {v} of {_describe(H)}", ok, witness)


def verify_tree_char_identity(T: Hypergraph, orderings: Mapping[int, Sequence[int]] | None = None) -> IdentityReport:
    """``m(T) == chi(D(T))`` for a Berge-acyclic ``T`` under the given edge orderings."""
    if not is_k_tree(T):
        raise HypergraphError("tree identity needs a hypergraph without Berge-cycles")
    m_t = matching_polynomial(T)
    chi = char_polynomial(digraph_of(T, orderings))
    ok = m_t == chi
    witness = {} if ok else _poly_witness(matching=m_t, characteristic=chi)
    return IdentityReport("tree-char", _describe(T), ok, witness)


def verify_source_sink_reduction(D: Digraph, v: int) -> IdentityReport:
    if not (D.is_source(v) or D.is_sink(v)):
        raise ValueError(f"vertex {v} is neither a source nor a sink")
    before = char_polynomial(D)
    after = char_polynomial(D.without_arcs_at(v))
    ok = before == after
    witness = {} if ok else _poly_witness(before=before, after=after)
    return IdentityReport("source-sink", f"vertex {v} of {sorted(D.arcs)}", ok, witness)


def closed_walk_counts_digraph(D: Digraph, s: int, L: int) -> list[int]:
    """``d[l]`` = closed walks of length ``l`` from ``s``: the (s, s) entry of ``A**l``."""
    if not 0 <= s < D.n:
        raise ValueError(f"start vertex {s} out of range")
    out = D.out_neighbors()
    row = [0] * D.n
    row[s] = 1
    counts = [1]
    for _ in range(L):
        nxt = [0] * D.n
        for u, c in enumerate(row):
            if c:
                for w in out[u]:
                    nxt[w] += c
        row = nxt
        counts.append(row[s])
    return counts


def closed_walk_counts_series(H: Hypergraph, v: int, L: int) -> list[int]:
    """Closed-walk counts at the root of ``D(H, v)`` from matching polynomials alone.

    The generating function is ``rev(m(H-v)) / rev(m(H))``; no walk-tree is built.
    """
    if not 0 <= v < H.n:
        raise HypergraphError(f"vertex {v} out of range for n={H.n}")
    numer = reversed_poly(matching_polynomial(delete_vertices(H, [v])), H.n - 1)
    denom = reversed_poly(matching_polynomial(H), H.n)
    series = series_quotient(numer, denom, L + 1)
    if not series.is_integral() or any(c < 0 for c in series.coeffs):
        raise ArithmeticError(f"closed-walk series has a non-integral or negative coefficient: {series.coeffs}")
    return series.as_ints()


def verify_derivative_identity(H: Hypergraph) -> IdentityReport:
    """``m'(H) == sum_v m(H - v)``."""
    lhs = derivative(matching_polynomial(H))
    rhs = IntPolynomial()
    for v in range(H.n):
        rhs = rhs + matching_polynomial(delete_vertices(H, [v]))
    ok = lhs == rhs
    witness = {} if ok else _poly_witness(derivative=lhs, vertex_deletions=rhs)
    return IdentityReport("derivative", _describe(H), ok, witness)


def verify_walk_routes(H: Hypergraph, v: int, L: int, budget: int | None = None) -> IdentityReport:
    """Digraph walk counts at the root of ``D(H, v)`` agree with the series route."""
    from .walktree import digraph_of_walk_tree

    by_digraph = closed_walk_counts_digraph(digraph_of_walk_tree(H, v, budget), 0, L)
    by_series = closed_walk_counts_series(H, v, L)
    ok = by_digraph == by_series
    witness = {} if ok else {"digraph": by_digraph, "series": by_series}
    return IdentityReport("walks", f"root {v} of {_describe(H)}", ok, witness)
