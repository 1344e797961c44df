"""Recover the matching polynomial from the deck of ``floor((k-1)n/k) + 1``-vertex subgraphs.

Closed walks at the root of ``D(H', v)`` are stratified by the number ``m`` of
host vertices they visit.  Walks visiting a set inside ``X`` are exactly the
closed walks of ``D(H'[X], v)``, whose generating function is a ratio of
matching polynomials, so exact-support counts follow by Möbius inversion over
subsets.  Summing over a deck double-counts each stratum ``C(n-m, n'-m)``
times; dividing out yields the power sums of the host polynomial, and Newton's
identities finish the job.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .core import Hypergraph, HypergraphError
from .deck import Deck, canonical_form
from .poly import (
    IntPolynomial,
    NewtonError,
    X,
    poly_from_power_sums,
    reversed_poly,
    series_quotient,
)
from .walktree import walk_tree, digraph_of, walk_tree_orderings


class ReconstructionError(ArithmeticError):
    def __init__(self, message: str, trace: "ReconstructionTrace"):
        super().__init__(message)
        self.trace = trace


def deck_size_for(n: int, k: int) -> int:
    """``n' = floor((k-1) n / k) + 1``."""
    return (k - 1) * n // k + 1


def support_bound(ell: int, k: int) -> int:
    """Largest possible number of host vertices on a closed walk of length ``ell``."""
    return (k - 1) * ell // k + 1


@dataclass
class WalkSupportCounts:
    """``table[v][l][m]``: closed walks of length ``l`` at the root of ``D(H, v)`` visiting ``m`` host vertices."""

    n: int
    L: int
    table: list[list[list[int]]]

    def totals(self) -> list[list[int]]:
        """Sum over roots: ``[l][m]``."""
        out = [[0] * (self.n + 1) for _ in range(self.L + 1)]
        for rows in self.table:
            for ell, row in enumerate(rows):
                for m, c in enumerate(row):
                    out[ell][m] += c
        return out

    def walk_counts(self, v: int) -> list[int]:
        return [sum(row) for row in self.table[v]]


# ---------------------------------------------------------------------------
# series route
# ---------------------------------------------------------------------------

def subset_matching_polynomials(H: Hypergraph) -> list[IntPolynomial]:
    """``m(H[S])`` for every vertex bitmask ``S`` via deletion of the top vertex."""
    masks = [sum(1 << u for u in e.vertices) for e in H.edges]
    by_top = [[] for _ in range(H.n)]
    for mask, e in zip(masks, H.edges):
        by_top[e.vertices[-1]].append(mask)
    polys = [IntPolynomial([1])] * (1 << H.n)
    for S in range(1, 1 << H.n):
        top = S.bit_length() - 1
        rest = S ^ (1 << top)
        acc = polys[rest] * X
        for mask in by_top[top]:
            if mask & S == mask:
                acc = acc - polys[S ^ mask]
        polys[S] = acc
    return polys


def _mobius(values: list[list[int]], bits: int) -> None:
    """In-place subset Möbius transform of vector-valued ``values`` over ``bits`` bits."""
    for b in range(bits):
        bit = 1 << b
        for S in range(1 << bits):
            if S & bit:
                lo, hi = values[S ^ bit], values[S]
                values[S] = [h - l for h, l in zip(hi, lo)]


def _series_row(H: Hypergraph, v: int, L: int, polys: list[IntPolynomial]) -> list[list[int]]:
    others = [u for u in range(H.n) if u != v]
    bits = len(others)
    values = []
    for sub in range(1 << bits):
        Y = 1 << v
        for i in range(bits):
            if sub >> i & 1:
                Y |= 1 << others[i]
        size = Y.bit_count()
        numer = reversed_poly(polys[Y ^ (1 << v)], size - 1)
        denom = reversed_poly(polys[Y], size)
        series = series_quotient(numer, denom, L + 1)
        if not series.is_integral():
            raise ArithmeticError(f"non-integral closed-walk series for support mask {Y:b}")
        values.append(series.as_ints())
    _mobius(values, bits)
    row = [[0] * (H.n + 1) for _ in range(L + 1)]
    for sub, counts in enumerate(values):
        m = 1 + sub.bit_count()
        for ell, c in enumerate(counts):
            if c < 0:
                raise ArithmeticError(f"negative exact-support walk count {c} (l={ell}, m={m})")
            row[ell][m] += c
    return row


def support_counts_series(H: Hypergraph, v: int, L: int) -> list[list[int]]:
    """Row ``[l][m]`` for root ``v`` from matching-polynomial ratios of induced subgraphs."""
    if not 0 <= v < H.n:
        raise HypergraphError(f"vertex {v} out of range for n={H.n}")
    return _series_row(H, v, L, subset_matching_polynomials(H))


def support_counts(H: Hypergraph, L: int, method: str = "series", budget: int | None = None) -> WalkSupportCounts:
    if method == "series":
        polys = subset_matching_polynomials(H)
        table = [_series_row(H, v, L, polys) for v in range(H.n)]
    elif method == "dfs":
        table = [support_counts_dfs(H, v, L, budget) for v in range(H.n)]
    else:
        raise ValueError(f"unknown support-count method {method!r}")
    return WalkSupportCounts(H.n, L, table)


# ---------------------------------------------------------------------------
# walk-tree route (oracle)
# ---------------------------------------------------------------------------

def support_counts_dfs(H: Hypergraph, v: int, L: int, budget: int | None = None) -> list[list[int]]:
    """Row ``[l][m]`` by walking ``D(H, v)`` from its root and tracking visited host vertices."""
    T = walk_tree(H, v, budget)
    D = digraph_of(T.hypergraph, walk_tree_orderings(T))
    out = D.out_neighbors()
    pi = T.pi
    row = [[0] * (H.n + 1) for _ in range(L + 1)]
    row[0][1] = 1
    # frontier: (tree vertex, visited host-vertex mask) -> number of walks
    frontier = {(0, 1 << v): 1}
    for ell in range(1, L + 1):
        nxt: dict[tuple[int, int], int] = {}
        for (node, support), count in frontier.items():
            for w in out[node]:
                key = (w, support | (1 << pi[w]))
                nxt[key] = nxt.get(key, 0) + count
        frontier = nxt
        for (node, support), count in frontier.items():
            if node == 0:
                row[ell][support.bit_count()] += count
    return row


# ---------------------------------------------------------------------------
# reconstruction
# ---------------------------------------------------------------------------

@dataclass
class ReconstructionTrace:
    deck: dict[str, int]
    support_sums: list[list[int]] = field(default_factory=list)
    divisors: dict[int, int] = field(default_factory=dict)
    power_sums: list[int] = field(default_factory=list)
    polynomial: IntPolynomial | None = None
    matching_counts: list[int] = field(default_factory=list)
    checks: list[tuple[str, bool]] = field(default_factory=list)

    def check(self, name: str, ok: bool) -> bool:
        self.checks.append((name, ok))
        return ok

    def to_json(self) -> dict[str, Any]:
        return {
            "deck": self.deck,
            "support_sums": [[str(c) for c in row] for row in self.support_sums],
            "divisors": {str(m): str(d) for m, d in self.divisors.items()},
            "power_sums": [str(p) for p in self.power_sums],
            "polynomial": self.polynomial.to_json() if self.polynomial is not None else None,
            "matching_counts": [str(c) for c in self.matching_counts],
            "checks": [{"check": name, "pass": ok} for name, ok in self.checks],
        }


_CLASS_TOTALS: dict[tuple[bytes, int], list[list[int]]] = {}


def class_support_totals(member: Hypergraph, L: int) -> list[list[int]]:
    """``sum_v d_{H'}(v, l, m)`` for one deck member; labeling-independent, so cached by class."""
    key = (canonical_form(member), L)
    hit = _CLASS_TOTALS.get(key)
    if hit is None:
        hit = support_counts(member, L).totals()
        _CLASS_TOTALS[key] = hit
    return hit


def reconstruct_matching_polynomial(deck: Deck, n: int, k: int) -> tuple[IntPolynomial, ReconstructionTrace]:
    n_prime = deck_size_for(n, k)
    trace = ReconstructionTrace({"n": n, "k": k, "t": deck.t, "classes": len(deck.classes), "size": deck.size})

    def fail(message):
        raise ReconstructionError(message, trace)

    if deck.k != k:
        fail(f"deck uniformity {deck.k} does not match k={k}")
    if deck.n != n:
        fail(f"deck was taken from a {deck.n}-vertex hypergraph, not n={n}")
    if deck.t != n_prime:
        fail(f"deck has t={deck.t}, reconstruction needs t={n_prime}")
    if not trace.check("deck size", deck.size == math.comb(n, n_prime)):
        fail(f"deck has {deck.size} members, expected C({n},{n_prime})")

    L = n
    S = [[0] * (n_prime + 1) for _ in range(L + 1)]
    for member, mult in deck.members():
        totals = class_support_totals(member, L)
        for ell in range(L + 1):
            for m in range(n_prime + 1):
                S[ell][m] += mult * totals[ell][m]
    trace.support_sums = S

    bound_ok = all(S[ell][m] == 0 for ell in range(1, L + 1) for m in range(n_prime + 1) if m > support_bound(ell, k))
    if not trace.check("support bound", bound_ok):
        fail("a closed walk visits more host vertices than its length allows")

    p = []
    for ell in range(1, L + 1):
        total = 0
        for m in range(1, n_prime + 1):
            divisor = math.comb(n - m, n_prime - m)
            trace.divisors[m] = divisor
            q, r = divmod(S[ell][m], divisor)
            if not trace.check(f"binomial division l={ell} m={m}", r == 0):
                fail(f"S({ell},{m}) = {S[ell][m]} is not divisible by C({n - m},{n_prime - m}) = {divisor}")
            total += q
        p.append(total)
    trace.power_sums = p
    if not trace.check("power sums vanish off multiples of k", all(p[ell - 1] == 0 for ell in range(1, L + 1) if ell % k)):
        fail("a power sum with k not dividing l is nonzero")

    try:
        poly, counts = poly_from_power_sums(p, n, k)
    except NewtonError as exc:
        trace.check("newton integrality", False)
        fail(str(exc))
    trace.check("newton integrality", True)
    if not trace.check("matching counts non-negative", all(c >= 0 for c in counts)):
        fail(f"recovered matching counts {counts} include a negative value")
    trace.polynomial, trace.matching_counts = poly, counts
    return poly, trace


def reconstruct_from_hypergraph(H: Hypergraph) -> tuple[IntPolynomial, ReconstructionTrace]:
    """Convenience round trip: build the deck of ``H`` and reconstruct from it."""
    from .deck import make_deck

    return reconstruct_matching_polynomial(make_deck(H, deck_size_for(H.n, H.k)), H.n, H.k)
