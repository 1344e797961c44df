"""Aligned and misaligned teeth: equal decks one size below the reconstruction bound.

Vertex names: ``u{i}`` on the top path, ``b{j}`` on the bottom path and
``c{i}^{j}`` for the ``k-2`` interior vertices of column ``i``.  The bottom
edges of the misaligned teeth are ``f_j = {b_j, c_j, b_{j+1}}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from .core import Hypergraph, has_perfect_matching, induced_subgraph, to_hg
from .deck import are_isomorphic, deck_equal, make_deck
from .poly import IntPolynomial, matching_polynomial


class TeethError(ValueError):
    pass


@dataclass(frozen=True)
class TeethLayout:
    kind: str  # "aligned" or "misaligned"
    k: int
    ell: int
    names: tuple[str, ...]
    hypergraph: Hypergraph
    edge_names: tuple[str, ...]

    @property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def vertices(self, names) -> list[int]:
        idx = self.index
        return [idx[name] for name in names]

    def subset_names(self, vertices) -> list[str]:
        return [self.names[v] for v in sorted(vertices)]


def _column(k, i):
    return [f"c{i}^{j}" for j in range(1, k - 1)]


def _build(kind, k, ell, tops, bottoms, e_range, f_range, isolated):
    if k < 2 or ell < 0:
        raise TeethError(f"teeth need k >= 2 and ell >= 0, got k={k}, ell={ell}")
    names = [f"u{i}" for i in tops]
    for i in range(ell + 1):
        names += _column(k, i)
    names += [f"b{j}" for j in bottoms]
    if isolated:
        names.append("w")
    idx = {name: i for i, name in enumerate(names)}
    edges, edge_names = [], []
    for i in e_range:
        edges.append([idx[f"u{i}"], *(idx[c] for c in _column(k, i)), idx[f"u{i + 1}"]])
        edge_names.append(f"e{i}")
    for j in f_range:
        edges.append([idx[f"b{j}"], *(idx[c] for c in _column(k, j)), idx[f"b{j + 1}"]])
        edge_names.append(f"f{j}")
    H = Hypergraph.from_edges(len(names), k, edges)
    return TeethLayout(kind, k, ell, tuple(names), H, tuple(edge_names))


def aligned_teeth(k: int, ell: int, isolated: bool = False) -> TeethLayout:
    """``AT(k, ell)``: top edges ``e_0..e_ell``, bottom edges ``f_1..f_{ell-1}``."""
    return _build("aligned", k, ell, range(ell + 2), range(1, ell + 1), range(ell + 1), range(1, ell), isolated)


def misaligned_teeth(k: int, ell: int, isolated: bool = False) -> TeethLayout:
    """``MT(k, ell)``: top edges ``e_0..e_{ell-1}``, bottom edges ``f_1..f_ell``."""
    return _build("misaligned", k, ell, range(ell + 1), range(1, ell + 2), range(ell), range(1, ell + 1), isolated)


def _flip_name(name: str) -> str:
    if name[0] == "u" and name != "u0":
        return "b" + name[1:]
    if name[0] == "b":
        return "u" + name[1:]
    return name


def flip_map(k: int, ell: int) -> list[int]:
    """``phi[v]`` = image in MT of AT vertex ``v``: swaps ``u_i <-> b_i`` for ``i >= 1``."""
    at, mt = aligned_teeth(k, ell), misaligned_teeth(k, ell)
    mt_index = mt.index
    return [mt_index[_flip_name(name)] for name in at.names]


def teeth_bijection(k: int, ell: int, J) -> tuple[frozenset[int], str]:
    """Image of an AT vertex subset under the explicit deck bijection, with its case label.

    Cases: ``"1"`` flips everything; ``"2"``/``"3b"`` swap only the tail vertex
    ``u_{ell+1} -> b_{ell+1}``; ``"3a"`` flips everything right of the first
    column ``t`` that keeps at most ``k-2`` of its vertices.
    """
    if ell < 1:
        raise TeethError("the bijection is only defined for ell >= 1")
    at = aligned_teeth(k, ell)
    J = frozenset(J)
    size = (k - 1) * (ell + 1)
    if len(J) != size:
        raise TeethError(f"|J| must be {size}, got {len(J)}")
    idx = at.index
    phi = flip_map(k, ell)
    x1 = {idx["u0"], *(idx[c] for c in _column(k, 0))}
    x2 = {idx[f"u{ell + 1}"], *(idx[c] for c in _column(k, ell))}

    def flip(S):
        return {phi[v] for v in S}

    # identity on AT-named vertices outside the flipped part
    mt_index = misaligned_teeth(k, ell).index

    def keep(S):
        return {mt_index[at.names[v]] for v in S}

    if not x1 <= J:
        return frozenset(flip(J)), "1"
    if not x2 <= J:
        return frozenset(keep(J - x2) | flip(J & x2)), "2"
    for t in range(1, ell):
        column = {idx[f"u{t}"], idx[f"b{t}"], *(idx[c] for c in _column(k, t))}
        if len(column & J) <= k - 2:
            Y = {idx[f"u{i}"] for i in range(t + 1)} | {idx[f"b{j}"] for j in range(1, t + 1)}
            for i in range(t + 1):
                Y |= {idx[c] for c in _column(k, i)}
            return frozenset(keep(J & Y) | flip(J - Y)), "3a"
    return frozenset(keep(J - x2) | flip(J & x2)), "3b"


@dataclass
class SharpnessReport:
    k: int
    ell: int
    n: int
    t: int
    isolated: bool
    decks_equal: bool
    next_decks_differ: bool
    aligned_polynomial: IntPolynomial
    misaligned_polynomial: IntPolynomial
    parity_ok: bool
    eta: dict[str, Any] = field(default_factory=dict)

    @property
    def polynomials_differ(self) -> bool:
        return self.aligned_polynomial != self.misaligned_polynomial

    @property
    def passed(self) -> bool:
        return self.decks_equal and self.next_decks_differ and self.polynomials_differ and self.parity_ok

    @property
    def eta_ok(self) -> bool:
        return self.eta.get("status") in ("pass", "not applicable")

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "ell": self.ell,
            "n": self.n,
            "t": self.t,
            "isolated_vertex": self.isolated,
            "decks_equal_at_t": self.decks_equal,
            "decks_differ_at_t_plus_1": self.next_decks_differ,
            "aligned_polynomial": self.aligned_polynomial.to_json(),
            "misaligned_polynomial": self.misaligned_polynomial.to_json(),
            "polynomials_differ": self.polynomials_differ,
            "parity_ok": self.parity_ok,
            "eta": self.eta,
            "pass": self.passed,
        }


def verify_eta(k: int, ell: int) -> dict[str, Any]:
    """Exhaustively check the bijection: injective, size-preserving, isomorphic images."""
    if ell < 1:
        return {"status": "not applicable", "reason": "ell = 0 is settled by direct deck comparison"}
    at, mt = aligned_teeth(k, ell), misaligned_teeth(k, ell)
    size = (k - 1) * (ell + 1)
    images: dict[frozenset, frozenset] = {}
    cases: dict[str, int] = {}
    failures = []
    for J in combinations(range(at.hypergraph.n), size):
        image, case = teeth_bijection(k, ell, J)
        cases[case] = cases.get(case, 0) + 1
        witness = {"J": at.subset_names(J), "case": case, "image": mt.subset_names(image)}
        if len(image) != size:
            failures.append({**witness, "problem": "size changed"})
            continue
        if image in images:
            failures.append({**witness, "problem": "not injective", "collides_with": at.subset_names(images[image])})
        images[image] = frozenset(J)
        ok, _ = are_isomorphic(induced_subgraph(at.hypergraph, J)[0], induced_subgraph(mt.hypergraph, image)[0])
        if not ok:
            failures.append({**witness, "problem": "induced subgraphs not isomorphic"})
    return {
        "status": "fail" if failures else "pass",
        "subsets": len(images),
        "cases": dict(sorted(cases.items())),
        "failures": failures,
    }


def verify_sharpness(k: int, ell: int, isolated: bool = False, check_eta: bool = True) -> SharpnessReport:
    at = aligned_teeth(k, ell, isolated)
    mt = misaligned_teeth(k, ell, isolated)
    A, M = at.hypergraph, mt.hypergraph
    n = A.n
    t = (k - 1) * n // k
    equal = deck_equal(make_deck(A, t), make_deck(M, t))
    differ_next = True
    if t + 1 <= n:
        differ_next = not deck_equal(make_deck(A, t + 1), make_deck(M, t + 1))
    parity = has_perfect_matching(A) == (ell % 2 == 0) and has_perfect_matching(M) == (ell % 2 == 1)
    if isolated:
        # an isolated vertex rules out perfect matchings; compare the unpadded pair instead
        parity = (
            has_perfect_matching(aligned_teeth(k, ell).hypergraph) == (ell % 2 == 0)
            and has_perfect_matching(misaligned_teeth(k, ell).hypergraph) == (ell % 2 == 1)
        )
    if not check_eta:
        eta = {"status": "skipped"}
    elif isolated:
        eta = {"status": "not applicable", "reason": "bijection is defined on the unpadded teeth"}
    else:
        eta = verify_eta(k, ell)
    return SharpnessReport(
        k, ell, n, t, isolated, equal, differ_next, matching_polynomial(A), matching_polynomial(M), parity, eta
    )


def teeth_files(k: int, ell: int, isolated: bool = False) -> dict[str, str]:
    return {
        "aligned": to_hg(aligned_teeth(k, ell, isolated).hypergraph),
        "misaligned": to_hg(misaligned_teeth(k, ell, isolated).hypergraph),
    }
