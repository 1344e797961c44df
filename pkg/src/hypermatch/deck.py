"""Canonical forms, isomorphism tests and decks of induced sub-hypergraphs.

Canonical labeling is an individualization-refinement search: colour classes
are refined by incidence signatures until stable, then each vertex of the
first non-singleton class is individualized in turn.  Every discrete leaf
yields a relabeled sorted edge multiset and the lexicographically smallest one
is the canonical form.  Automorphisms found when two leaves coincide prune
sibling branches in the same orbit.
"""

from __future__ import annotations

import base64
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .core import Hypergraph, HypergraphError, induced_subgraph, parse_hg, to_hg


class DeckError(ValueError):
    pass


EdgeForm = tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# canonical labeling
# ---------------------------------------------------------------------------

def _rank(keys):
    order = {key: i for i, key in enumerate(sorted(set(keys)))}
    return [order[key] for key in keys]


def _refine(colors, edges, incidence):
    """Refine a colouring to the coarsest stable one; colour indices are invariant."""
    ncells = len(set(colors))
    while True:
        sigs = []
        for v, inc in enumerate(incidence):
            nbr = sorted(
                tuple(sorted(colors[u] for u in edges[j] if u != v)) for j in inc
            )
            sigs.append((colors[v], tuple(nbr)))
        new = _rank(sigs)
        count = max(new, default=-1) + 1
        if count == ncells:
            return colors
        colors, ncells = new, count


class _Search:
    def __init__(self, n, edges):
        self.n = n
        self.edges = edges
        self.incidence = [[] for _ in range(n)]
        for j, e in enumerate(edges):
            for u in e:
                self.incidence[u].append(j)
        self.best: EdgeForm | None = None
        self.best_labels: list[int] | None = None
        self.first: tuple[EdgeForm, list[int]] | None = None
        self.automorphisms: list[list[int]] = []

    def _form(self, labels) -> EdgeForm:
        return tuple(sorted(tuple(sorted(labels[u] for u in e)) for e in self.edges))

    def _record_automorphism(self, labels, other):
        # vertex v in this leaf has the label that other-vertex w has in the other leaf
        inverse = [0] * self.n
        for w, lab in enumerate(other):
            inverse[lab] = w
        gamma = [inverse[labels[v]] for v in range(self.n)]
        if any(gamma[v] != v for v in range(self.n)):
            self.automorphisms.append(gamma)

    def _leaf(self, labels):
        form = self._form(labels)
        if self.first is None:
            self.first = (form, labels)
        elif form == self.first[0]:
            self._record_automorphism(labels, self.first[1])
        if self.best is None or form < self.best:
            self.best, self.best_labels = form, labels
        elif form == self.best and self.best_labels is not self.first[1]:
            self._record_automorphism(labels, self.best_labels)

    def _orbits(self, prefix, candidates):
        parent = {v: v for v in candidates}

        def find(a):
            while parent[a] != a:
                a = parent[a]
            return a

        for gamma in self.automorphisms:
            if any(gamma[p] != p for p in prefix):
                continue
            for v in candidates:
                w = gamma[v]
                if w in parent:
                    a, b = find(v), find(w)
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return find

    def run(self, colors, prefix):
        colors = _refine(colors, self.edges, self.incidence)
        cells = Counter(colors)
        if len(cells) == self.n:
            self._leaf(colors)
            return
        target = min(c for c, size in cells.items() if size > 1)
        candidates = [v for v in range(self.n) if colors[v] == target]
        explored = []
        for w in candidates:
            if explored:
                find = self._orbits(prefix, candidates)
                if any(find(w) == find(x) for x in explored):
                    continue
            child = _rank([(c, 0 if v == w else 1) for v, c in enumerate(colors)])
            self.run(child, prefix + [w])
            explored.append(w)


_LABEL_CACHE: dict[tuple, tuple[EdgeForm, tuple[int, ...]]] = {}


def canonical_labeling(H: Hypergraph) -> tuple[EdgeForm, tuple[int, ...]]:
    """Return (canonical sorted edge multiset, labels) with ``labels[v]`` the new index of ``v``."""
    key = (H.n, H.k, tuple(e.vertices for e in H.edges))
    hit = _LABEL_CACHE.get(key)
    if hit is not None:
        return hit
    edges = [e.vertices for e in H.edges]
    if not edges:
        result = ((), tuple(range(H.n)))
    else:
        search = _Search(H.n, edges)
        degrees = [len(inc) for inc in search.incidence]
        search.run(_rank(degrees), [])
        result = (search.best, tuple(search.best_labels))
    _LABEL_CACHE[key] = result
    return result


def _encode(n: int, k: int, form: EdgeForm) -> bytes:
    body = ";".join(".".join(map(str, e)) for e in form)
    return f"{n},{k}|{body}".encode("ascii")


def canonical_form(H: Hypergraph) -> bytes:
    """Byte string identifying the isomorphism class of ``H`` (edge multiplicities kept)."""
    form, _ = canonical_labeling(H)
    return _encode(H.n, H.k, form)


def decode_canonical(canon: bytes) -> Hypergraph:
    """Rebuild the canonically labeled representative from its form."""
    head, _, body = canon.decode("ascii").partition("|")
    n, k = (int(tok) for tok in head.split(","))
    edges = [tuple(int(tok) for tok in part.split(".")) for part in body.split(";")] if body else []
    return Hypergraph.from_edges(n, k, edges)


def canonical_representative(H: Hypergraph) -> Hypergraph:
    return decode_canonical(canonical_form(H))


def are_isomorphic(H1: Hypergraph, H2: Hypergraph) -> tuple[bool, list[int] | None]:
    """Compare canonical forms; on success the witness maps vertex ``v`` of H1 to ``witness[v]`` of H2."""
    if (H1.n, H1.k, H1.m) != (H2.n, H2.k, H2.m):
        return False, None
    f1, lab1 = canonical_labeling(H1)
    f2, lab2 = canonical_labeling(H2)
    if f1 != f2:
        return False, None
    inverse2 = [0] * H2.n
    for v, lab in enumerate(lab2):
        inverse2[lab] = v
    return True, [inverse2[lab1[v]] for v in range(H1.n)]


def is_isomorphism(H1: Hypergraph, H2: Hypergraph, mapping) -> bool:
    """True if ``mapping`` carries the edge multiset of H1 onto that of H2."""
    if H1.n != H2.n or sorted(mapping) != list(range(H2.n)):
        return False
    image = Counter(tuple(sorted(mapping[u] for u in e.vertices)) for e in H1.edges)
    return image == Counter(e.vertices for e in H2.edges)


# ---------------------------------------------------------------------------
# decks
# ---------------------------------------------------------------------------

@dataclass
class Deck:
    """Multiset of isomorphism classes of ``t``-vertex induced sub-hypergraphs."""

    n: int
    k: int
    t: int
    classes: dict[bytes, int] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return sum(self.classes.values())

    def members(self) -> list[tuple[Hypergraph, int]]:
        """Canonical representatives with multiplicities, sorted by form."""
        return [(decode_canonical(c), m) for c, m in sorted(self.classes.items())]

    def __eq__(self, other):
        if not isinstance(other, Deck):
            return NotImplemented
        return (self.n, self.k, self.t, self.classes) == (other.n, other.k, other.t, other.classes)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "t": self.t,
            "classes": [
                {
                    "canon": base64.b64encode(c).decode("ascii"),
                    "mult": m,
                    "sample": to_hg(decode_canonical(c)),
                }
                for c, m in sorted(self.classes.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Deck":
        try:
            deck = cls(int(data["n"]), int(data["k"]), int(data["t"]))
            for entry in data["classes"]:
                if "canon" in entry:
                    canon = base64.b64decode(entry["canon"], validate=True)
                else:
                    canon = canonical_form(parse_hg(entry["sample"]))
                deck.classes[canon] = deck.classes.get(canon, 0) + int(entry["mult"])
        except (KeyError, TypeError, ValueError, HypergraphError) as exc:
            raise DeckError(f"malformed deck JSON: {exc}") from None
        for canon in deck.classes:
            try:
                member = decode_canonical(canon)
            except (ValueError, IndexError) as exc:
                raise DeckError(f"malformed canonical form in deck JSON: {exc}") from None
            if member.n != deck.t or member.k != deck.k:
                raise DeckError("deck member does not match the deck's t and k")
        return deck


def _canon_subsets(H, subsets):
    return Counter(canonical_form(induced_subgraph(H, X)[0]) for X in subsets)


def make_deck(H: Hypergraph, t: int, jobs: int = 1) -> Deck:
    """The deck ``C(H, t)``; with ``jobs > 1`` subsets are canonicalized in worker processes."""
    if not 0 <= t <= H.n:
        raise DeckError(f"deck size t={t} outside 0..{H.n}")
    subsets = list(combinations(range(H.n), t))
    if jobs > 1 and len(subsets) > jobs:
        chunk = math.ceil(len(subsets) / jobs)
        parts = [subsets[i:i + chunk] for i in range(0, len(subsets), chunk)]
        total: Counter = Counter()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for counts in pool.map(_canon_subsets, [H] * len(parts), parts):
                total.update(counts)
    else:
        total = _canon_subsets(H, subsets)
    return Deck(H.n, H.k, t, dict(total))


def deck_equal(D1: Deck, D2: Deck) -> bool:
    if (D1.n, D1.k, D1.t) != (D2.n, D2.k, D2.t):
        raise DeckError(
            f"cannot compare decks with parameters {(D1.n, D1.k, D1.t)} and {(D2.n, D2.k, D2.t)}"
        )
    return D1.classes == D2.classes


def deck_restrict(D: Deck, s: int) -> Deck:
    """Deck at ``s <= t`` implied by ``D``: each s-set lies in C(n-s, t-s) of the t-sets."""
    if not 0 <= s <= D.t:
        raise DeckError(f"cannot restrict a t={D.t} deck to s={s}")
    total: Counter = Counter()
    for member, mult in D.members():
        for canon, c in make_deck(member, s).classes.items():
            total[canon] += c * mult
    divisor = math.comb(D.n - s, D.t - s)
    out = {}
    for canon, c in total.items():
        q, r = divmod(c, divisor)
        if r:
            raise DeckError(f"restricted multiplicity {c} not divisible by {divisor}: corrupt deck")
        out[canon] = q
    return Deck(D.n, D.k, s, out)


def isomorphism_classes(graphs: Iterable[Hypergraph]) -> list[Hypergraph]:
    """One representative per isomorphism class, in first-seen order."""
    seen = {}
    for G in graphs:
        seen.setdefault(canonical_form(G), G)
    return list(seen.values())
