"""The acceptance suite as plain functions, shared by pytest and ``hypermatch selftest``.

Each check returns a :class:`CriterionResult`; the runtime limit is part of the
verdict, so a correct but too-slow run is reported as a failure.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from .core import (
    Hypergraph,
    complete_hypergraph,
    delete_vertices,
    has_perfect_matching,
    matching_counts,
)
from .deck import canonical_form, deck_equal, deck_restrict, make_deck
from .generators import (
    connected_simple_hypergraphs,
    random_connected_hypergraph,
    random_graph,
    random_hypergraph,
    random_k_tree,
    random_orderings,
    random_permutation,
)
from .identities import verify_godsil_identity, verify_tree_char_identity
from .poly import IntPolynomial, matching_polynomial, power_sums_from_poly
from .reconstruct import deck_size_for, reconstruct_matching_polynomial, support_counts
from .teeth import aligned_teeth, misaligned_teeth, verify_sharpness
from .tiling import count_perfect_tilings, reconstruct_tiling_polynomial, tiling_polynomial
from .walktree import walk_tree

DEFAULT_SEED = 20240601


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    seconds: float
    limit: float
    detail: str

    @property
    def ok(self) -> bool:
        return self.passed and self.seconds < self.limit

    def line(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        timing = f"{self.seconds:.2f}s < {self.limit:g}s" if self.seconds < self.limit else f"{self.seconds:.2f}s OVER {self.limit:g}s"
        return f"{verdict} criterion {self.number} [{self.name}] ({timing}): {self.detail}"


def _poly(terms: dict[int, int]) -> IntPolynomial:
    top = max(terms)
    return IntPolynomial([terms.get(i, 0) for i in range(top + 1)])


def worked_example(seed: int = DEFAULT_SEED) -> tuple[bool, str]:
    K4 = complete_hypergraph(4, 3)
    T = walk_tree(K4, 0).hypergraph
    m_h = matching_polynomial(K4)
    m_hv = matching_polynomial(delete_vertices(K4, [0]))
    m_t = matching_polynomial(T, method="forest")
    m_tv = matching_polynomial(delete_vertices(T, [0]), method="forest")
    checks = {
        "m(K4)": m_h == _poly({4: 1, 1: -4}),
        "m(K4-v)": m_hv == _poly({3: 1, 0: -1}),
        "m(T)": m_t == _poly({13: 1, 10: -6, 7: 9, 4: -4}),
        "m(T) enumerative": matching_polynomial(T, method="enumerate") == m_t,
        "ratio": m_hv * m_t == m_tv * m_h,
    }
    bad = [name for name, ok in checks.items() if not ok]
    return not bad, f"m(T) = {m_t}; failed: {bad}" if bad else f"m(T) = {m_t}"


def oracle_equivalence(seed: int = DEFAULT_SEED) -> tuple[bool, str]:
    rng = random.Random(seed)
    for trial in range(200):
        k = rng.choice((2, 3, 4))
        n = rng.randint(0, 8)
        H = random_hypergraph(rng, n, k, multi=rng.random() < 0.3)
        a, b = matching_polynomial(H), matching_polynomial(H, method="enumerate")
        if a != b:
            return False, f"trial {trial}: {H!s} recursive {a} vs enumerate {b}"
    return True, "200 random instances agree"


def godsil_identity(seed: int = DEFAULT_SEED) -> tuple[bool, str]:
    exhaustive = [H for n in range(1, 6) for H in connected_simple_hypergraphs(n, 3)]
    count = 0
    for H in exhaustive:
        for v in range(H.n):
            report = verify_godsil_identity(H, v)
            count += 1
            if not report.passed:
                return False, f"exhaustive: {report.to_json()}"
    rng = random.Random(seed)
    for trial in range(100):
        n = rng.randint(3, 7)
        H = random_connected_hypergraph(rng, n, 3, extra=rng.randint(0, 2 * n))
        report = verify_godsil_identity(H, rng.randrange(n))
        if not report.passed:
            return False, f"random trial {trial}: {report.to_json()}"
    return True, f"{len(exhaustive)} classes ({count} rooted) + 100 random, divisibility included"


def tree_identity(seed: int = DEFAULT_SEED) -> tuple[bool, str]:
    rng = random.Random(seed)
    largest = 0
    for trial in range(100):
        T = random_k_tree(rng, rng.choice((2, 3, 4)), 16)
        largest = max(largest, T.n)
        report = verify_tree_char_identity(T, random_orderings(rng, T))
        if not report.passed:
            return False, f"trial {trial}: {report.to_json()}"
    return True, f"100 random k-trees (largest {largest} vertices)"


def walk_dual_route(seed: int = DEFAULT_SEED) -> tuple[bool, str]:
    rng = random.Random(seed)
    L = 6
    for trial in range(100):
        n = rng.randint(1, 5)
        H = random_hypergraph(rng, n, 3, multi=rng.random() < 0.3)
        series = support_counts(H, L, method="series")
        dfs = support_counts(H, L, method="dfs")
        if series.table != dfs.table:
            return False, f"trial {trial}: tables differ for {H!s}"
        per_root = [series.walk_counts(v) for v in range(n)]
        if any(per_root[v][ell] for v in range(n) for ell in range(1, L + 1) if ell % 3):
            return False, f"trial {trial}: closed walk with length not divisible by 3 in {H!s}"
        sums = power_sums_from_poly(matching_polynomial(H), n)
        for ell in range(1, n + 1):
            if sum(row[ell] for row in per_root) != sums[ell]:
                return False, f"trial {trial}: walk total at l={ell} differs from power sum for {H!s}"
    return True, "100 random 3-graphs, both routes identical"


def reconstruction_round_trip(seed: int = DEFAULT_SEED) -> tuple[bool, str]:
    rng = random.Random(seed)
    cases = [(2, n) for n in (4, 5, 6) for _ in range(50)] + [(3, 6)] * 50
    for trial, (k, n) in enumerate(cases):
        H = random_hypergraph(rng, n, k, multi=rng.random() < 0.2)
        poly, _ = reconstruct_matching_polynomial(make_deck(H, deck_size_for(n, k)), n, k)
        if poly != matching_polynomial(H):
            return False, f"trial {trial}: reconstructed {poly} for {H!s}"
    teeth = []
    for layout in (aligned_teeth(3, 2), misaligned_teeth(3, 2)):
        H = layout.hypergraph
        poly, _ = reconstruct_matching_polynomial(make_deck(H, deck_size_for(H.n, 3)), H.n, 3)
        if poly != matching_polynomial(H):
            return False, f"{layout.kind} teeth: reconstructed {poly}"
        teeth.append(poly)
    if teeth[0] == teeth[1]:
        return False, "teeth polynomials coincide"
    return True, f"{len(cases)} random + AT(3,2) -> {teeth[0]}, MT(3,2) -> {teeth[1]}"


SHARPNESS_PAIRS = ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1))


def sharpness(seed: int = DEFAULT_SEED) -> tuple[bool, str]:
    notes = []
    ok = True
    for k, ell in SHARPNESS_PAIRS:
        report = verify_sharpness(k, ell)
        good = report.passed and report.eta_ok
        ok &= good
        notes.append(f"({k},{ell}){'' if good else ' FAILED ' + str(report.to_json())}")
    return ok, "pairs " + ", ".join(notes)


def tiling(seed: int = DEFAULT_SEED) -> tuple[bool, str]:
    rng = random.Random(seed)
    K2, K3 = complete_hypergraph(2, 2), complete_hypergraph(3, 2)
    for trial in range(50):
        G = random_graph(rng, rng.randint(1, 8), rng.random())
        if tiling_polynomial(G, K2) != matching_polynomial(G):
            return False, f"K2 trial {trial}: {G!s}"
        if G.n % 2 == 0 and count_perfect_tilings(G, K2) != matching_counts(G)[-1]:
            return False, f"K2 perfect tilings, trial {trial}: {G!s}"
    factors = 0
    for trial in range(20):
        G = random_graph(rng, 6, rng.uniform(0.4, 1.0))
        target = tiling_polynomial(G, K3)
        poly, _ = reconstruct_tiling_polynomial(make_deck(G, 5), K3, 6)
        if poly != target:
            return False, f"K3 trial {trial}: reconstructed {poly}, expected {target} for {G!s}"
        tilings = count_perfect_tilings(G, K3)
        factors += tilings
        if abs(target[0]) != tilings:
            return False, f"K3 trial {trial}: constant term {target[0]} vs {tilings} tilings"
    return True, f"50 K2 graphs, 20 K3 round trips ({factors} triangle factors seen)"


def deck_infrastructure(seed: int = DEFAULT_SEED) -> tuple[bool, str]:
    rng = random.Random(seed)
    for trial in range(20):
        H = random_hypergraph(rng, rng.randint(1, 9), rng.choice((2, 3)), multi=rng.random() < 0.3)
        canon = canonical_form(H)
        for _ in range(50):
            if canonical_form(H.relabel(random_permutation(rng, H.n))) != canon:
                return False, f"trial {trial}: canonical form changed under relabeling of {H!s}"
    for trial in range(30):
        n = rng.randint(2, 8)
        H = random_hypergraph(rng, n, rng.choice((2, 3)), multi=rng.random() < 0.3)
        t = rng.randint(1, n)
        s = rng.randint(0, t)
        if not deck_equal(make_deck(H, s), deck_restrict(make_deck(H, t), s)):
            return False, f"restrict trial {trial}: t={t}, s={s}, {H!s}"
    return True, "20 instances x 50 relabelings, 30 restrictions"


CRITERIA: list[tuple[int, str, float, Callable[[int], tuple[bool, str]]]] = [
    (1, "worked example", 1.0, worked_example),
    (2, "oracle equivalence", 30.0, oracle_equivalence),
    (3, "godsil identity", 120.0, godsil_identity),
    (4, "tree identity", 60.0, tree_identity),
    (5, "walk dual route", 60.0, walk_dual_route),
    (6, "reconstruction round trip", 600.0, reconstruction_round_trip),
    (7, "sharpness", 300.0, sharpness),
    (8, "tiling", 120.0, tiling),
    (9, "deck infrastructure", 60.0, deck_infrastructure),
]


def run_criterion(number: int, seed: int = DEFAULT_SEED) -> CriterionResult:
    for num, name, limit, check in CRITERIA:
        if num == number:
            start = time.perf_counter()
            try:
                passed, detail = check(seed)
            except Exception as exc:  # a crash is a red criterion, reported with its cause
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            return CriterionResult(num, name, passed, time.perf_counter() - start, limit, detail)
    raise KeyError(f"no acceptance criterion {number}")


def run_all(seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    return [run_criterion(num, seed) for num, *_ in CRITERIA]
