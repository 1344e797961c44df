"""Exact integer polynomials, truncated power series and Newton's identities.

Also home to the matching polynomial (three routes: enumeration, the
vertex-deletion recursion with canonical-form memoization, and a linear-time
dynamic program for hyperforests) and the division-free characteristic
polynomial of a 0/1 adjacency matrix.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import (
    Hypergraph,
    HypergraphError,
    connected_components,
    delete_vertices,
    has_berge_cycle,
    induced_subgraph,
    matching_counts,
)


class PolynomialError(ValueError):
    pass


class NewtonError(ArithmeticError):
    """Power sums that cannot come from a matching polynomial."""


def _trim(coeffs) -> tuple[int, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - pure-Python fallback
    _mpz = None

_KRONECKER_CUTOFF = 48


def _pack(coeffs, width):
    """Signed coefficients as one integer in base ``2**(8*width)``."""
    pos = b"".join(max(c, 0).to_bytes(width, "little") for c in coeffs)
    neg = b"".join(max(-c, 0).to_bytes(width, "little") for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _support_step(coeffs):
    """(offset, step) such that every nonzero index is offset + step*j."""
    nz = [i for i, c in enumerate(coeffs) if c]
    step = 0
    for i in nz:
        step = math.gcd(step, i - nz[0])
    return nz[0], step


def _kronecker_mul(a, b):
    """Product by Kronecker substitution: one big-integer multiplication."""
    off_a, step_a = _support_step(a)
    off_b, step_b = _support_step(b)
    step = math.gcd(step_a, step_b)
    if step > 1:
        # both factors are x^off * Q(x^step); multiply the Q's
        prod = _kronecker_mul(a[off_a::step], b[off_b::step])
        out = [0] * (len(a) + len(b) - 1)
        out[off_a + off_b::step] = prod + [0] * (len(out[off_a + off_b::step]) - len(prod))
        return out
    bound = max(abs(c) for c in a) * max(abs(c) for c in b) * min(len(a), len(b))
    width = (bound.bit_length() + 2 + 7) // 8
    length = len(a) + len(b) - 1
    bias_digit = 1 << (8 * width - 1)
    bias = int.from_bytes(bias_digit.to_bytes(width, "little") * length, "little")
    pa, pb = _pack(a, width), _pack(b, width)
    if _mpz is not None and width * length > 4096:
        prod = int(_mpz(pa) * _mpz(pb))
    else:
        prod = pa * pb
    raw = (prod + bias).to_bytes(width * length, "little")
    return [
        int.from_bytes(raw[i * width:(i + 1) * width], "little") - bias_digit
        for i in range(length)
    ]


class IntPolynomial:
    """Dense polynomial with unbounded integer coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        coeffs = _trim(coeffs)
        if any(not isinstance(c, int) for c in coeffs):
            raise PolynomialError("IntPolynomial coefficients must be integers")
        self.coeffs = coeffs

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPolynomial":
        return cls([0] * degree + [coeff])

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        if min(len(a), len(b)) > _KRONECKER_CUTOFF:
            return IntPolynomial(_kronecker_mul(a, b))
        # matching polynomials are sparse (one residue class mod k), so skip zeros
        nza = [(i, c) for i, c in enumerate(a) if c]
        nzb = [(j, c) for j, c in enumerate(b) if c]
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in nza:
            for j, cb in nzb:
                out[i + j] += ca * cb
        return IntPolynomial(out)

    __rmul__ = __mul__

    def shift(self, d: int) -> "IntPolynomial":
        """Multiply by ``x**d``."""
        return IntPolynomial([0] * d + list(self.coeffs)) if self.coeffs else self

    def divmod(self, divisor: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Long division by a monic polynomial, exact over the integers."""
        if not divisor.is_monic():
            raise PolynomialError("integer long division needs a monic divisor")
        rem = list(self.coeffs)
        dd = divisor.degree
        if len(rem) - 1 < dd:
            return IntPolynomial(), IntPolynomial(rem)
        quot = [0] * (len(rem) - dd)
        dc = divisor.coeffs
        for i in range(len(rem) - 1, dd - 1, -1):
            q = rem[i]
            if q:
                quot[i - dd] = q
                for j in range(dd + 1):
                    rem[i - dd + j] -= q * dc[j]
        return IntPolynomial(quot), IntPolynomial(rem[:dd])

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = "x" if i == 1 else f"x^{i}"
                body = var if mag == 1 else f"{mag}{var}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> dict:
        return {"var": "x", "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "IntPolynomial":
        if data.get("var", "x") != "x":
            raise PolynomialError(f"unsupported variable {data.get('var')!r}")
        try:
            return cls(int(c) for c in data["coeffs"])
        except (KeyError, TypeError, ValueError) as exc:
            raise PolynomialError(f"malformed polynomial JSON: {exc}") from None


X = IntPolynomial.x()


def product(polys: Iterable[IntPolynomial]) -> IntPolynomial:
    acc = IntPolynomial([1])
    for p in polys:
        acc = acc * p
    return acc


def reversed_poly(P: IntPolynomial, d: int) -> IntPolynomial:
    """``x**d * P(1/x)``."""
    if d < P.degree:
        raise PolynomialError(f"cannot reverse a degree-{P.degree} polynomial within degree {d}")
    padded = list(P.coeffs) + [0] * (d + 1 - len(P.coeffs))
    return IntPolynomial(reversed(padded))


def derivative(P: IntPolynomial) -> IntPolynomial:
    return IntPolynomial(i * c for i, c in enumerate(P.coeffs) if i)


# ---------------------------------------------------------------------------
# power series
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalSeries:
    """First ``length`` coefficients of a formal power series."""

    length: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.length:
            raise PolynomialError("series coefficient count must equal its truncation length")

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def as_ints(self) -> list[int]:
        if not self.is_integral():
            raise PolynomialError("series has non-integer coefficients")
        return [int(c) for c in self.coeffs]


def series_quotient(numer: IntPolynomial, denom: IntPolynomial, L: int) -> RationalSeries:
    """First ``L`` coefficients of ``numer / denom`` as a power series."""
    d0 = denom[0]
    if d0 == 0:
        raise PolynomialError("series division needs a nonzero constant term in the denominator")
    out: list[Fraction] = []
    for i in range(L):
        acc = Fraction(numer[i])
        for j in range(1, min(i, denom.degree) + 1):
            acc -= denom[j] * out[i - j]
        out.append(acc / d0)
    return RationalSeries(L, tuple(out))


# ---------------------------------------------------------------------------
# Newton's identities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PowerSums:
    """Power sums ``p_1..p_L`` of the ``n`` roots of a monic polynomial."""

    n: int
    values: tuple[int, ...]

    def __getitem__(self, ell: int) -> int:
        """``p_ell`` (1-based)."""
        if not 1 <= ell <= len(self.values):
            raise IndexError(ell)
        return self.values[ell - 1]

    def __len__(self):
        return len(self.values)


def elementary_from_poly(P: IntPolynomial) -> list[int]:
    """``[e_0, ..., e_n]`` with ``P = sum (-1)^j e_j x^(n-j)``."""
    n = P.degree
    return [(-1) ** j * P[n - j] for j in range(n + 1)]


def power_sums_from_poly(P: IntPolynomial, L: int) -> PowerSums:
    if not P.is_monic() or P.degree < 1:
        raise PolynomialError("power sums need a monic polynomial of degree >= 1")
    n = P.degree
    e = elementary_from_poly(P)
    p = [0] * (L + 1)
    for ell in range(1, L + 1):
        acc = 0
        for j in range(1, min(ell - 1, n) + 1):
            acc += (-1) ** (j - 1) * e[j] * p[ell - j]
        if ell <= n:
            acc += (-1) ** (ell - 1) * ell * e[ell]
        p[ell] = acc
    return PowerSums(n, tuple(p[1:]))


def poly_from_power_sums(p: Sequence[int], n: int, k: int) -> tuple[IntPolynomial, list[int]]:
    """Invert Newton's identities for a degree-``n`` matching polynomial.

    ``p[l-1]`` is the l-th power sum.  Returns the polynomial and the matching
    counts ``[p(H,0), p(H,1), ...]``.  Raises :class:`NewtonError` when some
    elementary symmetric value is fractional or nonzero off multiples of ``k``.
    """
    if len(p) < n:
        raise NewtonError(f"need {n} power sums, got {len(p)}")
    e = [Fraction(1)]
    for j in range(1, n + 1):
        acc = Fraction(0)
        for i in range(1, j + 1):
            acc += (-1) ** (i - 1) * e[j - i] * p[i - 1]
        e.append(acc / j)
    for j, val in enumerate(e):
        if val.denominator != 1:
            raise NewtonError(f"elementary symmetric value e_{j} = {val} is not an integer")
        if j % k and val:
            raise NewtonError(f"e_{j} = {val} is nonzero although {k} does not divide {j}")
    coeffs = [0] * (n + 1)
    for j in range(n + 1):
        coeffs[n - j] = (-1) ** j * int(e[j])
    # coefficient of x^(n-ki) is (-1)^i p(H,i)
    counts = [(-1) ** i * coeffs[n - k * i] for i in range(n // k + 1)]
    return IntPolynomial(coeffs), counts


# ---------------------------------------------------------------------------
# characteristic polynomials
# ---------------------------------------------------------------------------

def char_polynomial_matrix(A: Sequence[Sequence[int]]) -> IntPolynomial:
    """``det(xI - A)`` by Berkowitz's division-free algorithm."""
    n = len(A)
    # poly holds coefficients highest degree first for the leading r x r block
    poly = [1]
    for r in range(n):
        a = A[r][r]
        row = A[r][:r]
        col = [A[i][r] for i in range(r)]
        # Toeplitz column: 1, -a, -row.col, -row.A_r.col, ...
        toeplitz = [1, -a]
        vec = col
        for _ in range(r):
            toeplitz.append(-sum(x * y for x, y in zip(row, vec)))
            vec = [sum(A[i][j] * vec[j] for j in range(r)) for i in range(r)]
        new = []
        for i in range(r + 2):
            acc = 0
            for j in range(max(0, i - (r + 1)), min(i, r) + 1):
                acc += toeplitz[i - j] * poly[j]
            new.append(acc)
        poly = new
    return IntPolynomial(reversed(poly))


def char_polynomial(D) -> IntPolynomial:
    """Characteristic polynomial of a loop-free digraph with ``n`` and ``arcs``."""
    A = [[0] * D.n for _ in range(D.n)]
    for u, v in D.arcs:
        if u == v:
            raise PolynomialError("digraph has a loop")
        A[u][v] = 1
    return char_polynomial_matrix(A)


# ---------------------------------------------------------------------------
# matching polynomials
# ---------------------------------------------------------------------------

def matching_polynomial_from_counts(n: int, k: int, counts: Sequence[int]) -> IntPolynomial:
    coeffs = [0] * (n + 1)
    for i, c in enumerate(counts):
        if c:
            coeffs[n - k * i] = (-1) ** i * c
    return IntPolynomial(coeffs)


_MEMO: dict[bytes, IntPolynomial] = {}
_MEMO_LOCK = threading.Lock()


def _recursive(H: Hypergraph) -> IntPolynomial:
    from .deck import canonical_form, decode_canonical

    if not H.edges:
        return IntPolynomial.monomial(H.n)
    comps = connected_components(H)
    if len(comps) > 1:
        isolated = sum(1 for c in comps if len(c) == 1)
        parts = [_recursive(induced_subgraph(H, c)[0]) for c in comps if len(c) > 1]
        return product(parts).shift(isolated)
    key = canonical_form(H)
    hit = _MEMO.get(key)
    if hit is not None:
        return hit
    G = decode_canonical(key)
    pivot = G.n - 1
    result = _recursive(delete_vertices(G, [pivot])).shift(1)
    for e in G.incident(pivot):
        result = result - _recursive(delete_vertices(G, e.vertices))
    with _MEMO_LOCK:
        _MEMO.setdefault(key, result)
    return result


def forest_matching_polynomial(H: Hypergraph) -> IntPolynomial:
    """Matching polynomial of a Berge-acyclic hypergraph by a leaf-to-root program.

    For a vertex ``w`` with child edges ``f`` (children ``f - w``), with ``A``
    the polynomial of a rooted subtree and ``B`` that of the subtree minus its
    root: ``B(w) = prod_f prod_c A(c)`` and
    ``A(w) = x B(w) - sum_f prod_c B(c) * prod_{f' != f} prod_c A(c)``.
    """
    if has_berge_cycle(H):
        raise HypergraphError("forest_matching_polynomial needs a hypergraph without Berge-cycles")
    incident = [[] for _ in range(H.n)]
    for e in H.edges:
        for u in e.vertices:
            incident[u].append(e)
    visited = [False] * H.n
    total = IntPolynomial([1])
    for root in range(H.n):
        if visited[root]:
            continue
        # iterative DFS: order lists vertices parents-first
        order, child_edges = [], {}
        stack = [(root, None)]
        visited[root] = True
        while stack:
            w, parent_edge = stack.pop()
            order.append(w)
            kids = []
            for e in incident[w]:
                if parent_edge is not None and e.id == parent_edge:
                    continue
                cs = [u for u in e.vertices if u != w]
                for u in cs:
                    visited[u] = True
                    stack.append((u, e.id))
                kids.append(cs)
            child_edges[w] = kids
        A, B = {}, {}
        for w in reversed(order):
            groups = child_edges.pop(w)
            with_root = [product(A[c] for c in cs) for cs in groups]
            without_root = [product(B[c] for c in cs) for cs in groups]
            m = len(groups)
            prefix = [IntPolynomial([1])]
            for P in with_root:
                prefix.append(prefix[-1] * P)
            suffix = [IntPolynomial([1])] * (m + 1)
            for i in range(m - 1, -1, -1):
                suffix[i] = suffix[i + 1] * with_root[i]
            a = prefix[m].shift(1)
            for i in range(m):
                a = a - without_root[i] * prefix[i] * suffix[i + 1]
            for cs in groups:
                for c in cs:
                    del A[c], B[c]
            A[w], B[w] = a, prefix[m]
        total = total * A[root]
    return total


def matching_polynomial(H: Hypergraph, method: str = "recursive") -> IntPolynomial:
    """``m_k(H, x) = sum_i (-1)^i p(H,i) x^(n-ki)``.

    ``method`` is ``"recursive"`` (vertex deletion on the last vertex, memoized
    on canonical forms), ``"enumerate"`` (brute-force matching counts) or
    ``"forest"`` (Berge-acyclic inputs only).
    """
    if method == "enumerate":
        return matching_polynomial_from_counts(H.n, H.k, matching_counts(H))
    if method == "forest":
        return forest_matching_polynomial(H)
    if method == "recursive":
        return _recursive(H)
    raise ValueError(f"unknown matching polynomial method {method!r}")


def clear_caches():
    from . import deck

    _MEMO.clear()
    deck._LABEL_CACHE.clear()
