"""Exact integer polynomials, characteristic polynomials and real-root queries.

Everything here is exact: coefficients are Python integers (or Fractions
inside the Sturm machinery) and no floating point enters a decision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from .graph import Graph

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class IntPolynomial:
    """Dense polynomial with integer coefficients, lowest degree first.

    Trailing zeros are trimmed on construction; the zero polynomial has no
    coefficients.
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()) -> None:
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPolynomial":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        m = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[k] + other[k] for k in range(m))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    def __call__(self, x: Rational) -> Rational:
        acc: Rational = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "IntPolynomial":
        return cls(int(c) for c in data)

    def key(self) -> str:
        """Exact text key used to group cospectral graphs."""
        return ",".join(self.to_json())

    def __str__(self) -> str:
        return format_poly(self)


def format_poly(p: IntPolynomial, var: str = "x") -> str:
    """Render highest degree first, e.g. ``x^10 - 19x^8 + 12x^6``."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + var + (f"^{k}" if k > 1 else "")
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def poly_equal(p: IntPolynomial, q: IntPolynomial) -> bool:
    return p.coeffs == q.coeffs


# ---------------------------------------------------------------------------
# characteristic polynomials


def char_poly(g: Graph) -> IntPolynomial:
    """det(xI - A) by Faddeev-LeVerrier, run modulo word-sized primes and lifted by CRT.

    Enough primes are used to exceed twice the Hadamard bound on every
    coefficient, so the reconstruction is exact.
    """
    n = g.n
    if n == 0:
        return IntPolynomial([1])
    primes = _primes_for(n)
    residues = _faddeev_mod(np.array(g.to_matrix(), dtype=np.float64), primes)
    modulus = 1
    for p in primes:
        modulus *= p
    coeffs = []
    for k in range(n + 1):
        value = 0
        for p, r in zip(primes, residues[:, k]):
            part = modulus // p
            value += int(r) * part * pow(part, -1, p)
        value %= modulus
        if value > modulus // 2:
            value -= modulus
        coeffs.append(value)
    return IntPolynomial(coeffs)


def char_poly_bigint(g: Graph) -> IntPolynomial:
    """Faddeev-LeVerrier directly over Python integers (slower cross-check path)."""
    n = g.n
    nbrs = [[j for j in range(n) if g.has_edge(i, j)] for i in range(n)]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        am = []
        for i in range(n):
            row = [0] * n
            for t in nbrs[i]:
                mt = m[t]
                for j in range(n):
                    row[j] += mt[j]
            am.append(row)
        c, rem = divmod(-sum(am[i][i] for i in range(n)), k)
        assert rem == 0, "Faddeev-LeVerrier division must be exact"
        coeffs[n - k] = c
        for i in range(n):
            am[i][i] += c
        m = am
    return IntPolynomial(coeffs)


# a 0/1 row times residues below 2**26, summed over <= 64 terms, stays exact in float64
_PRIME_BITS = 26


@lru_cache(maxsize=None)
def _word_primes(count: int) -> tuple[int, ...]:
    out: list[int] = []
    cand = (1 << _PRIME_BITS) - 1
    while len(out) < count:
        if all(cand % d for d in range(3, int(cand**0.5) + 1, 2)):
            out.append(cand)
        cand -= 2
    return tuple(out)


@lru_cache(maxsize=None)
def _primes_for(n: int) -> tuple[int, ...]:
    # |coefficient of x^(n-k)| <= C(n, k) * k^(k/2)  (sum of principal minors, Hadamard)
    bound = max(math.comb(n, k) * (math.isqrt(k**k) + 1) for k in range(n + 1))
    need = 2 * bound + 1
    count = 1
    while math.prod(_word_primes(count)) <= need:
        count += 1
    return _word_primes(count)


def _faddeev_mod(a: np.ndarray, primes: Sequence[int]) -> np.ndarray:
    """Residues of the characteristic polynomial modulo each prime, shape (P, n + 1)."""
    n = a.shape[0]
    ps = np.array(primes, dtype=np.int64)
    count = len(primes)
    out = np.zeros((count, n + 1), dtype=np.int64)
    out[:, n] = 1
    m = np.broadcast_to(np.eye(n), (count, n, n)).copy()
    diag = np.arange(n)
    for k in range(1, n + 1):
        am = np.matmul(a, m).astype(np.int64) % ps[:, None, None]
        trace = am[:, diag, diag].sum(axis=1) % ps
        inv_k = np.array([pow(k, -1, int(p)) for p in primes], dtype=np.int64)
        c = (-trace % ps) * inv_k % ps
        out[:, n - k] = c
        am[:, diag, diag] = (am[:, diag, diag] + c[:, None]) % ps[:, None]
        m = am.astype(np.float64)
    return out


def char_poly_cofactor(g: Graph) -> IntPolynomial:
    """Slow reference: Laplace expansion of det(xI - A) with polynomial entries."""
    n = g.n
    x = IntPolynomial([0, 1])
    entry = [
        [x if i == j else IntPolynomial([-1]) if g.has_edge(i, j) else IntPolynomial() for j in range(n)]
        for i in range(n)
    ]

    @lru_cache(maxsize=None)
    def det(row: int, cols: int) -> IntPolynomial:
        if row == n:
            return IntPolynomial([1])
        total = IntPolynomial()
        sign = 1
        for j in range(n):
            if (cols >> j) & 1:
                e = entry[row][j]
                if not e.is_zero():
                    term = e * det(row + 1, cols & ~(1 << j))
                    total = total + term if sign > 0 else total - term
                sign = -sign
        return total

    return det(0, (1 << n) - 1)


# Entries of the adjugate of xI - A for a 0/1 matrix with n <= 12 stay far
# below 2**53, so float64 matmul followed by rounding is exact.
BATCH_MAX_N = 12


def char_poly_batch(mats: np.ndarray) -> np.ndarray:
    """Characteristic polynomials of a stack of 0/1 adjacency matrices.

    ``mats`` has shape (N, n, n); returns int64 coefficients of shape
    (N, n + 1), lowest degree first.
    """
    count, n, _ = mats.shape
    if n > BATCH_MAX_N:
        raise ValueError(f"batched kernel is exact only for n <= {BATCH_MAX_N}")
    a = mats.astype(np.float64)
    out = np.zeros((count, n + 1), dtype=np.int64)
    out[:, n] = 1
    m = np.broadcast_to(np.eye(n), (count, n, n)).copy()
    diag = np.arange(n)
    for k in range(1, n + 1):
        am = np.matmul(a, m)
        trace = np.rint(am[:, diag, diag].sum(axis=1)).astype(np.int64)
        c = -trace // k
        out[:, n - k] = c
        am[:, diag, diag] += c[:, None]
        m = am
    return out


def adjacency_stack(graphs: Sequence[Graph]) -> np.ndarray:
    if not graphs:
        return np.zeros((0, 0, 0), dtype=np.uint8)
    n = graphs[0].n
    bits = np.array([g.adj for g in graphs], dtype=np.uint64)
    shifts = np.arange(n, dtype=np.uint64)
    return ((bits[:, :, None] >> shifts) & np.uint64(1)).astype(np.uint8)


def coefficient_edge_count(p: IntPolynomial) -> int:
    """Minus the coefficient of x^(n-2), i.e. the number of edges."""
    if p.degree < 2:
        return 0
    return -p[p.degree - 2]


def even_part(p: IntPolynomial) -> tuple[int, IntPolynomial] | None:
    """Write p(x) = x^m q(x^2); return (m, q), or None if p is not of that shape."""
    if p.is_zero():
        return None
    m = next(k for k, c in enumerate(p.coeffs) if c)
    if any(c for k, c in enumerate(p.coeffs) if (k - m) % 2):
        return None
    return m, IntPolynomial(p.coeffs[m::2])


# ---------------------------------------------------------------------------
# Sturm sequences over the rationals


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    while len(a) >= len(b) and a:
        f = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = f
        for i, bc in enumerate(b):
            a[shift + i] -= f * bc
        a.pop()
        _trim(a)
    return q, a


def _gcd(a: list, b: list) -> list:
    a, b = _trim([Fraction(x) for x in a]), _trim([Fraction(x) for x in b])
    while b:
        a, b = b, _divmod(a, b)[1]
    return [c / a[-1] for c in a] if a else a


def _eval(c: Sequence, x: Rational) -> Rational:
    acc: Rational = 0
    for coef in reversed(c):
        acc = acc * x + coef
    return acc


def squarefree(p: IntPolynomial) -> list[Fraction]:
    c = [Fraction(x) for x in p.coeffs]
    if len(c) <= 2:
        return c
    g = _gcd(c, [Fraction(x) for x in p.derivative().coeffs])
    return _divmod(c, g)[0] if len(g) > 1 else c


def sturm_chain(c: Sequence[Rational]) -> list[list[Fraction]]:
    chain = [[Fraction(x) for x in c]]
    deriv = [Fraction(k * x) for k, x in enumerate(c) if k]
    if _trim(deriv):
        chain.append(deriv)
    while len(chain) > 1 and len(chain[-1]) > 1:
        rem = _divmod(chain[-2], chain[-1])[1]
        if not rem:
            break
        chain.append([-x for x in rem])
    return chain


def _variations(values: Iterable[Rational]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _variations_at_inf(chain: list[list[Fraction]]) -> int:
    return _variations(c[-1] for c in chain)


def count_roots_above(chain: list[list[Fraction]], a: Rational, b: Rational | None = None) -> int:
    """Distinct real roots in (a, b] (or (a, oo)) of the squarefree polynomial chain[0]."""
    va = _variations(_eval(c, a) for c in chain)
    vb = _variations_at_inf(chain) if b is None else _variations(_eval(c, b) for c in chain)
    return va - vb


def cauchy_bound(c: Sequence[Rational]) -> Fraction:
    lead = abs(Fraction(c[-1]))
    return 1 + max((abs(Fraction(x)) / lead for x in c[:-1]), default=Fraction(0))


def max_root_leq(q: IntPolynomial, bound: Rational) -> bool:
    """True iff every real root of q is <= bound (vacuous when q has none)."""
    if q.degree < 1:
        return True
    chain = sturm_chain(squarefree(q))
    return count_roots_above(chain, Fraction(bound)) == 0


class LargestRoot:
    """The largest real root of an integer polynomial, as an isolating interval."""

    def __init__(self, q: IntPolynomial) -> None:
        if q.degree < 1:
            raise ValueError("constant polynomial has no roots")
        self.poly = squarefree(q)
        self.chain = sturm_chain(self.poly)
        hi = cauchy_bound(self.poly)
        if count_roots_above(self.chain, -hi) == 0:
            raise ValueError("polynomial has no real roots")
        lo = -hi
        # shrink lo until (lo, hi] holds only the largest root
        while count_roots_above(self.chain, lo, hi) > 1:
            mid = (lo + hi) / 2
            if count_roots_above(self.chain, mid, hi) >= 1:
                lo = mid
            else:
                hi = mid
        self.lo, self.hi = lo, hi

    def refine(self) -> None:
        mid = (self.lo + self.hi) / 2
        if count_roots_above(self.chain, mid, self.hi) == 1:
            self.lo = mid
        else:
            self.hi = mid

    def sign_of(self, h: IntPolynomial) -> int:
        """Exact sign of h evaluated at this root."""
        if h.degree < 1:
            return (h[0] > 0) - (h[0] < 0)
        g = _gcd(self.poly, [Fraction(x) for x in h.coeffs])
        if len(g) > 1 and count_roots_above(sturm_chain(g), self.lo, self.hi) > 0:
            return 0
        h_chain = sturm_chain(squarefree(h))
        while count_roots_above(h_chain, self.lo, self.hi) > 0:
            self.refine()
        v = h(self.hi)
        return (v > 0) - (v < 0)

    def approx(self, digits: int = 30) -> Fraction:
        tol = Fraction(1, 10**digits)
        while self.hi - self.lo > tol:
            self.refine()
        return (self.lo + self.hi) / 2
