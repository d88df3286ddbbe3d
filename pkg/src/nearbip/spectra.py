"""Closed-form spectra of K_{p,q}, K^-_{p,q}, K^+_{p,q} and exact spectral-radius tests."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .errors import DomainError
from .graph import Family, Graph, bipartition, classify_family, strip_isolated
from .poly import IntPolynomial, LargestRoot, char_poly, even_part, max_root_leq


@dataclass(frozen=True)
class QuarticSpectrum:
    """Spectrum {0^zeros, +-sqrt((s +- sqrt(s^2 - 4t)) / 2)}.

    Equivalently the characteristic polynomial x^zeros (x^4 - s x^2 + t).
    """

    zeros: int
    s: int
    t: int

    def __post_init__(self) -> None:
        if self.zeros < 0 or self.s < 0 or self.t < 0 or self.s * self.s < 4 * self.t:
            raise DomainError(f"not a real quartic spectrum: {self}")

    @property
    def n(self) -> int:
        return self.zeros + 4

    @property
    def discriminant(self) -> int:
        return self.s * self.s - 4 * self.t

    def to_json(self) -> dict:
        return {"n": self.n, "zeros": self.zeros, "s": str(self.s), "t": str(self.t)}

    @classmethod
    def from_json(cls, data: dict) -> "QuarticSpectrum":
        return cls(int(data["zeros"]), int(data["s"]), int(data["t"]))

    def approx_eigenvalues(self, digits: int = 15) -> list[str]:
        """Decimal renderings of the four nonzero eigenvalues (not used in any decision)."""
        with mpmath.workdps(digits + 5):
            root = mpmath.sqrt(self.discriminant)
            big = mpmath.sqrt((self.s + root) / 2)
            small = mpmath.sqrt((self.s - root) / 2)
            return [mpmath.nstr(v, digits) for v in (big, small, -small, -big)]


def _normalize(p: int, q: int, what: str) -> tuple[int, int]:
    p, q = min(p, q), max(p, q)
    if p < 2:
        raise DomainError(f"{what} needs min(p, q) >= 2, got ({p}, {q})")
    return p, q


def spectrum_k_minus(p: int, q: int) -> QuarticSpectrum:
    p, q = _normalize(p, q, "K^-_{p,q}")
    return QuarticSpectrum(p + q - 4, p * q - 1, (p - 1) * (q - 1))


def spectrum_k_plus(p: int, q: int) -> QuarticSpectrum:
    p, q = _normalize(p, q, "K^+_{p,q}")
    return QuarticSpectrum(p + q - 3, p * q + 1, (p - 1) * q)


def quartic_to_poly(qs: QuarticSpectrum) -> IntPolynomial:
    return IntPolynomial([0] * qs.zeros + [qs.t, 0, -qs.s, 0, 1])


@dataclass(frozen=True)
class CompleteBipartiteShape:
    """Spectrum {0^(n-2), +-sqrt(c)} of K_{p,q} plus isolated vertices."""

    n: int
    c: int

    def to_json(self) -> dict:
        return {"n": self.n, "zeros": self.n - 2, "lambda_sq": str(self.c)}


def spectrum_complete(p: int, q: int) -> CompleteBipartiteShape:
    if min(p, q) < 1:
        raise DomainError(f"K_{{p,q}} needs p, q >= 1, got ({p}, {q})")
    return CompleteBipartiteShape(p + q, p * q)


def is_complete_bipartite_spectrum(p: IntPolynomial) -> int | None:
    """Return c if p = x^(n-2) (x^2 - c) with integer c >= 0, else None."""
    n = p.degree
    if n < 2 or p[n] != 1 or p[n - 1] != 0:
        return None
    c = -p[n - 2]
    if c < 0 or any(p[k] for k in range(n - 2)):
        return None
    return c


def is_complete_bipartite_plus_isolated(g: Graph) -> bool:
    """K_{a,b} plus isolated vertices; an edgeless graph counts as the degenerate case."""
    h, _ = strip_isolated(g)
    return h.n == 0 or classify_family(h).family is Family.COMPLETE


def in_family_set(g: Graph) -> bool:
    """Membership in the union of complete, minus-edge and plus-pendant families.

    The path on four vertices (K^-_{2,2}) is excluded, as is anything with
    isolated vertices.
    """
    kind = classify_family(g)
    if kind.isolated or kind.family is Family.NONE:
        return False
    return not kind.excluded


def _even_part_of(g: Graph) -> IntPolynomial:
    if bipartition(g) is None:
        raise DomainError("graph is not bipartite")
    split = even_part(char_poly(g))
    assert split is not None, "bipartite graphs have symmetric spectra"
    return split[1]


def rho_leq_sqrt_e(g: Graph) -> tuple[bool, bool]:
    """(rho^2 <= e, rho^2 == e), decided exactly on the even part of the char poly."""
    q = _even_part_of(g)
    e = g.num_edges
    holds = max_root_leq(q, e)
    assert holds, "spectral radius of a bipartite graph exceeds sqrt(e)"
    if q.degree < 1:
        return True, e == 0
    return holds, q(e) == 0


def _threshold_conditions(e: int) -> list[IntPolynomial]:
    # R >= (e + sqrt(e^2 - 4(e - 1 - sqrt(e - 1)))) / 2 with R = rho^2 unfolds to
    #   2R - e >= 0,  F(R) >= 0,  F(R)^2 - (e - 1) >= 0,  where F(R) = (R - 1)(R - e + 1)
    f = IntPolynomial([-1, 1]) * IntPolynomial([1 - e, 1])
    return [IntPolynomial([-e, 2]), f, f * f - IntPolynomial([e - 1])]


def lemma7_threshold_holds(g: Graph) -> bool:
    """Exact test of rho(G) >= sqrt((e + sqrt(e^2 - 4(e - 1 - sqrt(e - 1)))) / 2)."""
    if g.isolated_vertices():
        raise DomainError("graph has isolated vertices")
    if g.num_edges < 1:
        raise DomainError("graph has no edges")
    root = LargestRoot(_even_part_of(g))
    return all(root.sign_of(h) >= 0 for h in _threshold_conditions(g.num_edges))


def lemma7_threshold_interval(g: Graph, digits: int = 50) -> bool | None:
    """Interval-arithmetic version of the threshold test at ``digits`` precision.

    The spectral radius comes from a high-precision symmetric eigensolver, so
    this path shares nothing with the exact one.  Returns None when the
    enclosures overlap.
    """
    if g.num_edges < 1:
        raise DomainError("graph has no edges")
    e = g.num_edges
    with mpmath.workdps(digits + 15):
        evals = mpmath.eigsy(mpmath.matrix(g.to_matrix()), eigvals_only=True)
        rho_sq = max(evals) ** 2
        slack = mpmath.mpf(10) ** (-(digits - 5))
        lo, hi = rho_sq - slack, rho_sq + slack
    iv = mpmath.iv
    saved = iv.dps
    iv.dps = digits
    try:
        r = iv.mpf([lo, hi])
        ev = iv.mpf(e)
        inner = ev * ev - 4 * (ev - 1 - iv.sqrt(ev - 1))
        threshold = (ev + iv.sqrt(inner)) / 2
    finally:
        iv.dps = saved
    if r.a >= threshold.b:
        return True
    if r.b < threshold.a:
        return False
    return None
