"""Spectral determination of K^-_{p,q} and K^+_{p,q}.

K^-_{p,q} is always determined by its spectrum.  K^+_{p,q} with 3 <= p <= q
fails exactly when x^2 - (q + 3) x + (pq + 2) has integer roots p2 <= q2,
both at least 2; its only cospectral mate is then K^-_{p2,q2} plus p - 2
isolated vertices.  The non-determined pairs are also parametrised by tuples
(a, b, b', t), which gives an independent route to the same list.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import DomainError
from .graph import Graph, k_minus, with_isolated


class Status(enum.Enum):
    DS = "DS"
    NOT_DS = "NotDS"


@dataclass(frozen=True)
class Mate:
    """The cospectral mate K^-_{p2,q2} u isolated K_1."""

    p2: int
    q2: int
    isolated: int

    def label(self) -> str:
        return f"K_{{{self.p2},{self.q2}}}- u {self.isolated}K1"

    def to_json(self) -> dict:
        return {"p2": self.p2, "q2": self.q2, "isolated": self.isolated}


@dataclass(frozen=True)
class DsVerdict:
    p: int
    q: int
    status: Status
    mate: Mate | None = None
    reason: str = ""

    def __post_init__(self) -> None:
        if (self.status is Status.NOT_DS) != (self.mate is not None):
            raise ValueError("a mate is present exactly when the graph is not DS")

    @property
    def is_ds(self) -> bool:
        return self.status is Status.DS

    def to_json(self) -> dict:
        out: dict = {"p": self.p, "q": self.q, "status": self.status.value}
        if self.mate is not None:
            out["mate"] = self.mate.to_json()
        return out


def _normalize(p: int, q: int) -> tuple[int, int]:
    p, q = min(p, q), max(p, q)
    if p < 2:
        raise DomainError(f"need min(p, q) >= 2, got ({p}, {q})")
    return p, q


def integral_roots(q: int, p: int) -> tuple[int, int] | None:
    """Integer roots r1 <= r2 >= 2 of x^2 - (q + 3) x + (pq + 2), if any."""
    disc = (q + 3) ** 2 - 4 * (p * q + 2)
    if disc < 0:
        return None
    root = math.isqrt(disc)
    if root * root != disc or (q + 3 + root) % 2:
        return None
    lo, hi = (q + 3 - root) // 2, (q + 3 + root) // 2
    if lo < 2:
        return None
    return lo, hi


def ds_check_k_plus(p: int, q: int) -> DsVerdict:
    p, q = _normalize(p, q)
    if p == 2:
        return DsVerdict(p, q, Status.DS, reason="K^+_{2,q} is K^-_{2,q+1}")
    roots = integral_roots(q, p)
    if roots is None:
        return DsVerdict(p, q, Status.DS, reason="no integral roots >= 2")
    return DsVerdict(p, q, Status.NOT_DS, Mate(roots[0], roots[1], p - 2), reason="integral roots")


def ds_check_k_minus(p: int, q: int) -> DsVerdict:
    p, q = _normalize(p, q)
    reason = "path on four vertices" if (p, q) == (2, 2) else "minus-edge family"
    return DsVerdict(p, q, Status.DS, reason=reason)


def complete_bipartite_mates(p: int, q: int) -> list[tuple[int, int, int]]:
    """Cospectral mates K_{a,b} u k K_1 of K_{p,q}: same product, smaller vertex sum."""
    if min(p, q) < 1:
        raise DomainError(f"need p, q >= 1, got ({p}, {q})")
    e = p * q
    out = []
    for a in range(1, math.isqrt(e) + 1):
        b, rem = divmod(e, a)
        if rem == 0 and a + b < p + q:
            out.append((a, b, p + q - a - b))
    return out


def build_mate(verdict: DsVerdict) -> Graph:
    """The explicit mate graph K^-_{p2,q2} u (p - 2) K_1."""
    if verdict.mate is None:
        raise DomainError(f"K^+_{{{verdict.p},{verdict.q}}} is DS and has no mate")
    m = verdict.mate
    return with_isolated(k_minus(m.p2, m.q2), m.isolated)


# ---------------------------------------------------------------------------
# (a, b, b', t) parametrisation


@dataclass(frozen=True, order=True)
class ParamTuple:
    a: int
    b: int
    bp: int
    t: int

    def __post_init__(self) -> None:
        a, b, bp, t = self.a, self.b, self.bp, self.t
        if not (1 <= b < a and 1 <= bp < a):
            raise DomainError(f"need 1 <= b, b' < a: {self}")
        if t < 0 or math.gcd(a, b) != 1 or (b * bp) % a != 1 % a or b * bp + t < 2:
            raise DomainError(f"parameter constraints violated: {self}")

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "bp": self.bp, "t": self.t}


def param_to_instance(pt: ParamTuple) -> tuple[int, int, int, int]:
    """(p, q, p2, q2) from the tuple; p2 and q2 are in formula order, not sorted."""
    a, b, bp, t = pt.a, pt.b, pt.bp, pt.t
    num = b * (1 - b * bp)
    assert num % a == 0
    p = b * (a - b) * t + b * bp + num // a + 1
    q = a * a * t + a * bp
    assert (b * q) % a == 0
    p2 = b * q // a + 1
    q2 = q + 2 - b * q // a
    return p, q, p2, q2


@dataclass
class NonDsInstance:
    p: int
    q: int
    p2: int
    q2: int
    witnesses: list[ParamTuple] = field(default_factory=list)

    @property
    def isolated(self) -> int:
        return self.p - 2

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "status": Status.NOT_DS.value,
            "mate": Mate(self.p2, self.q2, self.isolated).to_json(),
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def enumerate_non_ds(q_max: int) -> list[NonDsInstance]:
    """Every non-DS K^+_{p,q} with 3 <= p <= q <= q_max, via the parametrisation.

    Sorted by (q, p); each instance lists all of its parameter tuples.
    """
    if q_max < 3:
        raise DomainError("q_max must be at least 3")
    found: dict[tuple[int, int], NonDsInstance] = {}
    for a in range(2, q_max + 1):
        for bp in range(1, a):
            if math.gcd(a, bp) != 1:
                continue
            b = pow(bp, -1, a)
            t = 0
            while a * a * t + a * bp <= q_max:
                if b * bp + t >= 2:
                    pt = ParamTuple(a, b, bp, t)
                    p, q, p2, q2 = param_to_instance(pt)
                    if 3 <= p <= q:
                        inst = found.setdefault((p, q), NonDsInstance(p, q, *sorted((p2, q2))))
                        inst.witnesses.append(pt)
                t += 1
    out = [found[k] for k in sorted(found, key=lambda pq: (pq[1], pq[0]))]
    for inst in out:
        inst.witnesses.sort()
    return out


def non_ds_by_roots(q_max: int) -> list[tuple[int, int]]:
    """The same set as ``enumerate_non_ds`` computed from the quadratic directly."""
    return [
        (p, q)
        for q in range(3, q_max + 1)
        for p in range(3, q + 1)
        if integral_roots(q, p) is not None
    ]


def corollary12_instance(t: int, a: int) -> tuple[int, int, int, int, int]:
    """(p, q, p2, q2, isolated) of the b = b' = 1 subfamily."""
    if t < 1 or a < 2:
        raise DomainError(f"need t >= 1 and a >= 2, got t={t}, a={a}")
    return (a - 1) * t + 2, a * a * t + a, a * t + 2, a * (a - 1) * t + a + 1, (a - 1) * t


def remark_family_instance(m: int) -> tuple[tuple[int, int], tuple[int, int], int]:
    """K^+_{m+2,4m+2} and its mate K^-_{2m+2,2m+3} u m K_1."""
    if m < 1:
        raise DomainError(f"need m >= 1, got {m}")
    return (m + 2, 4 * m + 2), (2 * m + 2, 2 * m + 3), m
