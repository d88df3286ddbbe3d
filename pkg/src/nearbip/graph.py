"""Simple undirected graphs on at most 64 vertices, stored as row bitsets.

Family constructors follow fixed labelling conventions so outputs are
reproducible: ``k_minus`` removes the edge ``0 -- p`` and ``k_plus`` hangs the
pendant vertex ``p + q`` off vertex ``0`` of the smaller part.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, DomainError

MAX_VERTICES = 64


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; ``adj[i]`` is the neighbour bitset of vertex ``i``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise CapacityError(f"graph has {self.n} vertices, cap is {MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full or (row >> i) & 1:
                raise ValueError(f"row {i} has an out-of-range bit or a loop")
            for j in _bits(row):
                if not (self.adj[j] >> i) & 1:
                    raise ValueError(f"adjacency is not symmetric at ({i}, {j})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n > MAX_VERTICES:
            raise CapacityError(f"graph has {n} vertices, cap is {MAX_VERTICES}")
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError("loops are not allowed")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def edges(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self.adj):
            for j in _bits(row >> (i + 1)):
                yield i, i + 1 + j

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        rows = [0] * self.n
        for v, row in enumerate(self.adj):
            new = 0
            for u in _bits(row):
                new |= 1 << perm[u]
            rows[perm[v]] = new
        return Graph(self.n, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        return Graph.from_edges(
            len(vertices),
            ((index[u], index[v]) for u, v in self.edges() if u in index and v in index),
        )

    def isolated_vertices(self) -> list[int]:
        return [i for i, row in enumerate(self.adj) if row == 0]

    def to_matrix(self) -> list[list[int]]:
        return [[(row >> j) & 1 for j in range(self.n)] for row in self.adj]


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def complete_bipartite(p: int, q: int) -> Graph:
    if p < 1 or q < 1:
        raise DomainError(f"K_{{p,q}} needs p, q >= 1, got ({p}, {q})")
    _check_capacity(p + q)
    left = (1 << p) - 1
    right = ((1 << q) - 1) << p
    return Graph(p + q, tuple([right] * p + [left] * q))


def k_minus(p: int, q: int) -> Graph:
    """K_{p,q} with the cross edge 0 -- p deleted."""
    if min(p, q) < 2:
        raise DomainError(f"K^-_{{p,q}} needs min(p, q) >= 2, got ({p}, {q})")
    _check_capacity(p + q)
    rows = list(complete_bipartite(p, q).adj)
    rows[0] &= ~(1 << p)
    rows[p] &= ~1
    return Graph(p + q, tuple(rows))


def k_plus(p: int, q: int) -> Graph:
    """K_{p,q} plus a pendant vertex on vertex 0 of the part of order min(p, q)."""
    if min(p, q) < 2:
        raise DomainError(f"K^+_{{p,q}} needs min(p, q) >= 2, got ({p}, {q})")
    p, q = min(p, q), max(p, q)
    _check_capacity(p + q + 1)
    x = p + q
    rows = list(complete_bipartite(p, q).adj) + [1]
    rows[0] |= 1 << x
    return Graph(p + q + 1, tuple(rows))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    _check_capacity(g.n + h.n)
    return Graph(g.n + h.n, g.adj + tuple(row << g.n for row in h.adj))


def with_isolated(g: Graph, count: int) -> Graph:
    return disjoint_union(g, Graph.empty(count))


def _check_capacity(n: int) -> None:
    if n > MAX_VERTICES:
        raise CapacityError(f"{n} vertices exceeds the cap of {MAX_VERTICES}")


def bipartition(g: Graph) -> tuple[int, int] | None:
    """Two-colour ``g``; return (side0, side1) bitsets or None if an odd cycle exists."""
    colour = [-1] * g.n
    side = [0, 0]
    for root in range(g.n):
        if colour[root] >= 0:
            continue
        colour[root] = 0
        side[0] |= 1 << root
        stack = [root]
        while stack:
            v = stack.pop()
            c = colour[v]
            for u in _bits(g.adj[v]):
                if colour[u] < 0:
                    colour[u] = 1 - c
                    side[1 - c] |= 1 << u
                    stack.append(u)
                elif colour[u] == c:
                    return None
    return side[0], side[1]


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << g.n) - 1


def strip_isolated(g: Graph) -> tuple[Graph, int]:
    """Drop isolated vertices; return the remaining graph and how many were dropped."""
    keep = [i for i, row in enumerate(g.adj) if row]
    return g.induced(keep), g.n - len(keep)


class Family(enum.Enum):
    COMPLETE = "complete_bipartite"
    MINUS = "minus_edge"
    PLUS = "plus_pendant"
    NONE = "not_in_family"


@dataclass(frozen=True)
class FamilyKind:
    """Classification of a graph (isolated vertices ignored).

    ``excluded`` marks K^-_{2,2}, the path on four vertices, which the family
    definition leaves out of the minus-edge set even though the constructor
    builds it.
    """

    family: Family
    p: int = 0
    q: int = 0
    isolated: int = 0
    excluded: bool = False

    def label(self) -> str:
        tail = f" u {self.isolated}K1" if self.isolated else ""
        if self.family is Family.COMPLETE:
            return f"K_{{{self.p},{self.q}}}{tail}"
        if self.family is Family.MINUS:
            return f"K_{{{self.p},{self.q}}}-{tail}"
        if self.family is Family.PLUS:
            return f"K_{{{self.p},{self.q}}}+{tail}"
        return "not in family"


def classify_family(g: Graph) -> FamilyKind:
    """Recognise K_{p,q}, K^-_{p,q} or K^+_{p,q} after stripping isolated vertices.

    Normalisation: p <= q always; K^+_{2,q} is reported as K^-_{2,q+1}.
    """
    h, isolated = strip_isolated(g)
    none = FamilyKind(Family.NONE, isolated=isolated)
    if h.n == 0 or not is_connected(h):
        return none
    sides = bipartition(h)
    if sides is None:
        return none
    a, b = sorted(s.bit_count() for s in sides)
    e = h.num_edges
    if e == a * b:
        return FamilyKind(Family.COMPLETE, a, b, isolated)
    if e == a * b - 1 and a >= 2:
        # connected bipartite with exactly one missing cross edge
        return FamilyKind(Family.MINUS, a, b, isolated, excluded=(a, b) == (2, 2))
    for x in range(h.n):
        if h.adj[x].bit_count() != 1:
            continue
        y = h.adj[x].bit_length() - 1
        rest = [v for v in range(h.n) if v != x]
        core = h.induced(rest)
        core_sides = bipartition(core)
        if core_sides is None or not is_connected(core):
            continue
        p, q = sorted(s.bit_count() for s in core_sides)
        if p < 2 or core.num_edges != p * q:
            continue
        y_side = next(s for s in sides if (s >> y) & 1).bit_count()
        if y_side == p:
            return FamilyKind(Family.PLUS, p, q, isolated)
    return none
