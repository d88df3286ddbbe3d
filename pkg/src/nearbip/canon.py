"""Canonical labelling by colour refinement plus individualisation search.

The search explores an individualisation tree over equitable partitions and
keeps the lexicographically largest relabelled adjacency.  Automorphisms
discovered at leaves prune sibling branches lying in a common orbit of the
subgroup that fixes the current prefix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import CapacityError
from .graph import Graph

DEFAULT_CAP = 12


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Relabelling-invariant certificate of an isomorphism class."""

    cert: bytes

    def hex(self) -> str:
        return self.cert.hex()


def _refine(adj: Sequence[int], n: int, colors: list[int]) -> tuple[list[int], int]:
    """Refine ``colors`` (ranks 0..k-1) to the coarsest equitable partition below it."""
    k = len(set(colors))
    while True:
        masks = [0] * k
        for v in range(n):
            masks[colors[v]] |= 1 << v
        sigs = [
            (colors[v],) + tuple((adj[v] & m).bit_count() for m in masks) for v in range(n)
        ]
        uniq = sorted(set(sigs))
        if len(uniq) == k:
            return colors, k
        rank = {s: i for i, s in enumerate(uniq)}
        colors = [rank[s] for s in sigs]
        k = len(uniq)


def _individualize(colors: list[int], v: int) -> list[int]:
    out = [2 * c + 1 for c in colors]
    out[v] -= 1
    order = sorted(set(out))
    rank = {c: i for i, c in enumerate(order)}
    return [rank[c] for c in out]


def _relabelled_rows(adj: Sequence[int], pos: Sequence[int]) -> tuple[int, ...]:
    rows = [0] * len(adj)
    for v, row in enumerate(adj):
        new = 0
        while row:
            low = row & -row
            new |= 1 << pos[low.bit_length() - 1]
            row ^= low
        rows[pos[v]] = new
    return tuple(rows)


def _orbit_rep(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _twin_transpositions(adj: Sequence[int], n: int) -> list[list[int]]:
    """Transpositions of vertices with equal open or closed neighbourhoods."""
    autos = []
    for u in range(n):
        for v in range(u + 1, n):
            bit = (1 << u) | (1 << v)
            if (adj[u] | bit) == (adj[v] | bit):
                a = list(range(n))
                a[u], a[v] = v, u
                autos.append(a)
    return autos


def canonical_labeling(adj: Sequence[int], n: int) -> tuple[tuple[int, ...], list[int]]:
    """Return (canonical rows, position of each vertex) for the graph given by ``adj``."""
    if n == 0:
        return (), []
    degree_rank = sorted({row.bit_count() for row in adj})
    start = [degree_rank.index(row.bit_count()) for row in adj]
    colors, k = _refine(adj, n, start)
    best: list = [None, None]  # code, positions
    autos = _twin_transpositions(adj, n)

    def search(colors: list[int], k: int, prefix: tuple[int, ...]) -> None:
        if k == n:
            code = _relabelled_rows(adj, colors)
            if best[0] is None or code > best[0]:
                best[0], best[1] = code, colors
            elif code == best[0]:
                inverse = [0] * n
                for u, p in enumerate(best[1]):
                    inverse[p] = u
                autos.append([inverse[colors[v]] for v in range(n)])
            return
        sizes = [0] * k
        for c in colors:
            sizes[c] += 1
        target = next(c for c in range(k) if sizes[c] > 1)
        cell = [v for v in range(n) if colors[v] == target]
        parent = list(range(n))
        used = 0
        done: list[int] = []
        for v in cell:
            if done:
                while used < len(autos):
                    a = autos[used]
                    used += 1
                    if all(a[x] == x for x in prefix):
                        for x in range(n):
                            rx, ry = _orbit_rep(parent, x), _orbit_rep(parent, a[x])
                            if rx != ry:
                                parent[max(rx, ry)] = min(rx, ry)
                rv = _orbit_rep(parent, v)
                if any(_orbit_rep(parent, u) == rv for u in done):
                    continue
            child, k2 = _refine(adj, n, _individualize(colors, v))
            search(child, k2, prefix + (v,))
            done.append(v)

    search(colors, k, ())
    return best[0], best[1]


def certificate(adj: Sequence[int], n: int) -> bytes:
    rows, _ = canonical_labeling(adj, n)
    return bytes([n]) + b"".join(r.to_bytes(8, "little") for r in rows)


def canonical_form(g: Graph, cap: int = DEFAULT_CAP) -> CanonicalForm:
    if g.n > cap:
        raise CapacityError(f"canonical labelling capped at n={cap}, got n={g.n}")
    return CanonicalForm(certificate(g.adj, g.n))


def canonical_graph(g: Graph, cap: int = DEFAULT_CAP) -> Graph:
    """The canonical representative of g's isomorphism class."""
    if g.n > cap:
        raise CapacityError(f"canonical labelling capped at n={cap}, got n={g.n}")
    rows, _ = canonical_labeling(g.adj, g.n)
    return Graph(g.n, rows)


def is_isomorphic(g: Graph, h: Graph, cap: int = DEFAULT_CAP) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    return canonical_form(g, cap) == canonical_form(h, cap)
