"""Brute-force verification: isomorph-free graph enumeration and cospectral search.

Graphs on ``k + 1`` vertices are produced from the complete list on ``k``
vertices by attaching a new vertex to every neighbour set that makes it a
maximal vertex under the invariant (degree, sum of neighbour degrees).  Every
isomorphism class arises this way: delete a maximal vertex and the remainder
is one of the parents.  Duplicates are removed with canonical certificates.

``verify_ds`` uses the same covering argument on the last level but skips the
deduplication of all children: it keeps only children whose exact
characteristic polynomial matches the target and canonicalises those.
"""

from __future__ import annotations

import itertools
import logging
import time
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .canon import canonical_labeling, certificate
from .errors import CapacityError
from .graph import Graph, bipartition, k_minus
from .graph6 import encode
from .poly import IntPolynomial, char_poly, char_poly_batch

log = logging.getLogger(__name__)

DEFAULT_CAP = 10
HARD_CAP = 12
_KEY_SHIFT = 256  # neighbour-degree sums stay below 12 * 11


@dataclass(frozen=True)
class EnumerationSpec:
    n: int
    edge_filter: int | None = None
    bipartite_only: bool = False
    cap: int = DEFAULT_CAP

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.n > min(self.cap, HARD_CAP):
            raise CapacityError(f"enumeration capped at n={min(self.cap, HARD_CAP)}, got n={self.n}")


@dataclass
class CospectralClass:
    poly: IntPolynomial
    members: list[Graph] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "poly": self.poly.to_json(),
            "count": len(self.members),
            "members": [encode(g) for g in self.members],
        }


# ---------------------------------------------------------------------------
# level-by-level generation


@lru_cache(maxsize=None)
def _subset_table(k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All subsets of range(k): (0/1 matrix, bitmask, size)."""
    masks = np.arange(1 << k, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(k)) & 1).astype(np.int64)
    return bits, masks, bits.sum(axis=1)


def _accepted_subsets(rows: Sequence[int], size: int | None = None) -> np.ndarray:
    """Neighbour sets for a new vertex that leave it maximal under the invariant."""
    k = len(rows)
    bits, masks, sizes = _subset_table(k)
    if size is not None:
        sel = sizes == size
        bits, masks, sizes = bits[sel], masks[sel], sizes[sel]
    if k == 0:
        return masks
    parent = np.array([[(r >> j) & 1 for j in range(k)] for r in rows], dtype=np.int64)
    deg = parent.sum(axis=1)
    old_deg = deg + bits
    old_nsum = old_deg @ parent + bits * sizes[:, None]
    new_nsum = bits @ deg + sizes
    old_key = old_deg * _KEY_SHIFT + old_nsum
    new_key = sizes * _KEY_SHIFT + new_nsum
    return masks[new_key >= old_key.max(axis=1)]


def _child_rows(rows: Sequence[int], mask: int) -> tuple[int, ...]:
    k = len(rows)
    return tuple(r | (((mask >> i) & 1) << k) for i, r in enumerate(rows)) + (mask,)


def _edges(rows: Sequence[int]) -> int:
    return sum(r.bit_count() for r in rows) // 2


def _is_bipartite_rows(rows: tuple[int, ...]) -> bool:
    return bipartition(Graph(len(rows), rows)) is not None


def _extend(
    parents: Sequence[tuple[int, ...]],
    bipartite_only: bool,
    edges: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield canonical rows of each new isomorphism class on one more vertex."""
    seen: set[bytes] = set()
    k = len(parents[0]) if parents else 0
    for rows in parents:
        size = None
        if edges is not None:
            size = edges - _edges(rows)
            if not 0 <= size <= k:
                continue
        for mask in _accepted_subsets(rows, size).tolist():
            child = _child_rows(rows, mask)
            if bipartite_only and not _is_bipartite_rows(child):
                continue
            canon, _ = canonical_labeling(child, k + 1)
            cert = _cert_from_rows(canon)
            if cert not in seen:
                seen.add(cert)
                yield canon


def _cert_from_rows(rows: Sequence[int]) -> bytes:
    return bytes([len(rows)]) + b"".join(r.to_bytes(8, "little") for r in rows)


@lru_cache(maxsize=None)
def _level(k: int, bipartite_only: bool) -> tuple[tuple[int, ...], ...]:
    """Every graph on k vertices (canonical rows), one per isomorphism class."""
    if k == 0:
        return ((),)
    start = time.perf_counter()
    out = tuple(_extend(_level(k - 1, bipartite_only), bipartite_only))
    log.info("level %d: %d graphs in %.1fs", k, len(out), time.perf_counter() - start)
    return out


def enumerate_graphs(spec: EnumerationSpec) -> Iterator[Graph]:
    """Stream one representative per isomorphism class matching ``spec``."""
    if spec.n == 0:
        if spec.edge_filter in (None, 0):
            yield Graph(0, ())
        return
    if spec.edge_filter is None:
        for rows in _level(spec.n, spec.bipartite_only):
            yield Graph(spec.n, rows)
        return
    parents = _level(spec.n - 1, spec.bipartite_only)
    for rows in _extend(parents, spec.bipartite_only, spec.edge_filter):
        yield Graph(spec.n, rows)


def count_graphs(spec: EnumerationSpec) -> int:
    return sum(1 for _ in enumerate_graphs(spec))


# ---------------------------------------------------------------------------
# cospectral classes


def _polys_for(graphs: Sequence[Graph], chunk: int = 50_000) -> list[IntPolynomial]:
    out: list[IntPolynomial] = []
    if not graphs:
        return out
    n = graphs[0].n
    if n == 0:
        return [IntPolynomial([1])] * len(graphs)
    shifts = np.arange(n, dtype=np.int64)
    for start in range(0, len(graphs), chunk):
        part = graphs[start : start + chunk]
        rows = np.array([g.adj for g in part], dtype=np.int64)
        mats = (rows[:, :, None] >> shifts) & 1
        out.extend(IntPolynomial(c) for c in char_poly_batch(mats).tolist())
    return out


def graphs_with_polys(spec: EnumerationSpec) -> list[tuple[Graph, IntPolynomial]]:
    graphs = list(enumerate_graphs(spec))
    return list(zip(graphs, _polys_for(graphs)))


def cospectral_classes(spec: EnumerationSpec, keep_singletons: bool = False) -> list[CospectralClass]:
    """Group the enumerated graphs by exact characteristic polynomial."""
    groups: dict[str, CospectralClass] = {}
    for g, p in graphs_with_polys(spec):
        groups.setdefault(p.key(), CospectralClass(p)).members.append(g)
    out = []
    for key in sorted(groups, key=lambda s: [int(c) for c in s.split(",")]):
        cls = groups[key]
        if len(cls.members) >= 2 or keep_singletons:
            cls.members.sort(key=lambda g: certificate(g.adj, g.n))
            out.append(cls)
    return out


# ---------------------------------------------------------------------------
# DS verification


def _matching_children(
    parents: Sequence[tuple[int, ...]],
    n: int,
    edges: int,
    target: np.ndarray,
) -> dict[bytes, tuple[int, ...]]:
    """Canonical forms of all n-vertex children with the target polynomial."""
    found: dict[bytes, tuple[int, ...]] = {}
    k = n - 1
    shifts = np.arange(k, dtype=np.int64)
    batch_parents: list[np.ndarray] = []
    batch_masks: list[np.ndarray] = []
    pending = 0

    def flush() -> None:
        nonlocal pending
        if not batch_masks:
            return
        par = np.concatenate(batch_parents)
        msk = np.concatenate(batch_masks)
        count = len(msk)
        mats = np.zeros((count, n, n), dtype=np.int64)
        mats[:, :k, :k] = (par[:, :, None] >> shifts) & 1
        col = (msk[:, None] >> shifts) & 1
        mats[:, :k, k] = col
        mats[:, k, :k] = col
        polys = char_poly_batch(mats)
        for idx in np.nonzero((polys == target).all(axis=1))[0].tolist():
            child = _child_rows(tuple(int(r) for r in par[idx]), int(msk[idx]))
            canon, _ = canonical_labeling(child, n)
            found.setdefault(_cert_from_rows(canon), canon)
        batch_parents.clear()
        batch_masks.clear()
        pending = 0

    for rows in parents:
        size = edges - _edges(rows)
        if not 0 <= size <= k:
            continue
        masks = _accepted_subsets(rows, size)
        if len(masks) == 0:
            continue
        batch_parents.append(np.broadcast_to(np.array(rows, dtype=np.int64), (len(masks), k)))
        batch_masks.append(masks)
        pending += len(masks)
        if pending >= 100_000:
            flush()
    flush()
    return found


def _worker(args: tuple[int, int, int, int, tuple[int, ...]]) -> dict[bytes, tuple[int, ...]]:
    lo, hi, n, edges, target = args
    parents = _level(n - 1, False)[lo:hi]
    return _matching_children(parents, n, edges, np.array(target, dtype=np.int64))


def cospectral_mates(g: Graph, cap: int = DEFAULT_CAP, workers: int = 1) -> list[Graph]:
    """Every graph on n(g) vertices that is cospectral with but not isomorphic to g.

    Candidates are restricted to n(g) vertices and e(g) edges; both are
    determined by the spectrum, so the restriction loses nothing.
    """
    n = g.n
    if n > min(cap, HARD_CAP):
        raise CapacityError(f"DS verification capped at n={min(cap, HARD_CAP)}, got n={n}")
    if n <= 1:
        return []
    target = char_poly(g)
    edges = g.num_edges
    parents = _level(n - 1, False)
    coeffs = tuple(target.coeffs)
    if workers > 1 and len(parents) > 1000:
        step = -(-len(parents) // workers)
        jobs = [(lo, min(lo + step, len(parents)), n, edges, coeffs) for lo in range(0, len(parents), step)]
        found: dict[bytes, tuple[int, ...]] = {}
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            for part in pool.map(_worker, jobs):
                for cert, rows in part.items():
                    found.setdefault(cert, rows)
    else:
        found = _matching_children(parents, n, edges, np.array(coeffs, dtype=np.int64))
    own = certificate(g.adj, n)
    return [Graph(n, found[c]) for c in sorted(found) if c != own]


def verify_ds(g: Graph, cap: int = DEFAULT_CAP, workers: int = 1) -> tuple[bool, list[Graph]]:
    mates = cospectral_mates(g, cap=cap, workers=workers)
    return not mates, mates


@dataclass
class WindowResult:
    p: int
    q: int
    n: int
    edges: int
    passed: bool
    mates: list[str]
    seconds: float

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "n": self.n,
            "e": self.edges,
            "pass": self.passed,
            "mates": self.mates,
            "seconds": round(self.seconds, 3),
        }


def verify_theorem9_window(n_max: int, cap: int = DEFAULT_CAP, workers: int = 1) -> list[WindowResult]:
    """Exhaustively check that K^-_{p,q} has no cospectral mate for all p + q <= n_max."""
    if n_max > min(cap, HARD_CAP):
        raise CapacityError(f"window capped at n={min(cap, HARD_CAP)}, got {n_max}")
    out = []
    for p, q in itertools.combinations_with_replacement(range(2, n_max + 1), 2):
        if p + q > n_max:
            continue
        g = k_minus(p, q)
        start = time.perf_counter()
        is_ds, mates = verify_ds(g, cap=cap, workers=workers)
        out.append(
            WindowResult(p, q, g.n, g.num_edges, is_ds, [encode(m) for m in mates], time.perf_counter() - start)
        )
    out.sort(key=lambda r: (r.p + r.q, r.p))
    return out
