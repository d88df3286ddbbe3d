from __future__ import annotations

from collections import Counter

import pytest

from nearbip.canon import canonical_form
from nearbip.errors import CapacityError
from nearbip.graph import complete_bipartite, disjoint_union, Graph, is_bipartite, k_minus, k_plus
from nearbip.oracle import (
    EnumerationSpec,
    count_graphs,
    cospectral_classes,
    cospectral_mates,
    enumerate_graphs,
    verify_ds,
    verify_theorem9_window,
)
from nearbip.poly import char_poly_cofactor


def test_counts_match_atlas(atlas):
    by_n = Counter(g.n for g in atlas)
    for n in range(8):
        forms = {canonical_form(g) for g in enumerate_graphs(EnumerationSpec(n))}
        assert len(forms) == by_n[n]
        assert forms == {canonical_form(g) for g in atlas if g.n == n}


def test_count_n8():
    assert count_graphs(EnumerationSpec(8)) == 12346


def test_bipartite_counts():
    expected = [1, 1, 2, 3, 7, 13, 35, 88, 303]
    assert [count_graphs(EnumerationSpec(n, bipartite_only=True)) for n in range(9)] == expected


def test_edge_filter_partitions_level(atlas):
    for n in range(1, 8):
        per_e = Counter(g.num_edges for g in atlas if g.n == n)
        for e, count in per_e.items():
            assert count_graphs(EnumerationSpec(n, edge_filter=e)) == count


def test_bipartite_only_filter(atlas):
    for n in range(1, 8):
        assert count_graphs(EnumerationSpec(n, bipartite_only=True)) == sum(
            1 for g in atlas if g.n == n and is_bipartite(g)
        )


def test_cospectral_classes_match_atlas(atlas):
    for n in range(1, 8):
        groups: dict = {}
        for g in atlas:
            if g.n == n:
                groups.setdefault(char_poly_cofactor(g), set()).add(canonical_form(g))
        expected = {p: forms for p, forms in groups.items() if len(forms) > 1}
        got = {c.poly: {canonical_form(g) for g in c.members} for c in cospectral_classes(EnumerationSpec(n))}
        assert got == expected


def test_smallest_pair():
    assert not any(cospectral_classes(EnumerationSpec(n)) for n in range(1, 5))
    (cls,) = cospectral_classes(EnumerationSpec(5))
    assert {canonical_form(g) for g in cls.members} == {
        canonical_form(complete_bipartite(1, 4)),
        canonical_form(disjoint_union(complete_bipartite(2, 2), Graph.empty(1))),
    }
    assert cls.to_json()["count"] == 2


def test_verify_ds_small():
    ok, mates = verify_ds(complete_bipartite(1, 4))
    assert not ok and len(mates) == 1
    assert canonical_form(mates[0]) == canonical_form(disjoint_union(complete_bipartite(2, 2), Graph.empty(1)))
    assert verify_ds(k_minus(3, 4))[0]
    assert verify_ds(k_plus(3, 4))[0]


def test_mates_parallel_matches_serial():
    g = complete_bipartite(1, 6)
    serial = cospectral_mates(g)
    parallel = cospectral_mates(g, workers=2)
    assert [canonical_form(h) for h in serial] == [canonical_form(h) for h in parallel]


def test_window_small():
    rows = verify_theorem9_window(7)
    assert rows and all(r.passed for r in rows)
    assert {(r.p, r.q) for r in rows} == {(2, 2), (2, 3), (2, 4), (2, 5), (3, 3), (3, 4)}


def test_capacity():
    with pytest.raises(CapacityError):
        EnumerationSpec(11)
    with pytest.raises(CapacityError):
        EnumerationSpec(13, cap=13)
