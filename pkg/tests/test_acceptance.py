"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line."""

from __future__ import annotations

import time

import pytest

from nearbip import ds
from nearbip.canon import canonical_form, is_isomorphic
from nearbip.cli import atlas_records
from nearbip.graph import (
    Graph,
    complete_bipartite,
    disjoint_union,
    is_bipartite,
    k_minus,
    k_plus,
    MAX_VERTICES,
)
from nearbip.oracle import (
    EnumerationSpec,
    cospectral_classes,
    enumerate_graphs,
    graphs_with_polys,
    verify_ds,
    verify_theorem9_window,
)
from nearbip.poly import IntPolynomial, char_poly, char_poly_batch, adjacency_stack, even_part
from nearbip.spectra import (
    QuarticSpectrum,
    in_family_set,
    is_complete_bipartite_plus_isolated,
    is_complete_bipartite_spectrum,
    lemma7_threshold_holds,
    lemma7_threshold_interval,
    quartic_to_poly,
    rho_leq_sqrt_e,
    spectrum_k_minus,
    spectrum_k_plus,
)

TABLE = {
    (3, 6): ((4, 5, 1), {(2, 1, 1, 1), (3, 2, 2, 0)}),
    (4, 10): ((6, 7, 2), {(2, 1, 1, 2), (5, 3, 2, 0)}),
    (5, 14): ((8, 9, 3), {(2, 1, 1, 3), (7, 4, 2, 0)}),
    (4, 12): ((5, 10, 2), {(3, 1, 1, 1), (4, 3, 3, 0)}),
    (5, 15): ((7, 11, 3), {(3, 2, 2, 1), (5, 2, 3, 0)}),
    (6, 18): ((10, 11, 4), {(2, 1, 1, 4), (9, 5, 2, 0)}),
    (5, 20): ((6, 17, 3), {(4, 1, 1, 1), (5, 4, 4, 0)}),
}


@pytest.fixture
def report(capsys):
    def emit(number: int, name: str, ok: bool, seconds: float, limit: float, detail: str = "") -> None:
        within = seconds < limit
        status = "PASS" if ok and within else "FAIL"
        with capsys.disabled():
            print(f"\n[{status}] criterion {number}: {name} ({seconds:.2f}s, limit {limit:.0f}s) {detail}".rstrip())
        assert ok, detail
        assert within, f"{seconds:.2f}s exceeds {limit}s"

    return emit


def test_criterion_01_table(report):
    start = time.perf_counter()
    records = atlas_records(20)
    seconds = time.perf_counter() - start
    got = {}
    for r in records:
        v = r["verdict"]
        key = (v["p"], v["q"])
        mate = (v["mate"]["p2"], v["mate"]["q2"], v["mate"]["isolated"])
        witnesses = {(w["a"], w["b"], w["bp"], w["t"]) for w in v["witnesses"]}
        got[key] = (mate, witnesses)
    ok = len(records) == 7 and set(got) == set(TABLE)
    ok = ok and all(got[k][0] == TABLE[k][0] and TABLE[k][1] <= got[k][1] for k in TABLE)
    report(1, "non-DS table for q <= 20", ok, seconds, 1, f"{len(records)} records")


def test_criterion_02_smallest_pair(report):
    start = time.perf_counter()
    small = [cospectral_classes(EnumerationSpec(n)) for n in range(0, 5)]
    five = cospectral_classes(EnumerationSpec(5))
    seconds = time.perf_counter() - start
    expected = {
        canonical_form(complete_bipartite(1, 4)),
        canonical_form(disjoint_union(complete_bipartite(2, 2), Graph.empty(1))),
    }
    ok = not any(small) and len(five) == 1
    ok = ok and {canonical_form(g) for g in five[0].members} == expected
    ok = ok and five[0].poly == IntPolynomial([0, 0, 0, -4, 0, 1])
    report(2, "smallest cospectral pair at n = 5", ok, seconds, 1)


def test_criterion_03_closed_forms(report):
    start = time.perf_counter()
    bad = []
    checked = 0
    for p in range(2, 31):
        for q in range(p, 61 - p):
            if quartic_to_poly(spectrum_k_minus(p, q)) != char_poly(k_minus(p, q)):
                bad.append(("minus", p, q))
            checked += 1
            if p + q + 1 <= MAX_VERTICES:
                if quartic_to_poly(spectrum_k_plus(p, q)) != char_poly(k_plus(p, q)):
                    bad.append(("plus", p, q))
                checked += 1
    seconds = time.perf_counter() - start
    report(3, "closed-form spectra for p + q <= 60", not bad and checked > 0, seconds, 60, f"{checked} checks")


def test_criterion_04_minus_window(report):
    start = time.perf_counter()
    rows = verify_theorem9_window(9)
    # independent pass over the fully enumerated, deduplicated levels
    stream_mates = []
    for n in range(4, 10):
        graphs = list(enumerate_graphs(EnumerationSpec(n)))
        polys = char_poly_batch(adjacency_stack(graphs))
        for p in range(2, n - 1):
            q = n - p
            if q < p:
                continue
            target = k_minus(p, q)
            want = tuple(char_poly(target).coeffs)
            tform = canonical_form(target)
            for g, row in zip(graphs, polys.tolist()):
                if tuple(IntPolynomial(row).coeffs) == want and canonical_form(g) != tform:
                    stream_mates.append((p, q))
    seconds = time.perf_counter() - start
    ok = len(rows) == 12 and all(r.passed for r in rows) and not stream_mates
    report(4, "minus-edge family has no mate for p + q <= 9", ok, seconds, 600, f"{len(rows)} targets")


def test_criterion_05_flagship(report):
    start = time.perf_counter()
    ok_ds, mates = verify_ds(k_plus(3, 6))
    seconds = time.perf_counter() - start
    expected = ds.build_mate(ds.ds_check_k_plus(3, 6))
    ok = not ok_ds and len(mates) == 1 and is_isomorphic(mates[0], expected)
    ok = ok and is_isomorphic(expected, disjoint_union(k_minus(4, 5), Graph.empty(1)))
    report(5, "K^+_{3,6} has exactly one mate among n = 10, e = 19", ok, seconds, 1800, f"{len(mates)} mates")


def test_criterion_06_soundness_at_scale(report):
    start = time.perf_counter()
    bad = []
    explicit = symbolic = 0
    for q in range(3, 201):
        for p in range(3, q + 1):
            v = ds.ds_check_k_plus(p, q)
            if v.is_ds:
                continue
            m = v.mate
            mate_quartic = spectrum_k_minus(m.p2, m.q2)
            lifted = QuarticSpectrum(mate_quartic.zeros + m.isolated, mate_quartic.s, mate_quartic.t)
            if lifted != spectrum_k_plus(p, q):
                bad.append((p, q, "quartic"))
            symbolic += 1
            if p + q + 1 <= MAX_VERTICES:
                g, h = k_plus(p, q), ds.build_mate(v)
                if char_poly(g) != char_poly(h):
                    bad.append((p, q, "poly"))
                if canonical_form(g, cap=MAX_VERTICES) == canonical_form(h, cap=MAX_VERTICES):
                    bad.append((p, q, "isomorphic"))
                explicit += 1
    seconds = time.perf_counter() - start
    report(
        6,
        "non-DS verdicts sound for q <= 200",
        not bad and explicit > 0,
        seconds,
        60,
        f"{symbolic} symbolic, {explicit} explicit",
    )


def test_criterion_07_sweeps_agree(report):
    start = time.perf_counter()
    by_params = [(i.p, i.q) for i in ds.enumerate_non_ds(2000)]
    by_roots = ds.non_ds_by_roots(2000)
    seconds = time.perf_counter() - start
    report(7, "parametrisation equals integral-root sweep for q <= 2000", by_params == by_roots, seconds, 60,
           f"{len(by_params)} instances")


def test_criterion_08_remark_family(report):
    start = time.perf_counter()
    bad = []
    for m in range(1, 101):
        (p, q), (p2, q2), iso = ds.remark_family_instance(m)
        plus = spectrum_k_plus(p, q)
        minus = spectrum_k_minus(p2, q2)
        if (plus.s, plus.t, plus.zeros) != (minus.s, minus.t, minus.zeros + iso):
            bad.append(m)
        if plus.s != 4 * m * m + 10 * m + 5:
            bad.append(m)
        if ds.corollary12_instance(m, 2) != (p, q, p2, q2, iso):
            bad.append(m)
    seconds = time.perf_counter() - start
    report(8, "remark family shares quartic data for m <= 100", not bad, seconds, 1)


def test_criterion_09_coefficients(report):
    start = time.perf_counter()
    bad = []
    total = 0
    for n in range(2, 9):
        for g, p in graphs_with_polys(EnumerationSpec(n)):
            total += 1
            if p[n - 1] != 0 or p[n - 2] != -g.num_edges:
                bad.append((g, "coefficients"))
            if (even_part(p) is not None) != is_bipartite(g):
                bad.append((g, "bipartite"))
            if (is_complete_bipartite_spectrum(p) is not None) != is_complete_bipartite_plus_isolated(g):
                bad.append((g, "complete"))
    seconds = time.perf_counter() - start
    report(9, "coefficient properties for n <= 8", not bad and total == 13597, seconds, 300, f"{total} graphs")


def test_criterion_10_radius_bounds(report):
    start = time.perf_counter()
    bad = []
    bipartite = outside = spot = 0
    for n in range(1, 9):
        for g in enumerate_graphs(EnumerationSpec(n, bipartite_only=True)):
            bipartite += 1
            holds, equality = rho_leq_sqrt_e(g)
            if not holds or equality != is_complete_bipartite_plus_isolated(g):
                bad.append((g, "rho"))
            if g.isolated_vertices() or in_family_set(g):
                continue
            outside += 1
            exact = lemma7_threshold_holds(g)
            if exact:
                bad.append((g, "threshold"))
            interval = lemma7_threshold_interval(g)
            if interval is not None:
                spot += 1
                if interval != exact:
                    bad.append((g, "interval"))
    seconds = time.perf_counter() - start
    report(
        10,
        "radius bound and threshold at n <= 8",
        not bad and outside > 0,
        seconds,
        600,
        f"{bipartite} bipartite, {outside} outside family, {spot} interval-checked",
    )
