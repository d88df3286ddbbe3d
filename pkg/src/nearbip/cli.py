"""Command-line interface.

Exit codes: 0 success or DS, 10 not DS, 1 a verification suite failed,
64 usage error, 65 malformed input data, 74 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Callable, Sequence, TextIO

from . import ds, graph6, oracle
from .canon import canonical_form
from .errors import CapacityError, DomainError, Graph6Error
from .graph import Graph, complete_bipartite, disjoint_union, k_minus, k_plus
from .poly import IntPolynomial, char_poly, format_poly, poly_equal
from .spectra import (
    quartic_to_poly,
    spectrum_complete,
    spectrum_k_minus,
    spectrum_k_plus,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_NOT_DS = 10
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_IO = 74

FAMILIES = ("kpq", "kpq-", "kpq+")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump(obj: object, out: TextIO) -> None:
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _check_family_args(family: str, p: int, q: int) -> None:
    low = 1 if family == "kpq" else 2
    if min(p, q) < low:
        raise UsageError(f"{family} needs min(p, q) >= {low}, got ({p}, {q})")


def _label(family: str, p: int, q: int) -> str:
    suffix = {"kpq": "", "kpq-": "-", "kpq+": "+"}[family]
    p, q = min(p, q), max(p, q)
    return f"K_{{{p},{q}}}{suffix}"


# ---------------------------------------------------------------------------
# spectrum


def cmd_spectrum(args: argparse.Namespace, out: TextIO) -> int:
    family, p, q = args.family, args.p, args.q
    _check_family_args(family, p, q)
    if family == "kpq":
        shape = spectrum_complete(p, q)
        data = shape.to_json()
        poly_text = format_poly(IntPolynomial([0] * (shape.n - 2) + [-shape.c, 0, 1]))
        approx = None
    else:
        qs = spectrum_k_minus(p, q) if family == "kpq-" else spectrum_k_plus(p, q)
        data = qs.to_json()
        poly_text = format_poly(quartic_to_poly(qs))
        approx = qs.approx_eigenvalues()
    if args.json:
        if args.poly:
            data["poly"] = poly_text
        if args.approx and approx is not None:
            data["approx_eigenvalues"] = approx
        _dump(data, out)
        return EXIT_OK
    if args.poly:
        out.write(poly_text + "\n")
        return EXIT_OK
    out.write(f"{_label(family, p, q)}  n={data['n']}\n")
    if family == "kpq":
        out.write(f"spectrum: {{0^{data['zeros']}, +-sqrt({data['lambda_sq']})}}  lambda^2 = {data['lambda_sq']}\n")
    else:
        out.write(f"quartic: zeros={data['zeros']} s={data['s']} t={data['t']}\n")
        out.write(f"char poly: x^{data['zeros']} (x^4 - {data['s']}x^2 + {data['t']})\n")
    if args.approx and approx is not None:
        out.write("approx (not authoritative): " + ", ".join(approx) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# ds


def _ds_payload(family: str, p: int, q: int) -> tuple[dict, bool]:
    p, q = min(p, q), max(p, q)
    if family == "kpq":
        mates = ds.complete_bipartite_mates(p, q)
        payload: dict = {"family": family, "p": p, "q": q, "status": "NotDS" if mates else "DS"}
        if mates:
            payload["mates"] = [
                {"p2": a, "q2": b, "isolated": k, "label": f"K_{{{a},{b}}} u {k}K1"} for a, b, k in mates
            ]
        return payload, not mates
    verdict = ds.ds_check_k_minus(p, q) if family == "kpq-" else ds.ds_check_k_plus(p, q)
    payload = {"family": family, **verdict.to_json(), "reason": verdict.reason}
    if verdict.mate is not None:
        payload["mate"]["label"] = verdict.mate.label()
        if verdict.mate.p2 + verdict.mate.q2 + verdict.mate.isolated <= 64:
            payload["mate"]["graph6"] = graph6.encode(ds.build_mate(verdict))
    return payload, verdict.is_ds


def cmd_ds(args: argparse.Namespace, out: TextIO) -> int:
    _check_family_args(args.family, args.p, args.q)
    payload, is_ds = _ds_payload(args.family, args.p, args.q)
    _dump(payload, out)
    return EXIT_OK if is_ds else EXIT_NOT_DS


# ---------------------------------------------------------------------------
# atlas


def atlas_records(q_max: int) -> list[dict]:
    records = []
    for inst in ds.enumerate_non_ds(q_max):
        verdict = ds.ds_check_k_plus(inst.p, inst.q)
        assert verdict.mate is not None and (verdict.mate.p2, verdict.mate.q2) == (inst.p2, inst.q2)
        n = inst.p + inst.q + 1
        record = {
            "family": {"kind": "plus_pendant", "p": inst.p, "q": inst.q},
            "n": n,
            "e": inst.p * inst.q + 1,
            "quartic": spectrum_k_plus(inst.p, inst.q).to_json(),
            "verdict": {**verdict.to_json(), "witnesses": [w.to_json() for w in inst.witnesses]},
            "mate_label": verdict.mate.label(),
            "mate_graph6": graph6.encode(ds.build_mate(verdict)) if n <= 64 else None,
        }
        records.append(record)
    return records


def cmd_atlas(args: argparse.Namespace, out: TextIO) -> int:
    if args.max_q < 3:
        raise UsageError("--max-q must be at least 3")
    text = json.dumps(atlas_records(args.max_q), sort_keys=True, indent=1) + "\n"
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        out.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _suite_figure1(args: argparse.Namespace) -> list[tuple[str, bool, str]]:
    checks = []
    for n in range(1, 5):
        classes = oracle.cospectral_classes(oracle.EnumerationSpec(n))
        checks.append((f"n={n}: no cospectral pair", not classes, f"{len(classes)} classes"))
    classes = oracle.cospectral_classes(oracle.EnumerationSpec(5))
    expected = {
        canonical_form(complete_bipartite(1, 4)),
        canonical_form(disjoint_union(complete_bipartite(2, 2), Graph.empty(1))),
    }
    ok = (
        len(classes) == 1
        and {canonical_form(g) for g in classes[0].members} == expected
        and format_poly(classes[0].poly) == "x^5 - 4x^3"
    )
    detail = "; ".join(f"{format_poly(c.poly)}: {[graph6.encode(g) for g in c.members]}" for c in classes)
    checks.append(("n=5: exactly {K_{1,4}, K_{2,2} u K1}", ok, detail))
    return checks


def _suite_theorem9(args: argparse.Namespace) -> list[tuple[str, bool, str]]:
    n_max = args.n or 9
    rows = oracle.verify_theorem9_window(n_max, cap=max(n_max, oracle.DEFAULT_CAP), workers=args.threads)
    return [
        (f"K_{{{r.p},{r.q}}}- (n={r.n}, e={r.edges}) has no mate", r.passed, f"{r.seconds:.2f}s")
        for r in rows
    ]


def _suite_theorem10(args: argparse.Namespace) -> list[tuple[str, bool, str]]:
    checks = []
    if args.flagship:
        targets = [(3, 6)]
    else:
        n_max = args.n or 9
        targets = [(p, q) for q in range(2, n_max) for p in range(2, q + 1) if p + q + 1 <= n_max]
    for p, q in targets:
        g = k_plus(p, q)
        verdict = ds.ds_check_k_plus(p, q)
        _, mates = oracle.verify_ds(g, cap=max(g.n, oracle.DEFAULT_CAP), workers=args.threads)
        if verdict.is_ds:
            ok = not mates
        else:
            expected = canonical_form(ds.build_mate(verdict))
            ok = len(mates) == 1 and canonical_form(mates[0]) == expected
        label = verdict.mate.label() if verdict.mate else "DS"
        checks.append(
            (f"K_{{{p},{q}}}+ (n={g.n}, e={g.num_edges}): {label}", ok, f"{len(mates)} mates found")
        )
    return checks


def _suite_prop5(args: argparse.Namespace) -> list[tuple[str, bool, str]]:
    max_q = args.max_q or 50
    bad = []
    count = 0
    for q in range(2, max_q + 1):
        for p in range(2, q + 1):
            if p + q <= 64 and not poly_equal(quartic_to_poly(spectrum_k_minus(p, q)), char_poly(k_minus(p, q))):
                bad.append(f"K_{{{p},{q}}}-")
            if p + q + 1 <= 64 and not poly_equal(quartic_to_poly(spectrum_k_plus(p, q)), char_poly(k_plus(p, q))):
                bad.append(f"K_{{{p},{q}}}+")
            count += 1
    return [(f"closed forms match char polys for 2 <= p <= q <= {max_q}", not bad, f"{count} pairs; bad={bad}")]


def _suite_lemma11(args: argparse.Namespace) -> list[tuple[str, bool, str]]:
    max_q = args.max_q or 2000
    by_params = [(i.p, i.q) for i in ds.enumerate_non_ds(max_q)]
    by_roots = ds.non_ds_by_roots(max_q)
    return [
        (
            f"parametrisation and quadratic agree for q <= {max_q}",
            by_params == by_roots,
            f"{len(by_params)} vs {len(by_roots)} instances",
        )
    ]


SUITES: dict[str, Callable[[argparse.Namespace], list[tuple[str, bool, str]]]] = {
    "figure1": _suite_figure1,
    "theorem9": _suite_theorem9,
    "theorem10": _suite_theorem10,
    "prop5": _suite_prop5,
    "lemma11": _suite_lemma11,
}


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    start = time.perf_counter()
    checks = SUITES[args.suite](args)
    elapsed = time.perf_counter() - start
    passed = all(ok for _, ok, _ in checks)
    if args.json:
        _dump(
            {
                "suite": args.suite,
                "pass": passed,
                "seconds": round(elapsed, 3),
                "checks": [{"name": n, "pass": ok, "detail": d} for n, ok, d in checks],
            },
            out,
        )
    else:
        for name, ok, detail in checks:
            out.write(f"[{'PASS' if ok else 'FAIL'}] {name}  ({detail})\n")
        out.write(f"{args.suite}: {'PASS' if passed else 'FAIL'} in {elapsed:.2f}s\n")
    return EXIT_OK if passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# classes


def cmd_classes(args: argparse.Namespace, out: TextIO) -> int:
    """Cospectral classes of all graphs on --n vertices as graph6 lines plus a JSON index."""
    spec = oracle.EnumerationSpec(args.n, edge_filter=args.edges, bipartite_only=args.bipartite)
    classes = oracle.cospectral_classes(spec, keep_singletons=args.singletons)
    index = [cls.to_json() for cls in classes]
    lines = "".join(graph6.encode(g) + "\n" for cls in classes for g in cls.members)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(lines)
            with open(args.out + ".json", "w", encoding="utf-8") as fh:
                fh.write(json.dumps(index, sort_keys=True, indent=1) + "\n")
        except OSError as exc:
            print(f"cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        _dump(index, out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# charpoly


def cmd_charpoly(args: argparse.Namespace, out: TextIO) -> int:
    lines = [args.graph6] if args.graph6 else [ln.strip() for ln in sys.stdin if ln.strip()]
    for text in lines:
        try:
            g = graph6.decode(text)
        except Graph6Error as exc:
            print(f"parse error: {exc}", file=sys.stderr)
            return EXIT_DATA
        p = char_poly(g)
        if args.json:
            _dump({"graph6": text, "coeffs": p.to_json()}, out)
        else:
            out.write(format_poly(p) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nearbip", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("spectrum", help="closed-form spectrum of a family member")
    sp.add_argument("family", choices=FAMILIES)
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--poly", action="store_true", help="print the characteristic polynomial")
    sp.add_argument("--approx", action="store_true", help="decimal eigenvalues (not authoritative)")
    sp.set_defaults(func=cmd_spectrum)

    dp = sub.add_parser("ds", help="decide whether a family member is determined by its spectrum")
    dp.add_argument("family", choices=FAMILIES)
    dp.add_argument("p", type=int)
    dp.add_argument("q", type=int)
    dp.add_argument("--json", action="store_true", help="accepted for uniformity; output is always JSON")
    dp.set_defaults(func=cmd_ds)

    ap = sub.add_parser("atlas", help="all non-DS K^+_{p,q} with q <= max-q as JSON")
    ap.add_argument("--max-q", type=int, required=True)
    ap.add_argument("--out", metavar="PATH")
    ap.set_defaults(func=cmd_atlas)

    vp = sub.add_parser("verify", help="run a verification suite")
    vp.add_argument("suite", choices=sorted(SUITES))
    vp.add_argument("--max-q", type=int)
    vp.add_argument("--n", type=int)
    vp.add_argument("--threads", type=int, default=1)
    vp.add_argument("--flagship", action="store_true", help="exhaustive n=10, e=19 check of K^+_{3,6}")
    vp.add_argument("--json", action="store_true")
    vp.set_defaults(func=cmd_verify)

    kp = sub.add_parser("classes", help="cospectral classes among all graphs on n vertices")
    kp.add_argument("--n", type=int, required=True)
    kp.add_argument("--edges", type=int)
    kp.add_argument("--bipartite", action="store_true")
    kp.add_argument("--singletons", action="store_true", help="keep classes with one member")
    kp.add_argument("--out", metavar="PATH", help="graph6 lines to PATH, index to PATH.json")
    kp.set_defaults(func=cmd_classes)

    cp = sub.add_parser("charpoly", help="exact characteristic polynomial of graph6 input")
    cp.add_argument("graph6", nargs="?")
    cp.add_argument("--json", action="store_true")
    cp.set_defaults(func=cmd_charpoly)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, DomainError, CapacityError) as exc:
        print(f"nearbip: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
