"""Command-line interface: dimension tables, character values, verification suites,
basis listings and poset checks.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from . import basis as basis_mod
from . import charlib, freealg, genfun
from . import poset as poset_mod
from .rings import LaurentPoly
from .symfunc import SymFunc, char_value, cycle_types, degree, parse_cycle_type, plethysm

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

FORMULA_DEFAULT_N = 7
BRUTE_DEFAULT_N = 5
BRUTE_MAX_N = freealg.MAX_ARITY
COUNT_MAX_N = 7

_quiet = False


class UsageError(Exception):
    pass


def progress(msg: str) -> None:
    if not _quiet:
        print(msg, file=sys.stderr, flush=True)


def render(value) -> str:
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else str(value)
    if isinstance(value, SymFunc):
        return value.dumps()
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(render(v) for v in value) + "]"
    return str(value)


def cycle_label(rho) -> str:
    return ",".join(map(str, rho))


# series by route ------------------------------------------------------------------

def lie2_series(route: str, N: int) -> SymFunc:
    if route == "formula":
        return charlib.f_lie2_char(N)
    if route == "invert":
        return genfun.invert_plethystic(charlib.f_com2_char(N))
    if route == "brute":
        return freealg.brute_series(N)
    raise UsageError(f"unknown route {route!r}")


def operad_series(operad: str, route: str, N: int) -> SymFunc:
    if operad == "lie2":
        return lie2_series(route, N)
    if operad == "p2":
        return plethysm(charlib.f_com_char(N), lie2_series(route, N))
    if operad == "com2":
        if route == "formula":
            return charlib.f_com2_char(N)
        if route == "invert":
            return genfun.invert_plethystic(charlib.f_lie2_char(N))
        raise UsageError("com2 has no brute-force route")
    raise UsageError(f"unknown operad {operad!r}")


def _check_limits(route: str, N: int) -> None:
    if N < 1:
        raise UsageError("--max-n must be positive")
    if route == "brute" and N > BRUTE_MAX_N:
        raise UsageError(f"the brute route is capped at n = {BRUTE_MAX_N}")


# dims ----------------------------------------------------------------------------

def cmd_dims(args) -> int:
    N = args.max_n or (BRUTE_DEFAULT_N if args.route == "brute" else FORMULA_DEFAULT_N)
    _check_limits(args.route, N)
    progress(f"computing {args.operad} series to degree {N} via {args.route}")
    F = operad_series(args.operad, args.route, N)
    dims = genfun.dims_from_series(F, N)
    if args.format == "json":
        print(json.dumps({"operad": args.operad, "route": args.route, "dims": [int(d) for d in dims]}))
    else:
        for n, d in enumerate(dims, start=1):
            print(f"{n}\t{d}")
    return EXIT_OK


# character -----------------------------------------------------------------------

def _classes(n: int, text: Optional[str]):
    if text is None:
        return list(cycle_types(n))
    try:
        rho = parse_cycle_type(text)
    except ValueError as exc:
        raise UsageError(f"malformed cycle type {text!r}: {exc}") from exc
    if not rho or any(c < 0 for c in rho) or degree(rho) != n:
        raise UsageError(f"cycle type {text!r} does not describe a permutation of {n} points")
    return [rho]


def character_values(operad: str, n: int, route: str, classes) -> List[dict]:
    out = []
    if route == "mt":
        for rho in classes:
            ev = charlib.mt_evaluate(operad, rho)
            rec = {"cycle_type": list(rho), "value": ev.calibrated.to_json()}
            if ev.printed != ev.calibrated:
                rec["printed"] = ev.printed.to_json() if ev.printed is not None else None
                if ev.printed_error:
                    rec["printed_error"] = ev.printed_error
            out.append(rec)
        return out
    if route == "brute" and n > BRUTE_MAX_N:
        raise UsageError(f"the brute route is capped at n = {BRUTE_MAX_N}")
    if route == "brute" and operad == "lie2":
        model = freealg.build_quotient(n)
        for rho in classes:
            progress(f"trace on class {cycle_label(rho)}")
            val = freealg.character_on(model, freealg.permutation_of_type(rho))
            out.append({"cycle_type": list(rho), "value": val.to_json()})
        return out
    F = operad_series(operad, "brute" if route == "brute" else "formula", n)
    for rho in classes:
        out.append({"cycle_type": list(rho), "value": LaurentPoly.lift(char_value(F, rho)).to_json()})
    return out


def cmd_character(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be positive")
    classes = _classes(args.n, args.cycle_type)
    records = character_values(args.operad, args.n, args.route, classes)
    if args.format == "json":
        print(json.dumps({"operad": args.operad, "n": args.n, "classes": records}, indent=2))
        return EXIT_OK
    for rec in records:
        line = f"{cycle_label(rec['cycle_type'])}\t{LaurentPoly.from_json(rec['value'])}"
        if "printed" in rec:
            printed = rec["printed"]
            shown = LaurentPoly.from_json(printed) if printed is not None else rec.get("printed_error")
            line += f"\tprinted form: {shown}"
        print(line)
    return EXIT_OK


# verification ---------------------------------------------------------------------

@dataclass
class CheckRecord:
    name: str
    inputs: dict
    expected: str
    actual: str
    passed: bool
    informational: bool = False


@dataclass
class VerificationReport:
    suite: str
    records: List[CheckRecord] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records if not r.informational)

    def add(self, name, inputs, expected, actual, informational=False, passed=None):
        ok = (expected == actual) if passed is None else passed
        self.records.append(CheckRecord(name, inputs, render(expected), render(actual), bool(ok), informational))

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "elapsed_seconds": round(self.elapsed_seconds, 3),
            "records": [asdict(r) for r in self.records],
        }


def suite_dims(rep: VerificationReport, max_n: int, brute_max: int) -> None:
    formula = genfun.dims_from_series(charlib.f_lie2_char(max_n), max_n)
    inverted = genfun.dims_from_series(lie2_series("invert", max_n), max_n)
    nb = min(max_n, brute_max)
    brute = [freealg.build_quotient(n).dimension for n in range(1, nb + 1)]
    p2 = genfun.dims_from_series(charlib.f_p2_char(max_n), max_n)
    p2_inv = genfun.dims_from_series(operad_series("p2", "invert", max_n), max_n)
    com2 = genfun.dims_from_series(charlib.f_com2_char(max_n), max_n)
    for n in range(1, max_n + 1):
        rep.add("lie2 formula", {"n": n}, n ** (n - 1), formula[n - 1])
        rep.add("lie2 inversion", {"n": n}, n ** (n - 1), inverted[n - 1])
        if n <= nb:
            rep.add("lie2 brute force", {"n": n}, n ** (n - 1), brute[n - 1])
        rep.add("p2 composition", {"n": n}, (n + 1) ** (n - 1), p2[n - 1])
        rep.add("p2 inversion and composition", {"n": n}, (n + 1) ** (n - 1), p2_inv[n - 1])
        rep.add("com2", {"n": n}, n, com2[n - 1])


def suite_characters(rep: VerificationReport, max_n: int, brute_max: int) -> None:
    F = charlib.f_lie2_char(max_n)
    G = genfun.invert_plethystic(charlib.f_com2_char(max_n))
    rep.add("inversion equals closed form", {"N": max_n}, F, G)
    nb = min(max_n, brute_max)
    if nb >= 1:
        brute = freealg.brute_series(nb)
        p2_brute = plethysm(charlib.f_com_char(nb), brute)
        P = charlib.f_p2_char(nb)
        for n in range(1, nb + 1):
            progress(f"brute-force characters, n = {n}")
            for rho in cycle_types(n):
                inputs = {"n": n, "cycle_type": list(rho)}
                rep.add("lie2 formula vs brute force", inputs, char_value(F, rho), char_value(brute, rho))
                rep.add("p2 formula vs composed brute force", inputs, char_value(P, rho), char_value(p2_brute, rho))
    P = charlib.f_p2_char(max_n)
    for n in range(1, max_n + 1):
        rep.add("lie2 identity q-character", {"n": n}, charlib.identity_qchar_product("lie2", n), char_value(F, (n,)))
        rep.add("p2 identity q-character", {"n": n}, charlib.identity_qchar_product("p2", n), char_value(P, (n,)))
        for rho in cycle_types(n):
            inputs = {"n": n, "cycle_type": list(rho)}
            for operad, S in (("lie2", F), ("p2", P)):
                val = LaurentPoly.lift(char_value(S, rho))
                rep.add(f"{operad} palindromic", inputs, val.bar(), val)
                ev = charlib.mt_evaluate(operad, rho)
                rep.add(f"{operad} product formula, calibrated", inputs, val, ev.calibrated)
                shown = ev.printed if ev.printed is not None else ev.printed_error
                rep.add(f"{operad} product formula, printed", inputs, val, shown, informational=True)


def suite_multiplicities(rep: VerificationReport, max_n: int, brute_max: int) -> None:
    for operad in ("lie2", "p2"):
        S = charlib.series_for(operad, max_n)
        for n in range(2, max_n + 1):
            mr = charlib.multiplicity_report(operad, n, S)
            for c in mr.checks:
                if c.applicable:
                    rep.add(f"{operad} {c.name}", {"n": n}, c.expected, c.actual)


def suite_basis(rep: VerificationReport, max_n: int, brute_max: int) -> None:
    for n in range(1, COUNT_MAX_N + 1):
        rep.add("|B(A)|", {"n": n}, n ** (n - 1), basis_mod.count_B(n))
        rep.add("|P2 basis|", {"n": n}, (n + 1) ** (n - 1), basis_mod.count_p2_basis(n))
    for n in range(1, min(max_n, brute_max) + 1):
        progress(f"independence of B(A), n = {n}")
        ir = basis_mod.verify_independence(range(1, n + 1))
        rep.add("B(A) independent", {"n": n}, ir.dimension, ir.rank, passed=ir.passed)
        counts = basis_mod.bidegree_counts(range(1, n + 1))
        dims = freealg.build_quotient(n).bidegree_dims()
        rep.add("B(A) bidegree refinement", {"n": n}, sorted(dims.items()), sorted(counts.items()))


def describe_segment_failure(example) -> str:
    x, y, a, b, c = (poset_mod.format_element(e) for e in example)
    return f"segment [{x}, {y}]: {a} and {b} cover {c} but have no common upper cover in the segment"


def suite_poset(rep: VerificationReport, max_n: int, brute_max: int) -> None:
    for n in range(2, min(max_n, 4) + 1):
        progress(f"partition poset, n = {n}")
        P = poset_mod.FinitePoset.partition_poset(n)
        cm = poset_mod.is_cohen_macaulay(P)
        rep.add("Cohen-Macaulay", {"n": n, "betti": cm.betti, "length": cm.length}, True, cm.cohen_macaulay)
        ok, bad = poset_mod.intervals_cohen_macaulay(P)
        rep.add("open intervals homologically concentrated", {"n": n}, True, ok)
        sm = poset_mod.segments_semimodular(P)
        shown = True if sm.holds else describe_segment_failure(sm.counterexample)
        rep.add("every segment upper semimodular", {"n": n}, True, shown, passed=sm.holds)
        whole = poset_mod.is_upper_semimodular(P)
        rep.add("whole poset upper semimodular", {"n": n}, True, whole.holds, informational=True)
    rep.add("condition (*)", {"max_arity": 5}, True, poset_mod.check_condition_star(5))


RESIDUE_A = (1, -1, 2, -2, 3)
RESIDUE_B = (1, 2, 3, Fraction(1, 2), -1)


def suite_residue(rep: VerificationReport, max_n: int, brute_max: int) -> None:
    for a in RESIDUE_A:
        for b in RESIDUE_B:
            for n in range(1, 6):
                inputs = {"a": render(Fraction(a)), "b": render(Fraction(b)), "n": n}
                rep.add("residue closed form", inputs, charlib.residue_series(a, b, n), charlib.residue_lemma(a, b, n))


SUITES: Dict[str, Callable] = {
    "dims": suite_dims,
    "characters": suite_characters,
    "multiplicities": suite_multiplicities,
    "basis": suite_basis,
    "poset": suite_poset,
    "residue": suite_residue,
}
SUITE_DEFAULT_N = {"dims": 7, "characters": 6, "multiplicities": 6, "basis": 5, "poset": 4, "residue": 5}


def run_suite(name: str, max_n: Optional[int] = None, brute_max: int = BRUTE_DEFAULT_N) -> VerificationReport:
    rep = VerificationReport(name)
    start = time.perf_counter()
    SUITES[name](rep, max_n or SUITE_DEFAULT_N[name], brute_max)
    rep.elapsed_seconds = time.perf_counter() - start
    return rep


def cmd_verify(args) -> int:
    if args.max_n is not None and args.max_n < 1:
        raise UsageError("--max-n must be positive")
    if args.brute_max > BRUTE_MAX_N:
        raise UsageError(f"--brute-max is capped at {BRUTE_MAX_N}")
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        progress(f"suite {name}")
        reports.append(run_suite(name, args.max_n, args.brute_max))
    payload = {"passed": all(r.passed for r in reports), "suites": [r.to_json() for r in reports]}
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for r in reports:
            failed = [c for c in r.records if not c.passed and not c.informational]
            info = [c for c in r.records if not c.passed and c.informational]
            status = "PASS" if r.passed else "FAIL"
            print(f"{r.suite}: {status} ({len(r.records) - len(failed)}/{len(r.records)} checks, {r.elapsed_seconds:.1f}s)")
            for c in failed:
                print(f"  failed: {c.name} {json.dumps(c.inputs)} expected {c.expected} got {c.actual}")
            if info:
                print(f"  {len(info)} informational mismatches (not counted)")
    return EXIT_OK if payload["passed"] else EXIT_FAIL


# basis -----------------------------------------------------------------------------

def cmd_basis(args) -> int:
    n = args.n
    if not 1 <= n <= COUNT_MAX_N:
        raise UsageError(f"--n must be in 1..{COUNT_MAX_N}")
    A = list(range(1, n + 1))
    status = EXIT_OK
    if args.p2:
        print(basis_mod.count_p2_basis(n))
        if args.list:
            for e in basis_mod.enumerate_p2_basis(A):
                print(basis_mod.format_p2(e))
    else:
        print(basis_mod.count_B(n))
        if args.list:
            for t in basis_mod.enumerate_B(A):
                print(freealg.format_tree(t))
    if args.verify:
        if n > BRUTE_MAX_N:
            raise UsageError(f"independence is checked only for n <= {BRUTE_MAX_N}")
        ir = basis_mod.verify_independence(A)
        print(f"rank {ir.rank} of {ir.size}, dimension {ir.dimension}: {'independent' if ir.passed else 'FAILED'}")
        status = EXIT_OK if ir.passed else EXIT_FAIL
    return status


# poset -----------------------------------------------------------------------------

def cmd_poset(args) -> int:
    n = args.n
    if not 1 <= n <= poset_mod.MAX_POSET_N:
        raise UsageError(f"--n must be in 1..{poset_mod.MAX_POSET_N}")
    P = poset_mod.FinitePoset.partition_poset(n)
    if args.format == "edges":
        for line in poset_mod.cover_edges(P):
            print(line)
        return EXIT_OK
    check = args.check
    result: dict = {"n": n, "elements": len(P), "check": check}
    ok = True
    if check == "homology":
        result["betti"] = poset_mod.order_complex_homology(P, args.budget)
    elif check == "cm":
        v = poset_mod.is_cohen_macaulay(P, args.budget)
        result.update(v.to_json())
        ok = v.cohen_macaulay
    elif check == "semimodular":
        seg = poset_mod.segments_semimodular(P)
        whole = poset_mod.is_upper_semimodular(P)
        result["segments_semimodular"] = seg.holds
        if not seg.holds:
            result["segment_counterexample"] = describe_segment_failure(seg.counterexample)
        result["whole_poset_semimodular"] = whole.holds
        ok = seg.holds
    elif check == "intervals":
        good, bad = poset_mod.intervals_cohen_macaulay(P, args.budget)
        result["intervals_concentrated"] = good
        if bad:
            result["counterexample"] = [poset_mod.format_element(bad[0]), poset_mod.format_element(bad[1]), bad[2]]
        ok = good
    elif check == "star":
        ok = poset_mod.check_condition_star(n)
        result["injective"] = ok
    if args.format == "json":
        print(json.dumps(result))
    else:
        for k, v in result.items():
            print(f"{k}: {v}")
    return EXIT_OK if ok else EXIT_FAIL


# entry point ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lie2ops", description=__doc__.split("\n\n")[0].replace("\n", " "))
    parser.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                        help="worker cap (computations currently run in one process)")
    parser.add_argument("--cache-dir", help=f"cache directory for quotient models (also ${freealg.CACHE_ENV})")
    parser.add_argument("-q", "--quiet", action="store_true", help="no progress messages")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", help="dimension table")
    p.add_argument("--operad", choices=["lie2", "p2", "com2"], default="lie2")
    p.add_argument("--max-n", type=int)
    p.add_argument("--route", choices=["formula", "invert", "brute"], default="formula")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("character", help="character values on conjugacy classes")
    p.add_argument("--operad", choices=["lie2", "p2"], default="lie2")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cycle-type", help="multiplicities n_1,n_2,... of cycle lengths 1,2,...")
    p.add_argument("--route", choices=["formula", "mt", "brute"], default="formula")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_character)

    p = sub.add_parser("verify", help="cross-verification suites")
    p.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    p.add_argument("--max-n", type=int)
    p.add_argument("--brute-max", type=int, default=BRUTE_DEFAULT_N, help="largest arity for brute-force checks")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--report", help="also write the JSON report to this path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("basis", help="the monomial basis B(A)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--list", action="store_true")
    p.add_argument("--p2", action="store_true")
    p.add_argument("--verify", action="store_true", help="check linear independence")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("poset", help="partition posets")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--check", choices=["homology", "semimodular", "cm", "intervals", "star"], default="cm")
    p.add_argument("--format", choices=["text", "json", "edges"], default="text")
    p.add_argument("--budget", type=int, default=poset_mod.DEFAULT_CHAIN_BUDGET, help="maximum number of chains")
    p.set_defaults(func=cmd_poset)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    global _quiet
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    _quiet = args.quiet
    if args.cache_dir:
        os.environ[freealg.CACHE_ENV] = args.cache_dir
    if args.jobs < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except poset_mod.BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
