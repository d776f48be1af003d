"""Command-line driver.

    artinhom classify -i A3.cox
    artinhom homology -i A3.cox --method all
    artinhom validate -i A2.cox --matching mu1 --max-len 5
    artinhom compare  -i A3.cox --order "c b a"

Exit codes: 0 success, 1 a validation or agreement check failed,
2 bad input, 3 an inconclusive answer on a required path.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from .bar import BarComplex, degree, total_length
from .cmw import CMW, ClosureError, ClosureStatus, GreatestDivisorError, build_E, parse_E_file
from .complex import BasedComplex, BoundaryError, HomologyResult, homology
from .coxeter import (
    ClassSizeExceeded,
    InfiniteTypeError,
    ParseError,
    classify_subset,
    enumerate_sf,
    parse_system,
)
from .monoid import ArtinMonoid, LcmInconclusive, NotDivisible
from .morse import ESSENTIAL, Kind, MatchingError, validate_matching
from .squier import SquierRoutes, compare_squier_vs_mu2

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3
METHODS = ("bar", "mu1", "squier", "mu2", "cmw")


class CliError(Exception):
    def __init__(self, code: str, message: str, exit_code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code
        self.exit_code = exit_code


# --- helpers -------------------------------------------------------------------


def _load(args):
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError("io-error", str(exc)) from None
    system = parse_system(text)
    M = ArtinMonoid(system)
    if getattr(args, "cache", None):
        M.load_cache(args.cache)
    return system, M


def _order(system, text):
    if not text:
        return None
    names = text.replace(",", " ").split()
    order = [system.index(n) for n in names]
    if sorted(order) != list(range(system.rank)):
        raise CliError("bad-order", "--order must list every generator exactly once")
    return order


def _degrees(c: BasedComplex | None, H: HomologyResult):
    ranks = c.ranks() if c is not None else []
    top = max(len(ranks), len(H.trimmed())) - 1
    return [
        {"dim": n, "rank": ranks[n] if n < len(ranks) else 0,
         "betti": H[n].betti, "torsion": list(H[n].torsion)}
        for n in range(top + 1)
    ]


def _emit(args, report: dict, human: list[str]):
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print("\n".join(human))


def _format_table(degrees):
    lines = ["dim  rank  homology"]
    for row in degrees:
        parts = []
        if row["betti"]:
            parts.append("Z" if row["betti"] == 1 else f"Z^{row['betti']}")
        parts += [f"Z/{t}" for t in row["torsion"]]
        lines.append(f"{row['dim']:>3}  {row['rank']:>4}  {' + '.join(parts) or '0'}")
    return lines


def _system_echo(system):
    return system.to_text()


# --- commands --------------------------------------------------------------------


def cmd_classify(args):
    system, M = _load(args)
    fmt = system.format_subset
    rows = []
    if args.subset is not None:
        subsets = [system.parse_subset(args.subset)]
    else:
        subsets = [frozenset(range(system.rank))]
    for J in subsets:
        cl = classify_subset(system, J)
        rows.append({"subset": fmt(J), "finite": cl.finite, "type": cl.label(system),
                     "components": [[fmt(c), lab] for c, lab in cl.components]})
    sf = enumerate_sf(system)
    report = {"system": _system_echo(system), "command": "classify",
              "classification": rows, "sf": [fmt(J) for J in sf]}
    human = []
    for r in rows:
        human.append(f"{r['subset']}: {'finite, ' + r['type'] if r['finite'] else 'infinite'}")
    human.append(f"S^f ({len(sf)} subsets): " + " ".join(fmt(J) for J in sf))
    _emit(args, report, human)
    return EXIT_OK


def cmd_nf(args):
    system, M = _load(args)
    x = M.parse(args.word)
    if not x:
        raise CliError("identity", "the identity has an empty normal form")
    nf = M.bs_normal_form(x)
    text = "·".join("Δ" + system.format_subset(I) for I in nf)
    report = {"system": _system_echo(system), "command": "nf", "word": args.word,
              "canonical": M.format(x), "normal_form": [system.names(I) for I in nf]}
    _emit(args, report, [f"{M.format(x)} = {text}"])
    return EXIT_OK


def cmd_delta(args):
    system, M = _load(args)
    J = system.parse_subset(args.subset)
    if not J:
        raise CliError("empty-subset", "Δ needs a nonempty subset")
    d = M.delta(J)
    report = {"system": _system_echo(system), "command": "delta",
              "subset": system.format_subset(J), "delta": M.format(d), "length": len(d)}
    _emit(args, report, [M.format(d)])
    return EXIT_OK


def cmd_lcm(args):
    system, M = _load(args)
    x, y = M.parse(args.x), M.parse(args.y)
    try:
        c = M.left_lcm(x, y, args.bound)
    except LcmInconclusive as exc:
        raise CliError("inconclusive", str(exc), EXIT_INCONCLUSIVE) from None
    report = {"system": _system_echo(system), "command": "lcm", "x": M.format(x), "y": M.format(y)}
    if c is None:
        report["lcm"] = None
        human = ["no common multiple"]
    else:
        report.update(lcm=M.format(c), x_over_y=M.format(M.right_quotient(c, y)),
                      y_over_x=M.format(M.right_quotient(c, x)))
        human = [f"llcm = {report['lcm']}", f"x/y = {report['x_over_y']}", f"y/x = {report['y_over_x']}"]
    _emit(args, report, human)
    return EXIT_OK


def _load_E(args, M):
    if args.e_set:
        with open(args.e_set, encoding="utf-8") as fh:
            elems = parse_E_file(M, fh.read())
        return build_E(M, "explicit", explicit=elems)
    if M.is_finite_type(range(M.system.rank)):
        return build_E(M, "square-free")
    if args.e_max_len:
        return build_E(M, "square-free-truncated", max_len=args.e_max_len)
    raise CliError("infinite-type", "cmw on infinite type needs --e-set or --e-max-len")


def _default_bar_length(M: ArtinMonoid) -> int:
    return max(len(M.delta(J)) for J in M.sf)


def _route(method, args, M, order):
    """(complex, homology, notes) for one method."""
    notes = []
    if method == "bar":
        L = args.max_len if args.max_len is not None else _default_bar_length(M)
        c = BarComplex(M).truncation(L, args.max_dim)
        notes.append(f"bar complex truncated at total length {L}")
    elif method == "mu1":
        c = SquierRoutes(M, order).mu1_complex()
    elif method == "mu2":
        c = SquierRoutes(M, order).mu2_morse_complex()
    elif method == "squier":
        c = SquierRoutes(M, order).squier_complex()
    elif method == "cmw":
        E = _load_E(args, M)
        if E.status is ClosureStatus.FAILED:
            raise CliError("closure-failed", f"E is not closed: witness {_witness(M, E.witness)}", EXIT_FAIL)
        if E.status is ClosureStatus.VERIFIED_WITHIN_BOUND:
            notes.append("caveat: closure of E verified only within the search bound")
        c = CMW(M, E).complex(args.max_dim)
    else:
        raise CliError("bad-method", method)
    return c, homology(c), notes


def _witness(M, w):
    if w is None:
        return None
    return [M.format(e) if isinstance(e, tuple) else e for e in w]


def cmd_homology(args):
    system, M = _load(args)
    order = _order(system, args.order)
    t0 = time.perf_counter()
    if args.method == "all":
        methods = ["mu1", "mu2", "squier"]
        if args.e_set or args.e_max_len or M.is_finite_type(range(system.rank)):
            methods.append("cmw")
        if args.max_len is not None:
            methods.append("bar")
    else:
        methods = [args.method]
    results = {}
    human = []
    checks = []
    exit_code = EXIT_OK
    for method in methods:
        c, H, notes = _route(method, args, M, order)
        results[method] = {"ranks": c.ranks(), "degrees": _degrees(c, H), "notes": notes}
        human.append(f"== {method}: ranks {c.ranks()}")
        human += _format_table(_degrees(c, H)) + notes
        results[method]["_H"] = H
        if any(n.startswith("caveat") for n in notes):
            exit_code = max(exit_code, EXIT_INCONCLUSIVE)
    if len(methods) > 1:
        first = results[methods[0]]["_H"]
        agree = all(results[m]["_H"].agrees(first) for m in methods)
        checks.append({"name": "routes-agree", "status": "pass" if agree else "fail"})
        human.append("routes agree" if agree else "ROUTES DISAGREE")
        if not agree:
            exit_code = EXIT_FAIL
    for r in results.values():
        r.pop("_H")
    report = {
        "system": _system_echo(system), "command": "homology", "method": args.method,
        "parameters": {"max_len": args.max_len, "max_dim": args.max_dim,
                       "order": system.names(order) if order else None, "e_set": args.e_set},
        "routes": results, "checks": checks,
        "timing": round(time.perf_counter() - t0, 6),
    }
    report["degrees"] = results[methods[0]]["degrees"]
    _emit(args, report, human)
    if args.cache:
        M.save_cache(args.cache)
    return exit_code


def _corrupted(classify, cells):
    """Negative control: turn the first collapsible cell essential, breaking the involution."""
    victim = next((c for c in cells if classify(c).kind is Kind.COLLAPSIBLE), None)

    def matcher(cell):
        return ESSENTIAL if cell == victim else classify(cell)
    return matcher


def cmd_validate(args):
    system, M = _load(args)
    order = _order(system, args.order)
    t0 = time.perf_counter()
    if args.matching == "mu1":
        B = BarComplex(M)
        L = args.max_len if args.max_len is not None else _default_bar_length(M) + 2
        cells = [c for cs in B.enumerate_cells(L, args.max_dim).values() for c in cs]
        classify = B.mu1_classify
        kw = dict(degree=degree, boundary=B.boundary, height=B.mu1_height, weight=total_length)
        fmt = B.format
        params = {"max_len": L, "max_dim": args.max_dim}
    elif args.matching == "mu2":
        R = SquierRoutes(M, order)
        cells = [c for cs in R.chain_cells().values() for c in cs]
        classify = R.mu2_classify
        kw = dict(degree=len, boundary=R.d_theta1, successor_order=R.mu2_successor_increases)
        fmt = R.format_chain
        params = {"order": system.names(R.order)}
    elif args.matching == "cmw":
        E = _load_E(args, M)
        C = CMW(M, E)
        L = args.max_len if args.max_len is not None else 5
        D = args.max_dim if args.max_dim is not None else 4
        cells = [c for cs in C.bar.enumerate_cells(L, D).values() for c in cs]
        classify = C.classify
        kw = dict(degree=degree, boundary=C.bar.boundary, height=C.height, weight=total_length)
        fmt = C.bar.format
        params = {"max_len": L, "max_dim": D, "E_size": len(E), "E_status": E.status.value}
    else:
        raise CliError("bad-matching", args.matching)
    if args.corrupt:
        classify = _corrupted(classify, cells)
    rep = validate_matching(cells, classify=classify, fmt=fmt, **kw)
    failed = rep.failed_checks()
    checks = []
    for name in rep.checks_run:
        entry = {"name": name, "status": "fail" if name in failed else "pass"}
        wit = next((f for f in rep.findings if f.check == name), None)
        if wit is not None:
            entry["witness"] = f"{fmt(wit.cell)}: {wit.detail}"
        checks.append(entry)
    report = {"system": _system_echo(system), "command": "validate", "matching": args.matching,
              "parameters": params, "cells": rep.cells_checked,
              "counts": {k.value: v for k, v in rep.counts.items()}, "checks": checks,
              "timing": round(time.perf_counter() - t0, 6)}
    human = [f"{args.matching}: {rep.cells_checked} cells "
             + ", ".join(f"{v} {k.value}" for k, v in rep.counts.items())]
    human += [f"  {c['name']}: {c['status']}" + (f"  ({c['witness']})" if "witness" in c else "")
              for c in checks]
    human.append("PASS" if rep.ok else "FAIL")
    _emit(args, report, human)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_compare(args):
    system, M = _load(args)
    order = _order(system, args.order)
    rep = compare_squier_vs_mu2(M, order)
    fmt_sum = lambda s: " ".join(f"{v:+d}{system.format_subset(J)}" for J, v in
                                 sorted(s.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))) or "0"
    rows = []
    human = []
    for r in rep.rows:
        verdict = "equal" if r.equal else ("equal up to sign" if r.equal_up_to_sign else "differs")
        rows.append({"subset": system.format_subset(r.subset), "verdict": verdict,
                     "mu2": fmt_sum(r.mu2), "squier": fmt_sum(r.direct)})
        human.append(f"{system.format_subset(r.subset)}: {verdict}   mu2: {fmt_sum(r.mu2)}   squier: {fmt_sum(r.direct)}")
    ok = rep.homology_agrees
    sign = rep.global_sign
    if sign == 1:
        human.append("all differentials equal")
    elif sign == -1:
        human.append("all differentials equal after the basis change [J] -> (-1)^|J| [J]")
    human.append(f"homology mu2: {rep.mu2_homology}; squier: {rep.squier_homology}")
    human.append("homology agrees" if ok else "HOMOLOGY DIFFERS")
    report = {"system": _system_echo(system), "command": "compare",
              "parameters": {"order": system.names(order) if order else None},
              "differentials": rows,
              "global_sign": sign,
              "degrees": _degrees(None, rep.mu2_homology),
              "checks": [{"name": "homology-agrees", "status": "pass" if ok else "fail"}]}
    _emit(args, report, human)
    return EXIT_OK if ok else EXIT_FAIL


# --- entry point --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="artinhom", description="Homology of Artin monoids")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("-i", "--input", required=True, help="Coxeter system file")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--cache", help="directory for canonical-form cache files")

    sp = sub.add_parser("classify", help="classify a subset and list S^f")
    common(sp)
    sp.add_argument("-J", "--subset")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("nf", help="Brieskorn-Saito normal form")
    common(sp)
    sp.add_argument("-w", "--word", required=True)
    sp.set_defaults(func=cmd_nf)

    sp = sub.add_parser("delta", help="Garside element of a finite-type subset")
    common(sp)
    sp.add_argument("-J", "--subset", required=True)
    sp.set_defaults(func=cmd_delta)

    sp = sub.add_parser("lcm", help="left lcm and left complements")
    common(sp)
    sp.add_argument("-x", required=True)
    sp.add_argument("-y", required=True)
    sp.add_argument("--bound", type=int)
    sp.set_defaults(func=cmd_lcm)

    def route_opts(sp):
        sp.add_argument("--max-len", type=int)
        sp.add_argument("--max-dim", type=int)
        sp.add_argument("--order", help="generator order for mu2/squier, smallest first")
        sp.add_argument("--e-set", help="file with one element of E per line")
        sp.add_argument("--e-max-len", type=int, help="use square-free elements up to this length")

    sp = sub.add_parser("homology", help="integral homology by one or all routes")
    common(sp)
    sp.add_argument("--method", choices=METHODS + ("all",), default="all")
    route_opts(sp)
    sp.set_defaults(func=cmd_homology)

    sp = sub.add_parser("validate", help="run the matching validation battery")
    common(sp)
    sp.add_argument("--matching", choices=("mu1", "mu2", "cmw"), required=True)
    route_opts(sp)
    sp.add_argument("--corrupt", action="store_true", help="negative control: break the matching")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("compare", help="compare mu2-route and Squier differentials")
    common(sp)
    sp.add_argument("--order")
    sp.set_defaults(func=cmd_compare)
    return p


ERRORS = (
    (ParseError, "parse-error", EXIT_INPUT),
    (KeyError, "unknown-generator", EXIT_INPUT),
    (InfiniteTypeError, "infinite-type", EXIT_INPUT),
    (NotDivisible, "not-divisible", EXIT_INPUT),
    (LcmInconclusive, "inconclusive", EXIT_INCONCLUSIVE),
    (ClassSizeExceeded, "cap-exceeded", EXIT_INCONCLUSIVE),
    (ClosureError, "closure-failed", EXIT_FAIL),
    (GreatestDivisorError, "closure-failed", EXIT_FAIL),
    (MatchingError, "matching-error", EXIT_FAIL),
    (BoundaryError, "boundary-error", EXIT_FAIL),
)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        code, message, status = exc.code, str(exc), exc.exit_code
    except tuple(e for e, _, _ in ERRORS) as exc:
        code, status = next((c, s) for e, c, s in ERRORS if isinstance(exc, e))
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
    if getattr(args, "json", False):
        print(json.dumps({"error": code, "message": message}, sort_keys=True))
    else:
        print(f"error [{code}]: {message}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
