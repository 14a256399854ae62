"""Command-line front end.

Exit codes: 0 success or census agreement, 1 census disagreement (or a
fibered-census failure), 2 usage error, 3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .arith import LaurentPolynomial
from .dinvariants import CACHE_ENV, DCache, LensSpace, d_table
from .errors import InvariantViolation

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _frac(x: Fraction) -> str:
    return str(x)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _cache(args) -> DCache | None:
    if args.cache:
        return DCache(args.cache)
    return DCache.from_env()


def cmd_d(args) -> int:
    space = LensSpace(args.p, args.q)
    cache = _cache(args)
    table = d_table(space, cache)
    if cache is not None:
        cache.save()
    if args.i is not None:
        if not 0 <= args.i < args.p:
            raise UsageError(f"label {args.i} outside [0, {args.p})")
        _emit(args, {"p": args.p, "q": args.q, "i": args.i, "d": [_frac(table[args.i])]},
              _frac(table[args.i]))
    else:
        vals = [_frac(v) for v in table.values]
        _emit(args, {"p": args.p, "q": args.q, "d": vals},
              "\n".join(f"{i}\t{v}" for i, v in enumerate(vals)))
    return EXIT_OK


def cmd_obstruct(args) -> int:
    from .obstruction import verdict

    v = verdict(LensSpace(args.p, args.q), args.mode, exhaustive=args.exhaustive)
    lines = [f"L({args.p},{args.q}) {args.mode}: {'PASS' if v.passed else 'FAIL'}"]
    lines += [f"  u={s.u} c={s.c}  {f}" for s, f in v.witnesses]
    _emit(args, v.to_dict(), "\n".join(lines))
    return EXIT_OK


def cmd_berge(args) -> int:
    from .berge import enumerate_realizable

    rs = enumerate_realizable(args.pmax, family=args.family, clause6=args.clause6,
                              reading=args.reading)
    header = ["family", "A", "B", "a", "b", "p", "q"]
    rows = [w.as_row() for w in rs.witnesses()]
    if args.json:
        print(json.dumps({"p_max": args.pmax, "family": args.family,
                          "witnesses": [dict(zip(header, r)) for r in rows]}, sort_keys=True))
    elif args.csv:
        print(",".join(header))
        for r in rows:
            print(",".join(map(str, r)))
    else:
        for r in rows:
            print(f"L({r[5]},{r[6]})  family {r[0]}  (A,B,a,b)=({r[1]},{r[2]},{r[3]},{r[4]})")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .census import report_emit, verify

    report = verify(args.pmax, mode=args.mode, strictness=args.strictness,
                    filters=args.filter or (), threads=args.threads, cache=_cache(args),
                    clause6=args.clause6, reading=args.reading)
    fmt = "json" if args.json else args.format
    data = report_emit(report, fmt)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
        sys.stdout.write(report_emit(report, "text").decode())
    else:
        sys.stdout.write(data.decode())
    return EXIT_OK if report.agreement else EXIT_DISAGREE


def cmd_hfk(args) -> int:
    from .hfk import AlexanderFormError, hfk_from_alex, tau_and_genus, validate_lspace_alex

    try:
        f = LaurentPolynomial.parse(args.alex)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    try:
        a = validate_lspace_alex(f)
    except AlexanderFormError as exc:
        _emit(args, {"alexander": f.format(), "valid": False, "reason": exc.reason},
              f"rejected: {exc.reason}")
        return EXIT_OK
    h = hfk_from_alex(a)
    tau, g4 = tau_and_genus(a)
    payload = {
        "alexander": f.format(), "valid": True, "k": a.k, "exponents": list(a.exponents),
        "generators": [{"alexander": x, "maslov": m, "rank": 1} for x, m in h.generators],
        "tau": tau, "fourball_genus_lower_bound": g4,
    }
    text = ["alexander\tmaslov\trank"] + [f"{x}\t{m}\t1" for x, m in h.generators]
    text.append(f"tau = {tau}, four-ball genus >= {g4}")
    _emit(args, payload, "\n".join(text))
    return EXIT_OK


def cmd_fibered(args) -> int:
    from .fibered import brown_fibered_check, relator

    w = relator(args.p, args.q, args.k, args.offset)
    cert = brown_fibered_check(w)
    payload = {
        "p": args.p, "q": args.q, "k": args.k, "offset": args.offset,
        "fibered": cert.fibered, "max": cert.max_value, "min": cert.min_value,
        "max_at": list(cert.max_indices), "min_at": list(cert.min_indices),
    }
    text = (f"({args.p},{args.q},{args.k}): {'fibered' if cert.fibered else 'NOT fibered'}"
            f"  max {cert.max_value} at {list(cert.max_indices)}"
            f"  min {cert.min_value} at {list(cert.min_indices)}")
    if args.word:
        payload["word"] = str(w)
        text += f"\nrelator: {w}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_fibered_census(args) -> int:
    from .fibered import fiberedness_census

    rep = fiberedness_census(args.pmax, args.offset, args.rotation_pmax)
    text = (f"p <= {args.pmax}: {rep.checked} relators checked, {len(rep.failures)} failures;"
            f" {rep.rotations_checked} rotations (p <= {rep.rotation_pmax}),"
            f" {len(rep.rotation_disagreements)} disagreements")
    _emit(args, rep.to_dict(), text)
    return EXIT_OK if rep.ok else EXIT_DISAGREE


def cmd_plumbing(args) -> int:
    from .plumbing import (PlumbingTree, lspace_certify, parse_seifert,
                           seifert_to_plumbing)

    seifert = None
    if args.graph:
        G = PlumbingTree.load(args.graph)
    else:
        seifert = parse_seifert(args.seifert)
        G = seifert_to_plumbing(*seifert)
    v = lspace_certify(G, seifert, check_confluence=args.check_confluence)
    payload = v.to_dict() | {"graph": G.to_json()}
    text = (f"{'L-space' if v.lspace else 'not an L-space'}  |det| = {abs(v.det)}"
            f"  full paths = {v.count if v.count is not None else '-'}  ({v.method})")
    _emit(args, payload, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker processes for the census")
    common.add_argument("--cache", default=argparse.SUPPRESS,
                        help=f"d-table cache file (default: ${CACHE_ENV})")

    ap = argparse.ArgumentParser(prog="lensfloer", parents=[common],
                                 description="Lens space surgeries, d-invariants and related checks.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("d", parents=[common], help="correction terms of L(p,q)")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    s.add_argument("i", type=int, nargs="?")
    s.set_defaults(func=cmd_d)

    s = sub.add_parser("obstruct", parents=[common], help="run the d-invariant surgery test")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    s.add_argument("--mode", choices=["strict", "relaxed"], default="strict")
    s.add_argument("--exhaustive", action="store_true",
                   help="evaluate every correspondence exactly, bypassing the kernel")
    s.set_defaults(func=cmd_obstruct)

    berge_opts = argparse.ArgumentParser(add_help=False)
    berge_opts.add_argument("--clause6", choices=["corrected", "literal"], default="corrected")
    berge_opts.add_argument("--reading", choices=["class", "literal"], default="class")

    s = sub.add_parser("berge", parents=[common, berge_opts], help="enumerate Berge's list")
    s.add_argument("--pmax", type=int, required=True)
    s.add_argument("--family", type=int, choices=range(1, 13), metavar="1..12")
    s.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_berge)

    s = sub.add_parser("verify", parents=[common, berge_opts], help="census cross-check")
    s.add_argument("--pmax", type=int, required=True)
    s.add_argument("--mode", choices=["unoriented", "oriented"], default="unoriented")
    s.add_argument("--strictness", choices=["strict", "relaxed"], default="strict")
    s.add_argument("--filter", action="append", choices=["canonical"])
    s.add_argument("--format", choices=["text", "json", "csv"], default="text")
    s.add_argument("--output", help="write the report here; a text summary goes to stdout")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("hfk", parents=[common], help="knot Floer homology from an Alexander polynomial")
    s.add_argument("--alex", required=True, help='e.g. "T^3 - T^2 + 1 - T^-2 + T^-3"')
    s.set_defaults(func=cmd_hfk)

    s = sub.add_parser("fibered", parents=[common], help="Brown's test for one Berge knot")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    s.add_argument("k", type=int)
    s.add_argument("--offset", type=int, default=0)
    s.add_argument("--word", action="store_true", help="print the relator")
    s.set_defaults(func=cmd_fibered)

    s = sub.add_parser("fibered-census", parents=[common], help="Brown's test for all p <= N")
    s.add_argument("--pmax", type=int, required=True)
    s.add_argument("--offset", type=int, default=0)
    s.add_argument("--rotation-pmax", type=int, default=13)
    s.set_defaults(func=cmd_fibered_census)

    s = sub.add_parser("plumbing", parents=[common], help="certify an L-space from a plumbing")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--graph", help='JSON file {"weights": [...], "edges": [[i, j], ...]}')
    g.add_argument("--seifert", help='"b; beta1/alpha1, beta2/alpha2, ..."')
    s.add_argument("--check-confluence", action="store_true")
    s.set_defaults(func=cmd_plumbing)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    for name, default in (("json", False), ("threads", 1), ("cache", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    if args.threads < 1:
        ap.error("--threads must be at least 1")
    try:
        return args.func(args)
    except (InvariantViolation, ArithmeticError, AssertionError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
