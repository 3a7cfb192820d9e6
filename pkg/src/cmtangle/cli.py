"""Command-line interface.  Every command prints one JSON document.

Exit codes: 0 success or found, 1 clean not-found, 2 input error,
3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import __version__
from .changemaker import (ChangemakerError, build_cm_lattice, enumerate_sigma,
                          fractional_basis, is_changemaker, subset_sum_oracle)
from .contfrac import (ContinuedFractionError, eval_neg_cf, eval_pos_cf, format_rational,
                       neg_cf_expand, parse_coefficients, parse_rational, pos_cf_expand,
                       pos_to_neg)
from .graphlat import GraphError, goeritz_matrix
from .ingest import PDError, load_graph, load_pd, mirror_pd, pd_to_white_graph, read_table
from .pipeline import SCHEMA, run_pipeline, scan
from .surgery import (SurgeryError, SurgeryVerdict, VSequence, montesinos_slope,
                      small_slope_verdict, window, z_count, z_count_enumerated)

EXIT_OK, EXIT_NOT_FOUND, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3

INPUT_ERRORS = (ContinuedFractionError, ChangemakerError, GraphError, PDError, SurgeryError,
                ValueError, OSError, json.JSONDecodeError)


class UsageError(Exception):
    pass


def _emit(obj: dict, args) -> None:
    if args.pretty:
        print(json.dumps(obj, indent=2))
    else:
        print(json.dumps(obj, separators=(",", ":")))


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ContinuedFractionError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _coeffs(text: str) -> list[int]:
    try:
        return parse_coefficients(text)
    except ContinuedFractionError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _expansions(x: Fraction) -> dict:
    out = {"value": format_rational(x)}
    try:
        out["neg"] = neg_cf_expand(x)
    except ContinuedFractionError as exc:
        out["neg"] = None
        out["neg_error"] = str(exc)
    try:
        out["pos"] = pos_cf_expand(x)
    except ContinuedFractionError as exc:
        out["pos"] = None
        out["pos_error"] = str(exc)
    return out


def _white_graph(args):
    if bool(args.graph) == bool(args.pd):
        raise UsageError("give exactly one of --graph or --pd")
    if args.graph:
        return load_graph(args.graph)
    pd = load_pd(args.pd)
    if args.mirror_pd:
        pd = mirror_pd(pd)
    return pd_to_white_graph(pd)


# --------------------------------------------------------------------------
# commands


def cmd_recognize(args) -> int:
    g = _white_graph(args)
    res = run_pipeline(g, args.slope, verify=args.verify, all_mode=args.all,
                       signature=args.signature)
    if args.mirror:
        res["mirror"] = True
        for cert in res.get("certificates", [res]):
            if "surgery" in cert:
                s = -parse_rational(cert["surgery"]["slope"])
                cert["surgery"]["slope"] = format_rational(s)
    _emit(res, args)
    if res.get("invariant_violation"):
        return EXIT_INVARIANT
    if res.get("stage") == "input":
        return EXIT_INPUT
    return EXIT_OK if res["found"] else EXIT_NOT_FOUND


def cmd_scan(args) -> int:
    rows = read_table(args.table)
    report = scan(rows, args.pmax, args.qmax, jobs=args.jobs, mirrors=args.mirrors)
    _emit(report, args)
    return EXIT_OK


def cmd_cf(args) -> int:
    if args.cf_cmd == "expand":
        out = _expansions(args.value)
    elif args.cf_cmd == "eval":
        if (args.neg is None) == (args.pos is None):
            raise UsageError("give exactly one of --neg or --pos")
        x = eval_neg_cf(args.neg) if args.neg is not None else eval_pos_cf(args.pos)
        out = _expansions(x)
    else:
        x = eval_pos_cf(args.pos)
        out = {"value": format_rational(x), "pos": list(args.pos), "neg": pos_to_neg(args.pos)}
    _emit({"schema": SCHEMA, **out}, args)
    return EXIT_OK


def cmd_cm(args) -> int:
    if args.cm_cmd == "build":
        spec = build_cm_lattice(args.pq, args.sigma)
        basis = fractional_basis(spec)
        out = {"lattice": spec.to_json(), "rank": spec.rank, "dim": spec.dim,
               "fractional_basis": basis.to_json()}
    elif args.cm_cmd == "enum":
        tails = enumerate_sigma(args.n, args.length)
        out = {"n": args.n, "count": len(tails), "sigma": [list(s) for s in tails]}
    else:
        sigma = args.sigma
        if any(b < a for a, b in zip(sigma, sigma[1:])) or any(x < 0 for x in sigma):
            raise UsageError("sigma must be nondecreasing and nonnegative")
        out = {"sigma": list(sigma), "changemaker": is_changemaker(sigma),
               "subset_sums": subset_sum_oracle(sigma)}
    _emit({"schema": SCHEMA, **out}, args)
    return EXIT_OK


def cmd_zcount(args) -> int:
    z = z_count(args.gtilde, args.p, args.q)
    enum = z_count_enumerated(VSequence.canonical(args.gtilde), args.p, args.q)
    win = window(args.gtilde, args.p, args.q)
    _emit({"schema": SCHEMA, "p": args.p, "q": args.q, "gtilde": args.gtilde,
           "z_count": z, "enumerated": enum,
           "window": [win.start, win.stop - 1] if len(win) else None}, args)
    return EXIT_OK if z == enum else EXIT_INVARIANT


def cmd_slope(args) -> int:
    s = montesinos_slope(args.tangle, args.mu0)
    _emit({"schema": SCHEMA, "tangle": format_rational(args.tangle), "mu0": args.mu0,
           "slope": format_rational(s)}, args)
    return EXIT_OK


def cmd_obstruct(args) -> int:
    verdict = SurgeryVerdict(args.p, args.q, args.gtilde)
    out = {"schema": SCHEMA, **verdict.to_json()}
    pq = Fraction(args.p, args.q)
    if 0 < pq < 1:
        out["small_slope"] = small_slope_verdict(pq)
    _emit(out, args)
    return EXIT_OK


def cmd_ingest_pd(args) -> int:
    pd = load_pd(args.pd)
    if args.mirror_pd:
        pd = mirror_pd(pd)
    g = pd_to_white_graph(pd)
    gm = goeritz_matrix(g)
    _emit({"schema": SCHEMA, "crossings": len(pd), "graph": g.to_json(),
           "goeritz": gm.to_json(), "det": abs(gm.det())}, args)
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="compact JSON output (default)")
    fmt.add_argument("--pretty", action="store_true", help="indented JSON output")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="cmtangle",
        description="Recognize changemaker Goeritz lattices and extract surgery tangles.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recognize", parents=[common],
                       help="label a white graph by a p/q-changemaker lattice")
    p.add_argument("--graph", metavar="FILE", help="white-graph JSON")
    p.add_argument("--pd", metavar="FILE", help="PD code JSON of an alternating diagram")
    p.add_argument("--slope", metavar="P/Q", type=_rational, required=True)
    p.add_argument("--all", action="store_true", help="certify every labeling, not just the first")
    p.add_argument("--verify", action="store_true", help="recompute all invariants on the result")
    p.add_argument("--mirror", action="store_true", help="report the surgery slope for the mirror")
    p.add_argument("--mirror-pd", action="store_true", help="mirror the PD code before tracing")
    p.add_argument("--signature", type=int, help="attach signature metadata to the output")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("scan", parents=[common], help="batch recognition over a knot table")
    p.add_argument("--table", metavar="FILE.csv", required=True)
    p.add_argument("--pmax", type=int, default=200)
    p.add_argument("--qmax", type=int, default=10)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--mirrors", action="store_true",
                   help="also try the mirror image of every PD row")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("cf", help="continued fractions")
    cf = p.add_subparsers(dest="cf_cmd", required=True)
    q = cf.add_parser("expand", parents=[common])
    q.add_argument("value", type=_rational)
    q = cf.add_parser("eval", parents=[common])
    q.add_argument("--neg", type=_coeffs, metavar="A0,A1,...")
    q.add_argument("--pos", type=_coeffs, metavar="C0,C1,...")
    q = cf.add_parser("convert", parents=[common], help="plus-convention to minus-convention")
    q.add_argument("--pos", type=_coeffs, metavar="C0,C1,...", required=True)
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("cm", help="changemaker lattices and tails")
    cm = p.add_subparsers(dest="cm_cmd", required=True)
    q = cm.add_parser("build", parents=[common])
    q.add_argument("pq", type=_rational, metavar="P/Q")
    q.add_argument("--sigma", type=_coeffs, required=True, metavar="S1,S2,...")
    q = cm.add_parser("enum", parents=[common], help="tails with 1 + |sigma|^2 = N")
    q.add_argument("n", type=int, metavar="N")
    q.add_argument("--length", type=int)
    q = cm.add_parser("check-sigma", parents=[common])
    q.add_argument("sigma", type=_coeffs, metavar="S1,S2,...")
    p.set_defaults(func=cmd_cm)

    p = sub.add_parser("zcount", parents=[common], help="vanishing correction terms")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--gtilde", type=int, required=True)
    p.set_defaults(func=cmd_zcount)

    p = sub.add_parser("slope", parents=[common], help="surgery slope from a tangle slope")
    p.add_argument("--tangle", type=_rational, required=True, metavar="A/B")
    p.add_argument("--mu0", type=int, required=True)
    p.set_defaults(func=cmd_slope)

    p = sub.add_parser("obstruct", parents=[common], help="genus and correction-term checks")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--gtilde", type=int, required=True)
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("ingest-pd", parents=[common], help="white graph and Goeritz matrix of a PD code")
    p.add_argument("--pd", metavar="FILE", required=True)
    p.add_argument("--mirror-pd", action="store_true")
    p.set_defaults(func=cmd_ingest_pd)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, *INPUT_ERRORS) as exc:
        print(json.dumps({"schema": SCHEMA, "error": str(exc), "stage": "input"}))
        return EXIT_INPUT
    except (AssertionError, ArithmeticError, RuntimeError) as exc:
        print(json.dumps({"schema": SCHEMA, "error": str(exc), "stage": "internal"}))
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
