"""Command-line front end.

Every subcommand writes records to standard output, either as JSON lines
(default) or as CSV with a header row.  Each record carries
``schema_version``, ``command`` and a flat ``payload``.

Exit codes: 0 success, 1 computational error, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .census import FunctionId, evaluate, max_order_count, verify_formulas
from .constants import ConstantId, dirichlet_identity_check, euler_product, schwarz_probe
from .dynamics import census_by_orbit
from .errors import ModpowerError
from .factor import SIEVE_LIMIT_ENV
from .summatory import kernel_reciprocal_diagnostics, summatory_table

SCHEMA_VERSION = "1"
SERIES_IDS = ("a", "b", "c", "m", "u", "v", "w", "z")
SUM_IDS = [f.value for f in FunctionId] + ["n_minus_m"]


def _clean(v):
    """Reals to 15 significant digits, integers exact."""
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, Fraction):
        return str(v)
    return float(f"{float(v):.15g}")


def record(command: str, **payload) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command,
            "payload": {k: _clean(v) for k, v in payload.items()}}


def write_records(records: list[dict], fmt: str, out=None):
    out = sys.stdout if out is None else out
    if fmt == "json":
        for r in records:
            out.write(json.dumps(r) + "\n")
        return
    if not records:
        return
    keys = list(records[0]["payload"])
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["schema_version", "command", *keys])
    for r in records:
        w.writerow([r["schema_version"], r["command"],
                    *("" if r["payload"][k] is None else r["payload"][k] for k in keys)])


def _int_list(text: str) -> list[int]:
    try:
        return [int(float(t)) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def _int(text: str) -> int:
    # accepts 1e6 style input
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v != int(v):
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    return int(v)


def _cmd_eval(args):
    fid = FunctionId(args.fn)
    value = max_order_count(args.n) if fid is FunctionId.H else evaluate(fid, args.n)
    return [record("eval", fn=fid.value, n=args.n, value=value)]


def _cmd_census(args):
    c = census_by_orbit(args.n)
    return [record("census", n=args.n, sigma=s, tau=t, count=k) for (s, t), k in c.counts.items()]


def _cmd_sum(args):
    rows = summatory_table(args.fn, args.max, args.checkpoints, threads=args.threads)
    return [record("sum", fn=args.fn, N=r.checkpoint_N, exact_sum=r.exact_sum,
                   predicted=r.predicted, ratio=r.ratio) for r in rows]


def _cmd_const(args):
    est = euler_product(args.name, args.target_error, method=args.method, prime_bound=args.primes)
    return [record("const", name=est.id.value, value=est.value, tail_bound=est.tail_bound,
                   prime_bound=est.prime_bound, series_depth=est.series_depth, method=est.method)]


def _cmd_check(args):
    if args.series == "schwarz":
        pr = schwarz_probe(args.n or 10**5)
        return [record("check", series="schwarz", N=pr.N, y_star=pr.y_star, min_value=pr.min_value,
                       kernel_sum=pr.kernel_sum, schwarz_rhs=pr.schwarz_rhs,
                       schwarz_ratio=pr.schwarz_ratio, is_local_min=pr.is_local_min)]
    if args.series == "debruijn":
        N = args.n or 10**5
        rows = kernel_reciprocal_diagnostics(N, args.checkpoints)
        return [record("check", series="debruijn", N=r.N, kernel_sum=r.kernel_sum,
                       debruijn_ratio=r.debruijn_ratio) for r in rows]
    s = args.s if args.s is not None else (2.0 if args.series in "abcm" else 3.0)
    rep = dirichlet_identity_check(args.series, s, args.terms, args.primes or 10**5, threads=args.threads)
    return [record("check", series=rep.series_id, s=rep.s, N=rep.sum_truncation_N,
                   P=rep.product_prime_bound_P, lhs=rep.lhs, rhs=rep.rhs, discrepancy=rep.discrepancy,
                   lhs_bound=rep.lhs_bound, rhs_bound=rep.rhs_bound, combined_bound=rep.combined_bound,
                   ok=rep.ok)]


def _cmd_verify(args):
    rep = verify_formulas(args.max, args.fn)
    mm = rep.mismatch
    args._failed = not rep.ok
    return [record("verify", max_n=rep.max_n, checked=rep.checked, ok=rep.ok,
                   fn=mm.fn.value if mm else None, n=mm.n if mm else None,
                   formula=mm.formula if mm else None, oracle=mm.oracle if mm else None)]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json",
                        help="output format (default: json lines)")
    common.add_argument("--threads", type=int, default=1, help="worker threads for sieving (default: 1)")
    common.add_argument("--sieve-limit", type=_int, default=None,
                        help=f"largest sieve size; overrides ${SIEVE_LIMIT_ENV} (default: 1e8)")

    parser = argparse.ArgumentParser(prog="modpower",
                                     description="Periods and transients of power sequences modulo n.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="value of one counting function")
    p.add_argument("--fn", required=True, choices=[f.value for f in FunctionId])
    p.add_argument("--n", required=True, type=_int)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("census", parents=[common], help="(sigma, tau) census of Z_n by brute force")
    p.add_argument("--n", required=True, type=_int)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("sum", parents=[common], help="exact partial sums with asymptotic ratios")
    p.add_argument("--fn", required=True, choices=SUM_IDS)
    p.add_argument("--max", required=True, type=_int)
    p.add_argument("--checkpoints", type=_int_list, default=None,
                   help="comma list in [10, max] (default: powers of ten and max)")
    p.set_defaults(func=_cmd_sum)

    p = sub.add_parser("const", parents=[common], help="one constant with a rigorous error bound")
    p.add_argument("--name", required=True, choices=[c.value for c in ConstantId])
    p.add_argument("--target-error", type=float, default=5e-13)
    p.add_argument("--method", choices=("auto", "direct", "accelerated"), default="auto")
    p.add_argument("--primes", type=_int, default=None, help="prime bound for the direct product")
    p.set_defaults(func=_cmd_const)

    p = sub.add_parser("check", parents=[common],
                       help="Dirichlet identity check, Schwarz probe or 1/kappa diagnostics")
    p.add_argument("--series", required=True, choices=(*SERIES_IDS, "schwarz", "debruijn"))
    p.add_argument("--s", type=float, default=None, help="evaluation point (default: 2 for a,b,c,m; 3 otherwise)")
    p.add_argument("--terms", type=_int, default=10**6, help="Dirichlet sum truncation N (default: 1e6)")
    p.add_argument("--primes", type=_int, default=None, help="Euler product prime bound P (default: 1e5)")
    p.add_argument("--n", type=_int, default=None, help="N for schwarz/debruijn (default: 1e5)")
    p.add_argument("--checkpoints", type=_int_list, default=None)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("verify", parents=[common], help="closed forms against the orbit census for n <= max")
    p.add_argument("--max", required=True, type=_int)
    p.add_argument("--fn", type=lambda s: s.split(","), default=None, help="comma list of ids (default: all)")
    p.set_defaults(func=_cmd_verify)
    return parser


def run(argv=None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.sieve_limit is not None:
        os.environ[SIEVE_LIMIT_ENV] = str(args.sieve_limit)
    args._failed = False
    try:
        records = args.func(args)
    except ModpowerError as exc:
        print(f"modpower: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"modpower {args.command}: error: {exc}", file=sys.stderr)
        return 2
    write_records(records, args.format, out)
    return 1 if args._failed else 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
