"""Command-line interface.

Exit codes: 0 success, 1 failed validation or other library error, 2 usage
error, 3 modular polynomial data not found, 4 resource budget exceeded,
5 bad reduction.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from . import modpoly
from .arith import is_prime
from .curve import RationalCurve, naive_count, reduce
from .errors import (BadReductionError, CorruptDataError, DataNotFoundError,
                     InvalidArgumentError, ResourceLimitError, SeaError)
from .schoof import schoof_trace
from .sea import SeaConfig, curve_rng, sea_trace
from .stats import (char_sum, dyadic_ranges, elkies_count_diagnostic, identity_check, survey,
                    trace_table)

CSV_HEADER = ["p", "t", "D", "k", "R_elkies", "R_atkin", "R_ramified", "excluded_hit"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DATA, EXIT_RESOURCE, EXIT_BAD_REDUCTION = 0, 1, 2, 3, 4, 5


def rational(x: Fraction) -> dict:
    with localcontext() as ctx:
        ctx.prec = 20
        dec = Decimal(x.numerator) / Decimal(x.denominator)
    return {"num": x.numerator, "den": x.denominator, "decimal": str(dec)}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def ell_list(text: str) -> tuple[int, ...]:
    try:
        ells = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if len(set(ells)) != len(ells):
        raise argparse.ArgumentTypeError(f"primes must be distinct: {text}")
    for ell in ells:
        if ell < 3 or not is_prime(ell):
            raise argparse.ArgumentTypeError(f"{ell} is not an odd prime")
    return ells


def nu_list(text: str) -> tuple[int, ...]:
    nus = tuple(sorted({int(x) for x in text.split(",")}))
    if not set(nus) <= {1, 2}:
        raise argparse.ArgumentTypeError("nu must be drawn from {1, 2}")
    return nus


def _config(args) -> SeaConfig:
    kw = {"seed": args.seed, "modpoly_dir": args.modpoly_dir}
    if getattr(args, "naive_cutoff", None) is not None:
        kw["naive_cutoff"] = args.naive_cutoff
    return SeaConfig(**kw)


def _range(args, single, lo, hi, name):
    x, a, b = getattr(args, single), getattr(args, lo), getattr(args, hi)
    if x is not None:
        if a is not None or b is not None:
            raise InvalidArgumentError(f"--{single} conflicts with an explicit range")
        return x, 2 * x
    if a is None or b is None:
        raise InvalidArgumentError(f"give --{single} or both --{lo} and --{hi}")
    return a, b


# ---------------------------------------------------------------------------
# commands


def cmd_count(args, out) -> int:
    if not is_prime(args.p):
        raise InvalidArgumentError(f"p = {args.p} is not prime")
    E = reduce(RationalCurve(args.a, args.b), args.p)
    cfg = _config(args)
    rng = curve_rng(cfg.seed, E)
    if args.algorithm == "naive":
        cert = naive_count(E)
    elif args.algorithm == "schoof":
        cert = schoof_trace(E, rng)
    elif args.algorithm == "sea":
        cert = sea_trace(E, SeaConfig(naive_cutoff=0, seed=cfg.seed, modpoly_dir=cfg.modpoly_dir), rng)
    else:
        cert = sea_trace(E, cfg, rng)
    log = cert.residue_log.as_dict()
    if args.json:
        out.write(dumps({"p": cert.p, "N": cert.N, "t": cert.t, "D": cert.D, "method": cert.method,
                         "residue_log": {str(m): r for m, r in sorted(log.items())}}) + "\n")
    else:
        residues = ",".join(f"{m}:{r}" for m, r in sorted(log.items()))
        out.write(f"p={cert.p} N={cert.N} t={cert.t} D={cert.D} method={cert.method} "
                  f"residue_log={residues}\n")
    return EXIT_OK


def _summary(result):
    return {
        "pmin": result.pmin, "pmax": result.pmax, "lmin": result.lmin, "lmax": result.lmax,
        "records": len(result.records), "skipped": result.skipped,
        "moments": [
            {"nu": m.nu, "star": str(m.star), "convention": m.convention,
             "mean_moment": rational(m.mean_moment),
             "deficient_fraction": rational(m.deficient_fraction)}
            for m in result.moments],
    }


def _filter_nu(summary, nus):
    summary["moments"] = [m for m in summary["moments"] if m["nu"] in nus]
    return summary


def cmd_survey(args, out) -> int:
    EQ = RationalCurve(args.a, args.b)
    cfg = _config(args)
    lmin, lmax = _range(args, "L", "lmin", "lmax", "L")
    if args.dyadic:
        if args.P is None:
            raise InvalidArgumentError("--dyadic needs --P (the range [1, P] is partitioned)")
        ranges = list(dyadic_ranges(args.P))
        if not ranges:
            raise InvalidArgumentError("--P must be at least 5")
        table = trace_table(EQ, ranges[0][0], args.P, cfg, args.threads)
    else:
        ranges = [_range(args, "P", "pmin", "pmax", "P")]
        table = trace_table(EQ, ranges[0][0], ranges[0][1], cfg, args.threads)
    results = [survey(EQ, None, None, cfg, pmin=lo, pmax=hi, lmin=lmin, lmax=lmax,
                      include_supersingular=not args.exclude_supersingular, traces=table)
               for lo, hi in ranges]

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    seen = set()
    for res in results:
        for r in res.records:
            if r.p in seen:
                continue
            seen.add(r.p)
            w.writerow([r.p, r.t, r.D, r.k, r.R_e, r.R_a, r.R_ram, int(r.excluded_hit)])
    _emit(args.out, buf.getvalue(), out)

    summaries = [_filter_nu(_summary(r), args.nu) for r in results]
    doc = {"curve": {"a": args.a, "b": args.b}, "seed": cfg.seed,
           "hybrid_c": str(cfg.hybrid_c), "fallback_budget_multiplier": str(cfg.fallback_budget_multiplier),
           "naive_cutoff": cfg.naive_cutoff}
    if args.dyadic:
        doc["ranges"] = summaries
    else:
        doc.update(summaries[0])
    if args.summary:
        _emit(args.summary, dumps(doc) + "\n", out)
    return EXIT_OK


def cmd_charsum(args, out) -> int:
    if len(args.ells) not in (2, 4):
        raise InvalidArgumentError("--ells takes 2 or 4 primes")
    rep = char_sum(RationalCurve(args.a, args.b), args.ells, args.P, _config(args), args.threads)
    doc = {"ells": list(rep.ells), "P": rep.P, "count_p": rep.count_p, "S": rep.S,
           "main_term": rational(rep.main_term), "deviation": rational(rep.deviation)}
    _emit(args.out, dumps(doc) + "\n", out)
    return EXIT_OK


def cmd_identity(args, out) -> int:
    if len(args.ells) != 4:
        raise InvalidArgumentError("--ells takes exactly 4 primes")
    lhs, rhs, equal = identity_check(args.ells)
    out.write(dumps({"ells": list(args.ells), "lhs": lhs, "rhs": rhs, "equal": equal}) + "\n")
    return EXIT_OK


def cmd_diag(args, out) -> int:
    rec = elkies_count_diagnostic(args.D, args.L)
    out.write(dumps({"D": rec.D, "L": rec.L, "R": rec.R, "R0": rec.R0,
                     "threshold": rec.threshold, "pass": rec.passed}) + "\n")
    return EXIT_OK


def cmd_modpoly_validate(args, out) -> int:
    try:
        phi = modpoly.load(args.ell, args.modpoly_dir)
    except CorruptDataError as exc:
        out.write(dumps({"ell": args.ell, "ok": False, "error": str(exc)}) + "\n")
        return EXIT_FAIL
    out.write(dumps({"ell": args.ell, "ok": True, "degree": args.ell + 1,
                     "terms": len(phi.terms), "max_bits": phi.max_bits()}) + "\n")
    return EXIT_OK


def _emit(path, text, out):
    if path in (None, "-"):
        out.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="seacount",
                                     description="Point counting and Elkies/Atkin statistics.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--modpoly-dir", default=None,
                        help=f"directory of phi_<ell>.txt tables (overrides {modpoly.ENV_VAR})")
    curve = argparse.ArgumentParser(add_help=False)
    curve.add_argument("-a", type=int, required=True)
    curve.add_argument("-b", type=int, required=True)
    curve.add_argument("--naive-cutoff", type=int, default=None,
                       help="count naively for p up to this bound")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common, curve], help="count points on one reduction")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--algorithm", choices=("auto", "naive", "schoof", "sea"), default="auto")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("survey", parents=[common, curve], help="Elkies/Atkin counts over a range of p")
    p.add_argument("--P", type=int)
    p.add_argument("--pmin", type=int)
    p.add_argument("--pmax", type=int)
    p.add_argument("--L", type=int)
    p.add_argument("--lmin", type=int)
    p.add_argument("--lmax", type=int)
    p.add_argument("--nu", type=nu_list, default=(1, 2))
    p.add_argument("--dyadic", action="store_true")
    p.add_argument("--exclude-supersingular", action="store_true")
    p.add_argument("--out", default="-", help="CSV destination")
    p.add_argument("--summary", help="JSON summary destination")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("charsum", parents=[common, curve], help="Jacobi-symbol sums of D_p")
    p.add_argument("--ells", type=ell_list, required=True)
    p.add_argument("--P", type=int, required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_charsum)

    p = sub.add_parser("identity", help="check the sign-vector identity")
    p.add_argument("--ells", type=ell_list, required=True)
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("diag", help="Elkies-count diagnostic for one discriminant")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--L", type=int, required=True)
    p.set_defaults(func=cmd_diag)

    p = sub.add_parser("modpoly-validate", help="load and validate a modular polynomial table")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--modpoly-dir", default=None)
    p.set_defaults(func=cmd_modpoly_validate)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except InvalidArgumentError as exc:
        print(f"seacount: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataNotFoundError as exc:
        print(f"seacount: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ResourceLimitError as exc:
        print(f"seacount: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except BadReductionError as exc:
        print(f"seacount: {exc}", file=sys.stderr)
        return EXIT_BAD_REDUCTION
    except SeaError as exc:
        print(f"seacount: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
