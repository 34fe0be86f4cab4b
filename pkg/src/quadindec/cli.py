"""Command-line interface.

Exit codes: 0 success, 1 violation (when asserting none) or failed
verification, 2 usage error or out-of-scope input, 3 resource budget
exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import approx, counterexample
from .arith.ntheory import DEFAULT_FACTOR_BUDGET
from .cfrac import expand_sqrt, in_scope_reason
from .conjecture import COLUMNS, check_conjecture, scan, to_csv
from .errors import BudgetError, NoFamilyError, OutOfScopeError, QuadIndecError, UndecidedError
from .family import family_search, solve_family

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    precision_bits: int = 256
    factor_budget: int = DEFAULT_FACTOR_BUDGET
    workers: int = 1
    output_format: str = "text"
    max_period: int = 10**6

    def __post_init__(self):
        if self.precision_bits < 64:
            raise UsageError("--precision must be at least 64")
        if self.workers < 1:
            raise UsageError("--workers must be at least 1")
        if self.factor_budget < 1:
            raise UsageError("--factor-budget must be positive")
        if self.output_format not in ("json", "csv", "text"):
            raise UsageError(f"unknown format {self.output_format!r}")


def _int(text: str) -> int:
    try:
        return int(text.replace("_", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def parse_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        word = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"malformed word {text!r}: expected comma-separated integers") from None
    if any(u < 1 for u in word):
        raise UsageError("period entries must be positive")
    if word != word[::-1]:
        raise UsageError(f"word {','.join(map(str, word))} is not a palindrome; a period interior must read the same both ways")
    return word


def parse_x_range(text: str, x_min: int) -> range:
    if text == "auto":
        return range(x_min, x_min + 20)
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            return range(int(lo), int(lo) + 1)
        a, b = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"bad x range {text!r}: use A..B, a single integer, or auto") from None
    if a > b:
        raise UsageError(f"empty x range {text!r}")
    return range(a, b + 1)


def _emit(out, line=""):
    out.write(line + "\n")


def cmd_expand(args, cfg: Config, out) -> int:
    cf = expand_sqrt(args.D, max_period=cfg.max_period)
    try:
        reason = in_scope_reason(args.D)
    except BudgetError:
        reason = "squarefreeness undecided within the factor budget"
    if cfg.output_format == "json":
        _emit(out, json.dumps({"D": str(cf.D), "u0": str(cf.u0), "s": str(cf.s), "period": [str(u) for u in cf.period]}, separators=(",", ":")))
    elif cfg.output_format == "csv":
        _emit(out, "D,u0,s,period")
        _emit(out, f"{cf.D},{cf.u0},{cf.s},{' '.join(map(str, cf.period))}")
    else:
        _emit(out, str(cf))
        _emit(out, f"u0={cf.u0} period=[{','.join(map(str, cf.period))}] s={cf.s}")
        if reason:
            _emit(out, f"note: {reason}; field-level commands will reject it")
    return EXIT_OK


def _emit_reports(reports, cfg: Config, out):
    if cfg.output_format == "json":
        for r in reports:
            _emit(out, r.to_json())
    elif cfg.output_format == "csv":
        out.write(to_csv(reports))
    else:
        for r in reports:
            _emit(out, r.to_text())


def cmd_check(args, cfg: Config, out) -> int:
    reason = in_scope_reason(args.D)
    if reason:
        raise OutOfScopeError(reason)
    expand_sqrt(args.D, max_period=cfg.max_period)  # fail fast on huge periods
    rep = check_conjecture(args.D, cfg.factor_budget, squarefree=True)
    _emit_reports([rep], cfg, out)
    if args.assert_holds and not rep.conjecture_holds:
        return EXIT_FAIL
    return EXIT_OK


def cmd_scan(args, cfg: Config, out) -> int:
    filters = []
    if args.only_violations:
        filters.append("violations")
    if args.prime_N:
        filters.append("prime-N")
    if args.lo > args.hi:
        raise UsageError(f"empty range [{args.lo}, {args.hi}]")
    recs = list(scan(args.lo, args.hi, filters, cfg.workers, cfg.factor_budget))
    _emit_reports(recs, cfg, out)
    failed = any(getattr(r, "conjecture_holds", True) is False for r in recs)
    errors = any(not hasattr(r, "conjecture_holds") for r in recs)
    if args.assert_none and failed:
        return EXIT_FAIL
    if errors:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_family(args, cfg: Config, out) -> int:
    if (args.word is None) == (args.word_file is None):
        raise UsageError("give exactly one of --word or --word-file")
    text = args.word if args.word is not None else open(args.word_file).read()
    word = parse_word(text)
    spec = solve_family(word)
    preds = [p for p in (args.predicates or "").split(",") if p]
    xs = parse_x_range(args.x, spec.x_min)
    members = family_search(spec, xs, preds, cfg.workers, cfg.factor_budget)
    if cfg.output_format == "json":
        doc = {"spec": spec.as_dict(), "members": [m.as_dict() for m in members]}
        _emit(out, json.dumps(doc, separators=(",", ":")))
    elif cfg.output_format == "csv":
        _emit(out, ",".join(("x",) + COLUMNS + ("error",)))
        for m in members:
            row = m.report.csv_row() if m.report else [str(m.D)] + [""] * (len(COLUMNS) - 1)
            _emit(out, ",".join([str(m.x)] + row + [m.error or ""]))
    else:
        _emit(out, f"word={','.join(map(str, spec.word))} A={spec.A} B={spec.B} C={spec.C}")
        _emit(out, f"u0(x) = {spec.u0_poly}")
        _emit(out, f"D(x) = {spec.D_poly}")
        _emit(out, f"x_min = {spec.x_min}")
        for m in members:
            tail = m.report.to_text() if m.report else f"D={m.D} {m.error}"
            _emit(out, f"x={m.x} {tail}")
    return EXIT_OK


def cmd_approx(args, cfg: Config, out) -> int:
    reason = in_scope_reason(args.D)
    if reason:
        raise OutOfScopeError(reason)
    cf = expand_sqrt(args.D, max_period=cfg.max_period)
    try:
        if args.target == "N":
            res = approx.series_Ni(cf, args.i, args.degree, args.method, cfg.precision_bits)
        else:
            res = approx.series_Mi(cf, args.i, args.degree, args.method, cfg.precision_bits)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if cfg.output_format == "json":
        _emit(out, res.to_json())
    elif cfg.output_format == "csv":
        raise UsageError("approx supports json and text output")
    else:
        status = "certified" if res.certified else f"not certified ({res.reason})"
        _emit(out, f"{res.target}_{res.i} = {res.exact}, degree {res.degree}, u = {res.u_floor}")
        _emit(out, f"series = {res.series} (~{float(res.series):.12g}), radius = {res.bound} (~{float(res.bound):.3g})")
        _emit(out, f"scaled series in [{float(res.approx_lo):.15g}, {float(res.approx_hi):.15g}]")
        _emit(out, status)
    return EXIT_OK if res.certified else EXIT_FAIL


def cmd_verify(args, cfg: Config, out) -> int:
    rows = counterexample.verify(args.D if args.D is not None else counterexample.D, cfg.factor_budget)
    ok = len(rows) == 6 and all(r.ok for r in rows)
    if cfg.output_format == "json":
        _emit(out, json.dumps({"pass": ok, "items": [r.as_dict() for r in rows]}, separators=(",", ":")))
    else:
        for r in rows:
            _emit(out, f"({r.item}) {'PASS' if r.ok else 'FAIL'}  {r.name}: expected {r.expected}, got {r.got}")
        passed = sum(r.ok for r in rows)
        _emit(out, f"{'PASS' if ok else 'FAIL'}, {passed}/6 checks")
    if not ok:
        first = next((r for r in rows if not r.ok), None)
        if first is not None:
            sys.stderr.write(f"first mismatch at item ({first.item}): {first.name}\n")
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=256, help="interval precision in bits (>= 64)")
    common.add_argument("--factor-budget", type=int, default=DEFAULT_FACTOR_BUDGET, help="iterations allowed to the factor splitter")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--max-period", type=int, default=10**6, help="give up on periods longer than this")

    p = argparse.ArgumentParser(prog="quadindec", description="Indecomposable integers of Z[sqrt D] and the Jang-Kim bound.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("expand", parents=[common], help="continued fraction of sqrt(D)")
    s.add_argument("D", type=_int)
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("check", parents=[common], help="evaluate every bound for one field")
    s.add_argument("D", type=_int)
    s.add_argument("--assert-holds", action="store_true", help="exit 1 if the conjectured bound fails")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("scan", parents=[common], help="check every in-scope D in a range")
    s.add_argument("lo", type=_int)
    s.add_argument("hi", type=_int)
    s.add_argument("--only-violations", action="store_true")
    s.add_argument("--prime-N", action="store_true", help="keep only fields whose N is prime")
    s.add_argument("--assert-none", action="store_true", help="exit 1 if any violation is found")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("family", parents=[common], help="parametric family for a period word")
    s.add_argument("--word", help="comma-separated period interior, without the final 2*u0")
    s.add_argument("--word-file")
    s.add_argument("--x", default="auto", help="A..B, a single x, or auto (20 values from x_min)")
    s.add_argument("--predicates", default="", help="comma-separated: mod4, squarefree, prime-N")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("approx", parents=[common], help="series estimate of N_i or M_i")
    s.add_argument("D", type=_int)
    s.add_argument("i", type=_int)
    s.add_argument("--degree", type=int, default=1)
    s.add_argument("--target", choices=("N", "M"), default="N")
    s.add_argument("--method", choices=("exact", "interval"), default="exact")
    s.set_defaults(func=cmd_approx)

    s = sub.add_parser("verify-paper", parents=[common], help="re-derive the counterexample field item by item")
    s.add_argument("--D", type=_int, default=None, help="substitute another D (negative control)")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        cfg = Config(args.precision, args.factor_budget, args.workers, args.format, args.max_period)
        return args.func(args, cfg, out)
    except (UsageError, OutOfScopeError, NoFamilyError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except (BudgetError, UndecidedError) as e:
        sys.stderr.write(f"budget exceeded: {e}\n")
        return EXIT_BUDGET
    except QuadIndecError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_FAIL
    except (ValueError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


def entry():
    sys.exit(main())
