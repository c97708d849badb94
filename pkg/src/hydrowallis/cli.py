"""Command-line front end.

    hydrowallis ratio  --ell L --dim N [--precision BITS]
    hydrowallis pi     --terms L [--precision BITS]
    hydrowallis scan   --ell-max L --dim N [--step S] [--format csv|json|plot] [--output FILE]
    hydrowallis verify [--level fast|full]

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
Data goes to stdout (or --output), diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

import mpmath

from .exactnum import to_float
from .variational import accuracy_ratio
from .wallis import MIN_FLOAT_PREC, ConvergenceRecord, RunningProduct, scan
from .verify import run_verify

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

CSV_HEADER = "ell,dim,ratio,partial_product,pi_estimate,abs_error"


def _int_at_least(lo):
    def parse(text):
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
        if value < lo:
            raise argparse.ArgumentTypeError(f"must be >= {lo}, got {value}")
        return value
    return parse


def _digits(prec: int) -> int:
    return max(17, int(prec * math.log10(2)) + 2)


def _fmt(x, prec: int) -> str:
    with mpmath.workprec(prec + 16):
        return mpmath.nstr(x, _digits(prec), strip_zeros=False)


def cmd_ratio(ell: int, dim: int, prec: int = 53, out=sys.stdout) -> int:
    r = accuracy_ratio(ell, dim)
    out.write(f"{r} = {_fmt(to_float(r, prec), prec)}\n")
    return EXIT_OK


def cmd_pi(terms: int, prec: int = 53, out=sys.stdout) -> int:
    run = RunningProduct(max(prec, MIN_FLOAT_PREC))
    run.advance_to(terms)
    with mpmath.workprec(run.prec):
        est = 2 * run.value
        err = abs(mpmath.pi - est)
        scaled = err * 4 * terms / mpmath.pi
    with mpmath.workprec(prec):
        est, err, scaled = +est, +err, +scaled
    out.write(f"terms        {terms}\n")
    out.write(f"estimate     {_fmt(est, prec)}\n")
    out.write(f"abs_error    {_fmt(err, prec)}\n")
    out.write(f"scaled_error {_fmt(scaled, prec)}\n")
    return EXIT_OK


def format_records(records, fmt: str) -> str:
    """Serialise scan records; floats use Python's shortest round-trip repr."""
    rows = [r.as_dict() for r in records]
    if fmt == "csv":
        lines = [CSV_HEADER]
        for d in rows:
            lines.append(",".join(repr(d[k]) for k in CSV_HEADER.split(",")))
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if fmt == "plot":
        lines = ["# ell ratio"]
        lines += [f"{d['ell']} {d['ratio']!r}" for d in rows]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def parse_json_records(text: str) -> list[ConvergenceRecord]:
    return [ConvergenceRecord.from_dict(d) for d in json.loads(text)]


def cmd_scan(ell_max, dim, step=1, fmt="csv", prec=53, output=None, out=sys.stdout) -> int:
    text = format_records(scan(ell_max, dim, step, prec), fmt)
    if output is None or output == "-":
        out.write(text)
        return EXIT_OK
    try:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"hydrowallis: cannot write {output}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_verify(level="fast", out=sys.stdout) -> int:
    def show(c):
        status = "PASS" if c.passed else "FAIL"
        out.write(f"{status} {c.name}: measured={c.measured} tolerance={c.tolerance}\n")
        out.flush()

    report = run_verify(level, on_check=show)
    n_fail = sum(not c.passed for c in report.checks)
    out.write(f"overall: {'PASS' if report.overall else 'FAIL'} "
              f"({len(report.checks) - n_fail}/{len(report.checks)} checks)\n")
    return EXIT_OK if report.overall else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hydrowallis",
                                description="Variational hydrogen atom and the Wallis product")
    sub = p.add_subparsers(dest="command", required=True)
    precision = dict(type=_int_at_least(53), default=53, help="float precision in bits (>= 53)")

    r = sub.add_parser("ratio", help="exact and float accuracy ratio")
    r.add_argument("--ell", type=_int_at_least(0), required=True)
    r.add_argument("--dim", type=_int_at_least(2), required=True)
    r.add_argument("--precision", **precision)

    q = sub.add_parser("pi", help="pi from the partial Wallis product")
    q.add_argument("--terms", type=_int_at_least(1), required=True)
    q.add_argument("--precision", **precision)

    s = sub.add_parser("scan", help="convergence table over l")
    s.add_argument("--ell-max", type=_int_at_least(0), required=True)
    s.add_argument("--dim", type=_int_at_least(2), required=True)
    s.add_argument("--step", type=_int_at_least(1), default=1)
    s.add_argument("--format", choices=("csv", "json", "plot"), default="csv")
    s.add_argument("--precision", **precision)
    s.add_argument("--output", "-o", default=None, help="output file (default stdout)")

    v = sub.add_parser("verify", help="run the self-verification suite")
    v.add_argument("--level", choices=("fast", "full"), default="fast")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if args.command == "ratio":
        return cmd_ratio(args.ell, args.dim, args.precision, out)
    if args.command == "pi":
        return cmd_pi(args.terms, args.precision, out)
    if args.command == "scan":
        return cmd_scan(args.ell_max, args.dim, args.step, args.format, args.precision,
                        args.output, out)
    return cmd_verify(args.level, out)


def run() -> None:
    try:
        code = main()
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); not an error for us
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = EXIT_OK
    sys.exit(code)
