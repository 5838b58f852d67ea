"""Command line: ``qnyquist analyze|sketch|verify``.

Exit status: 0 success, 1 verification failure, 2 bad input, 3 degenerate
input under ``--strict``, 4 output path not writable.
"""

import argparse
import json
import sys
from collections import Counter
from typing import List, Optional

from . import __version__
from .errors import NyquistError, ParseError
from .report import build_report
from .verify import FAULTS, verify_corpus, verify_tf
from .xfer import from_document, parse_tf

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_STRICT = 3
EXIT_OUTPUT = 4


class _Exit(Exception):
    def __init__(self, code, message=""):
        super().__init__(message)
        self.code = code
        self.message = message


def _load_tf(args):
    """``(tf, source_text)`` from --tf or --input, or ``(None, None)``."""
    if args.tf is not None:
        try:
            return parse_tf(args.tf), args.tf
        except ParseError as exc:
            raise _Exit(EXIT_INPUT, f"parse error: {exc}") from None
        except (NyquistError, ZeroDivisionError, ValueError) as exc:
            raise _Exit(EXIT_INPUT, f"invalid transfer function: {exc}") from None
    if args.input is not None:
        try:
            with open(args.input) as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise _Exit(EXIT_INPUT, f"cannot read {args.input}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise _Exit(EXIT_INPUT, f"{args.input} is not valid JSON: {exc}") from None
        if isinstance(doc, dict) and "input" in doc and "document" in doc.get("input", {}):
            doc = doc["input"]["document"]  # a report written by `analyze`
        try:
            if isinstance(doc, dict) and "expression" in doc and "num" not in doc:
                return parse_tf(doc["expression"]), doc["expression"]
            if not isinstance(doc, dict):
                raise ValueError("top level must be an object")
            return from_document(doc), None
        except ParseError as exc:
            raise _Exit(EXIT_INPUT, f"parse error: {exc}") from None
        except (NyquistError, ZeroDivisionError, ValueError, TypeError) as exc:
            raise _Exit(EXIT_INPUT, f"invalid transfer-function document: {exc}") from None
    return None, None


def _require_tf(args):
    tf, text = _load_tf(args)
    if tf is None:
        raise _Exit(EXIT_INPUT, "one of --tf or --input is required")
    return tf, text


def _omega_range(text):
    if text is None:
        return None
    try:
        lo, hi = (float(x) for x in text.split(":"))
    except ValueError:
        raise _Exit(EXIT_INPUT, f"--omega-range must look like lo:hi, got {text!r}") from None
    if not 0 < lo < hi:
        raise _Exit(EXIT_INPUT, "--omega-range needs 0 < lo < hi")
    return lo, hi


def _report(args):
    tf, text = _require_tf(args)
    if args.order is not None and args.order < 1:
        raise _Exit(EXIT_INPUT, "--order must be >= 1")
    report = build_report(tf, order=args.order, expression=text)
    for n in report.notices:
        if n.kind == "degenerate":
            print(f"notice: {n.message}", file=sys.stderr)
    return report


def _strict(args, report):
    if args.strict and report.is_degenerate:
        codes = ", ".join(n.code for n in report.notices if n.kind == "degenerate")
        raise _Exit(EXIT_STRICT, f"degenerate input ({codes}) rejected by --strict")


def _write_text(path, text):
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise _Exit(EXIT_OUTPUT, f"cannot write {path}: {exc.strerror}") from None


def cmd_analyze(args) -> int:
    report = _report(args)
    text = report.to_json() + "\n"
    if args.out:
        _write_text(args.out, text)
    else:
        sys.stdout.write(text)
    _strict(args, report)
    return EXIT_OK


def cmd_sketch(args) -> int:
    from .sketch import build_sketch, render_svg, write_table

    omega_range = _omega_range(args.omega_range)
    if args.samples_per_decade < 1:
        raise _Exit(EXIT_INPUT, "--samples-per-decade must be >= 1")
    report = _report(args)
    doc = build_sketch(report, omega_range, args.samples_per_decade)
    try:
        render_svg(doc, args.out)
        if args.table:
            write_table(doc.samples, args.table)
    except OSError as exc:
        raise _Exit(EXIT_OUTPUT, f"cannot write {exc.filename}: {exc.strerror}") from None
    if args.report:
        _write_text(args.report, report.to_json() + "\n")
    print(f"wrote {args.out}" + (f" and {args.table}" if args.table else ""))
    _strict(args, report)
    return EXIT_OK


def _print_results(results) -> bool:
    ok = True
    for r in results:
        print(r.line())
        ok &= r.passed
    return ok


def cmd_verify(args) -> int:
    tf, _ = _load_tf(args)
    fault = args.inject_fault
    if tf is not None:
        ok = _print_results(verify_tf(tf, fault))
        print("all checks passed" if ok else "verification FAILED")
        return EXIT_OK if ok else EXIT_VERIFY

    trials = 200 if args.trials is None else args.trials
    if trials < 1:
        raise _Exit(EXIT_INPUT, "--trials must be >= 1")
    tally = Counter()
    failures = []
    for i, (t, results) in enumerate(verify_corpus(trials, args.seed, fault)):
        for r in results:
            tally[(r.name, "skip" if r.skipped else ("pass" if r.passed else "fail"))] += 1
            if not r.passed:
                failures.append(f"trial {i}: {t}: {r.line()}")
    names = sorted({name for name, _ in tally})
    for name in names:
        p, f, s = (tally[(name, x)] for x in ("pass", "fail", "skip"))
        status = "FAIL" if f else "PASS"
        print(f"{status}  {name}: {p} passed, {f} failed, {s} skipped")
    for line in failures[:20]:
        print(line)
    if len(failures) > 20:
        print(f"... {len(failures) - 20} more failures")
    print(f"{trials} random transfer functions, seed {args.seed}: "
          + ("all checks passed" if not failures else "verification FAILED"))
    return EXIT_OK if not failures else EXIT_VERIFY


def _add_input(p):
    g = p.add_mutually_exclusive_group(required=False)
    g.add_argument("--tf", metavar="EXPR", help='transfer function, e.g. "(s+1)/(s^2+2s+3)"')
    g.add_argument("--input", metavar="FILE", help="JSON transfer-function document")
    p.add_argument("--order", type=int, help="Taylor truncation N for the printed tables")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qnyquist",
        description="Qualitative Nyquist plots from Taylor coefficients.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="print the qualitative report as JSON")
    _add_input(p)
    p.add_argument("--out", help="write the report here instead of standard output")
    p.add_argument("--strict", action="store_true", help="exit 3 on degenerate input")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sketch", help="render the qualitative plot as SVG")
    _add_input(p)
    p.add_argument("--out", required=True, help="SVG output path")
    p.add_argument("--table", help="also write the sweep samples as CSV")
    p.add_argument("--report", help="also write the JSON report")
    p.add_argument("--omega-range", metavar="LO:HI", help="sweep range (default scales with the roots)")
    p.add_argument("--samples-per-decade", type=int, default=60)
    p.add_argument("--strict", action="store_true", help="exit 3 on degenerate input")
    p.set_defaults(func=cmd_sketch)

    p = sub.add_parser("verify", help="check the analysis against independent oracles")
    _add_input(p)
    p.add_argument("--trials", type=int, help="random corpus size when no input is given (default 200)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-fault", choices=FAULTS, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        if exc.message:
            print(exc.message, file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
