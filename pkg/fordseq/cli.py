"""Command-line front end.

Commands: extract, farey, card, jumps, report, render, verify. Every command
builds a CommandResult; main() writes its payload and returns the exit code.
"""

import argparse
import json
import logging
import sys
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import mpmath

from fordseq import approx, counting, render, sequences, serialization, verify
from fordseq.constants import (
    AFFINE_MODES,
    APPROXIMATIONS,
    CARDINALITY_METHODS,
    COMMAND_FORMATS,
    EXIT_DOMAIN,
    EXIT_OK,
    EXIT_USAGE,
    JUMP_CSV_COLUMNS,
    LOG_FORMAT,
    OUTPUT_FORMATS,
    PARAMETER_RANGES,
    RENDER_DEFAULTS,
    RENDER_KINDS,
    REPORT_CSV_COLUMNS,
    REPORT_DEFAULTS,
    REPORT_DIGITS,
    VERIFY_DEFAULTS,
)
from fordseq.errors import FordError, UsageError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    payload: bytes


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting with status 2."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or a bare integer "p" with nonnegative digits only.

    Signs and decimals are rejected so boundary predicates stay exact.

    Raises:
        UsageError: If the text is not of that form or q is zero
    """
    numerator, sep, denominator = text.strip().partition("/")
    if not numerator.isdigit() or (sep and not denominator.isdigit()):
        raise UsageError(f"Expected a rational of the form p/q, got {text!r}")
    if sep and int(denominator) == 0:
        raise UsageError(f"Zero denominator in {text!r}")
    return Fraction(int(numerator), int(denominator) if sep else 1)


def _ranged(name: str) -> Callable[[str], int]:
    low, high = PARAMETER_RANGES[name]

    def convert(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
        if not low <= value <= high:
            raise argparse.ArgumentTypeError(f"must be between {low} and {high}, got {value}")
        return value

    return convert


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except UsageError as e:
        raise argparse.ArgumentTypeError(str(e))


def _output_format(args: argparse.Namespace) -> str:
    allowed = COMMAND_FORMATS[args.command]
    if args.format is None:
        return allowed[0]
    if args.format not in allowed:
        raise UsageError(f"{args.command} does not support --format {args.format}; expected one of {allowed}")
    return args.format


def _ok(text: str) -> CommandResult:
    return CommandResult(exit_code=EXIT_OK, payload=text.encode("utf-8"))


def _mp(value: mpmath.mpf) -> str:
    return mpmath.nstr(value, REPORT_DIGITS)


def cmd_extract(args: argparse.Namespace) -> CommandResult:
    output_format = _output_format(args)
    if args.b is None:
        result = sequences.extract_origin(args.m)
    else:
        result = sequences.extract_affine(args.m, args.b, args.mode)
    logger.debug("Extracted %d fractions for %r", result.count, result.line)
    return _ok(serialization.encode_sequence(result.fractions, output_format))


def cmd_farey(args: argparse.Namespace) -> CommandResult:
    output_format = _output_format(args)
    result = sequences.farey(args.n) if args.n is not None else sequences.farey_horizontal(args.k)
    return _ok(serialization.encode_sequence(result.fractions, output_format))


def cmd_card(args: argparse.Namespace) -> CommandResult:
    output_format = _output_format(args)
    value = counting.cardinality(args.m, args.method)
    match output_format:
        case "json":
            return _ok(json.dumps({"m": args.m, "method": args.method, "cardinality": value}) + "\n")
        case "csv":
            return _ok(serialization.rows_to_csv(["m", "method", "cardinality"], [(args.m, args.method, value)]))
    return _ok(f"{value}\n")


def cmd_jumps(args: argparse.Namespace) -> CommandResult:
    output_format = _output_format(args)
    if args.m_from > args.m_to:
        raise UsageError(f"--from {args.m_from} exceeds --to {args.m_to}")
    columns = JUMP_CSV_COLUMNS if args.cardinality else JUMP_CSV_COLUMNS[:3]
    rows = [row[: len(columns)] for row in counting.jump_table(args.m_from, args.m_to)]
    match output_format:
        case "json":
            return _ok(json.dumps([dict(zip(columns, row, strict=True)) for row in rows]) + "\n")
        case "text":
            return _ok("".join(" ".join(str(v) for v in row) + "\n" for row in rows))
    return _ok(serialization.rows_to_csv(columns, rows))


def cmd_report(args: argparse.Namespace) -> CommandResult:
    output_format = _output_format(args)
    if args.m_from > args.m_to:
        raise UsageError(f"--from {args.m_from} exceeds --to {args.m_to}")
    summary = approx.error_report(args.m_from, args.m_to, args.step)

    if output_format == "json":
        payload = {
            "rows": [
                {
                    "m": r.m,
                    "exact": r.exact,
                    **{name: float(v) for name, v in zip(APPROXIMATIONS, r.values, strict=True)},
                    "errors": [float(e) for e in r.errors],
                    "ratios": [float(x) for x in r.ratios],
                }
                for r in summary.reports
            ],
            "summary": {
                "best": summary.best,
                "max_ratio": {k: float(v) for k, v in summary.max_ratio.items()},
                "mean_abs_error": {k: float(v) for k, v in summary.mean_abs_error.items()},
            },
        }
        return _ok(json.dumps(payload) + "\n")

    rows = summary.rows()
    means = " ".join(f"{k}={_mp(v)}" for k, v in summary.mean_abs_error.items())
    return _ok(serialization.rows_to_csv(REPORT_CSV_COLUMNS, rows) + f"# best={summary.best} mean_abs_error {means}\n")


def cmd_render(args: argparse.Namespace) -> CommandResult:
    _output_format(args)
    if args.kind == "approx":
        if args.m_from is None or args.m_to is None:
            raise UsageError("render --kind approx needs --from and --to")
        if args.m_from > args.m_to:
            raise UsageError(f"--from {args.m_from} exceeds --to {args.m_to}")
        payload = render.render("approx", m_from=args.m_from, m_to=args.m_to, step=args.step)
    else:
        if args.m is None:
            raise UsageError(f"render --kind {args.kind} needs --m")
        payload = render.render(args.kind, args.m, args.qmax)
    return CommandResult(exit_code=EXIT_OK, payload=payload)


def cmd_verify(args: argparse.Namespace) -> CommandResult:
    output_format = _output_format(args)
    report = verify.run_verification(args.max_m)
    if output_format == "json":
        text = json.dumps(
            {"max_m": report.max_m, "ok": report.ok, "checks": [vars(r) for r in report.results]}, default=str
        )
        text += "\n"
    else:
        text = report.to_text()
    if not report.ok:
        logger.error("Verification failed: %s", report.first_failure.detail)
    return CommandResult(exit_code=EXIT_OK if report.ok else EXIT_DOMAIN, payload=text.encode("utf-8"))


def _add_output_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # suppress=True leaves values given before the subcommand untouched
    def default(value: object) -> object:
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--format", choices=OUTPUT_FORMATS, default=default(None), help="Output format")
    parser.add_argument("--out", type=Path, default=default(None), help="Output file (default: stdout)")
    parser.add_argument("--verbose", action="store_true", default=default(False), help="Log debug output to stderr")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _add_output_flags(common, suppress=True)

    parser = _Parser(prog="fordseq", description="Fraction sequences extracted from Ford circles.")
    _add_output_flags(parser, suppress=False)
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    extract = commands.add_parser("extract", parents=[common], help="Extract F_{1/m} or an affine-line sequence")
    extract.add_argument("--m", type=_ranged("m"), required=True)
    extract.add_argument("--b", type=_rational, default=None, help="Intercept p/q in (0, 1)")
    extract.add_argument("--mode", choices=AFFINE_MODES, default=AFFINE_MODES[0])
    extract.set_defaults(handler=cmd_extract)

    farey = commands.add_parser("farey", parents=[common], help="Farey sequence by order or horizontal line")
    which = farey.add_mutually_exclusive_group(required=True)
    which.add_argument("--n", type=_ranged("n"))
    which.add_argument("--k", type=_rational, help="Height p/q of the horizontal line")
    farey.set_defaults(handler=cmd_farey)

    card = commands.add_parser("card", parents=[common], help="Cardinality of F_{1/m}")
    card.add_argument("--m", type=_ranged("m"), required=True)
    card.add_argument("--method", choices=CARDINALITY_METHODS, default=CARDINALITY_METHODS[0])
    card.set_defaults(handler=cmd_card)

    jumps = commands.add_parser("jumps", parents=[common], help="Jumps S_m over a range of m")
    jumps.add_argument("--from", dest="m_from", type=_ranged("from"), required=True)
    jumps.add_argument("--to", dest="m_to", type=_ranged("to"), required=True)
    jumps.add_argument("--cardinality", action="store_true", help="Add the cumulative cardinality column")
    jumps.set_defaults(handler=cmd_jumps)

    report = commands.add_parser("report", parents=[common], help="Exact cardinality against a1, a2, a3")
    report.add_argument("--from", dest="m_from", type=_ranged("from"), required=True)
    report.add_argument("--to", dest="m_to", type=_ranged("to"), required=True)
    report.add_argument("--step", type=_ranged("step"), default=REPORT_DEFAULTS["step"])
    report.set_defaults(handler=cmd_report)

    figure = commands.add_parser("render", parents=[common], help="Deterministic SVG figure")
    figure.add_argument("--kind", choices=RENDER_KINDS, default=RENDER_DEFAULTS["kind"])
    figure.add_argument("--m", type=_ranged("m"), default=None, help="Slope denominator for circles, line and lattice")
    figure.add_argument("--qmax", type=_ranged("qmax"), default=RENDER_DEFAULTS["qmax"])
    figure.add_argument("--from", dest="m_from", type=_ranged("from"), default=None, help="First m of the approx figure")
    figure.add_argument("--to", dest="m_to", type=_ranged("to"), default=None, help="Last m of the approx figure")
    figure.add_argument("--step", type=_ranged("step"), default=REPORT_DEFAULTS["step"])
    figure.set_defaults(handler=cmd_render)

    check = commands.add_parser("verify", parents=[common], help="Run the oracle and invariant suites")
    check.add_argument("--max-m", dest="max_m", type=_ranged("max_m"), default=VERIFY_DEFAULTS["max_m"])
    check.set_defaults(handler=cmd_verify)
    return parser


def run(argv: Sequence[str]) -> tuple[CommandResult, Path | None]:
    """Parse argv and execute the command; errors propagate as FordError subclasses."""
    args = build_parser().parse_args(list(argv))
    return args.handler(args), args.out


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING, format=LOG_FORMAT, stream=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    _configure_logging("--verbose" in argv)

    try:
        result, out = run(argv)
    except UsageError as e:
        logger.error("%s", e)
        return EXIT_USAGE
    except FordError as e:
        logger.error("%s", e)
        return EXIT_DOMAIN

    try:
        if out is None:
            sys.stdout.buffer.write(result.payload)
            sys.stdout.flush()
        else:
            out.write_bytes(result.payload)
    except OSError as e:
        logger.error("Cannot write output: %s", e)
        return EXIT_DOMAIN
    return result.exit_code
