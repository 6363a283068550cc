"""
Command-line entry point for hamming-spectra.
Every subcommand writes OutputRecords to stdout; logs and diagnostics go to stderr.
"""
import argparse
import sys
import uuid
from collections.abc import Callable, Iterator, Sequence
from typing import NoReturn, TextIO

from src.cli.error_handler import EXIT_FAILURE, EXIT_OK, handle_cli_error
from src.cli.output import OutputRecord, RecordWriter
from src.cli.verify import run_checks
from src.core.config import settings
from src.core.exceptions import UsageError
from src.core.logging import clear_log_context, get_logger, log_with_context, setup_logging
from src.core.metrics import export_metrics
from src.spectra.chiq_bounds import hamming_chiq_lb, lu_table, z4_chiq
from src.spectra.combinatorics import TypeVector, multinomial
from src.spectra.hamming_spectrum import lambda_min_exact
from src.spectra.krawtchouk import (
    krawtchouk_column,
    krawtchouk_eval,
    q_coeff_closed_form,
    q_polys_by_recursion,
)
from src.spectra.z4_spectrum import (
    Z4EigenvalueRecord,
    eigenvalue_by_type,
    lambda_min_scan,
    z4_spectrum,
)

logger = get_logger(__name__)

Handler = Callable[[argparse.Namespace], Iterator[OutputRecord]]


class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(message, details={"usage": self.format_usage().strip()})


def _record(command: str, inputs: dict, results: object, *provenance: str) -> OutputRecord:
    return OutputRecord(
        command=command, inputs=inputs, results=results, provenance=list(provenance)
    )


def _krawtchouk(args: argparse.Namespace) -> Iterator[OutputRecord]:
    inputs = {"n": args.n, "j": args.j, "x": args.x}
    if args.x is None:
        results: object = {"column": krawtchouk_column(args.n, args.j)}
    else:
        results = {"value": krawtchouk_eval(args.n, args.j, args.x)}
    yield _record("krawtchouk", inputs, results, "K_j(x) = sum_i (-1)^i C(x,i) C(n-x,j-i)")


def _hamming_min(args: argparse.Namespace) -> Iterator[OutputRecord]:
    result = lambda_min_exact(args.n, args.j)
    provenance = ["exhaustive scan of K_j(w), w = 0..n"]
    if result.closed_form:
        provenance.append(f"cross-checked against closed form {result.closed_form}")
    yield _record("hamming-min", {"n": args.n, "j": args.j}, result, *provenance)


def _qpoly(args: argparse.Namespace) -> Iterator[OutputRecord]:
    poly = q_polys_by_recursion(args.n, args.j)[args.j]
    results: dict[str, object] = {"recursion": poly}
    provenance = ["x q_j = c_{j+1} q_{j+1} + b_{j-1} q_{j-1}"]
    if args.closed_form:
        closed = [
            q_coeff_closed_form(args.n, args.j, args.j - power) for power in range(args.j + 1)
        ]
        results["closed_form"] = closed
        results["equal"] = closed == [poly.coefficient(power) for power in range(args.j + 1)]
        provenance.append("L_i(j) summed over 2-separated sets")
    inputs = {"n": args.n, "j": args.j, "closed_form": args.closed_form}
    yield _record("qpoly", inputs, results, *provenance)


def _parse_type(raw: str) -> TypeVector:
    try:
        parts = tuple(int(x) for x in raw.split(","))
        return TypeVector(p=4, parts=parts)
    except ValueError as e:
        raise UsageError(
            f"--type expects four comma-separated counts, got {raw!r}", details={"flag": "--type"}
        ) from e


def _z4_spectrum(args: argparse.Namespace) -> Iterator[OutputRecord]:
    inputs = {"r": args.r, "s": args.s, "type": args.type}
    if args.type is None:
        results: object = z4_spectrum(args.r, args.s)
    else:
        t = _parse_type(args.type)
        value = eigenvalue_by_type(args.r, args.s, t)
        results = Z4EigenvalueRecord(t=t, value=value, multiplicity=multinomial(t))
    yield _record("z4-spectrum", inputs, results, "lambda(t) = C(n;r,s,r,s)/C(n;t) * coefficient")


def _z4_min(args: argparse.Namespace) -> Iterator[OutputRecord]:
    result = lambda_min_scan(args.r, args.s)
    yield _record(
        "z4-min",
        {"r": args.r, "s": args.s},
        result,
        "exhaustive scan over canonical types",
        "formula -C(n;r,s,r,s)/(n-1)",
    )


def _require(args: argparse.Namespace, *flags: str) -> None:
    for flag in flags:
        if getattr(args, flag) is None:
            raise UsageError(
                f"--family {args.family} requires --{flag}", details={"flag": f"--{flag}"}
            )


def _chiq(args: argparse.Namespace) -> Iterator[OutputRecord]:
    if args.family == "hamming":
        _require(args, "n", "j")
        report = hamming_chiq_lb(args.n, args.j)
        inputs = {"family": "hamming", "n": args.n, "j": args.j}
    else:
        _require(args, "r", "s")
        report = z4_chiq(args.r, args.s)
        inputs = {"family": "z4", "r": args.r, "s": args.s}
    yield _record("chiq", inputs, report, "chi_q(G) >= 1 - lambda_max / lambda_min")


def _parse_alphas(raw: str | None) -> list[float] | None:
    if raw is None:
        return None
    try:
        return [float(item) for item in raw.split(",") if item.strip()]
    except ValueError as e:
        raise UsageError(
            f"--alphas expects a comma-separated list, got {raw!r}", details={"flag": "--alphas"}
        ) from e


def _table_compare(args: argparse.Namespace) -> Iterator[OutputRecord]:
    alphas = _parse_alphas(args.alphas)
    rows = lu_table(alphas)
    inputs = {"alphas": [row.alpha for row in rows]}
    yield _record(
        "table-compare",
        inputs,
        rows,
        "l: 2^h(a) / (e(1+sqrt2) sqrt(a(1-a)))^a",
        "l_displayed: 2^h(a) / (e(1+sqrt2) sqrt((1-a)/a))^a",
        "u: 2^h(1/2 - sqrt(a(1-a)))",
    )


def _verify(args: argparse.Namespace) -> Iterator[OutputRecord]:
    passed = failed = 0
    for result in run_checks(args.level):
        if result.passed:
            passed += 1
        else:
            failed += 1
        yield _record("verify", {"level": args.level}, result)
    summary = {"level": args.level, "passed": passed, "failed": failed, "ok": failed == 0}
    yield _record("verify", {"level": args.level}, summary)


HANDLERS: dict[str, Handler] = {
    "krawtchouk": _krawtchouk,
    "hamming-min": _hamming_min,
    "qpoly": _qpoly,
    "z4-spectrum": _z4_spectrum,
    "z4-min": _z4_min,
    "chiq": _chiq,
    "table-compare": _table_compare,
    "verify": _verify,
}


def build_parser() -> CliArgumentParser:
    """Build the argument parser with all subcommands."""
    common = CliArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--oracle-cap", type=int, default=None, help="brute-force length cap")
    common.add_argument("--threads", type=int, default=None, help="scan workers (0 = auto)")
    common.add_argument("--metrics-file", default=None, help="write Prometheus metrics here")
    common.add_argument(
        "--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"], default=None
    )

    parser = CliArgumentParser(prog="hamming-spectra", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=CliArgumentParser)

    p = sub.add_parser("krawtchouk", parents=[common], help="K_j(x) or the column K_j(0..n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--x", type=int, default=None)

    p = sub.add_parser("hamming-min", parents=[common], help="smallest eigenvalue of H(n,j)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, required=True)

    p = sub.add_parser("qpoly", parents=[common], help="coefficients of q_j")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--closed-form", action="store_true")

    p = sub.add_parser("z4-spectrum", parents=[common], help="eigenvalues of G(r,s)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--type", default=None, help="t0,t1,t2,t3")

    p = sub.add_parser("z4-min", parents=[common], help="smallest eigenvalue of G(r,s)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)

    p = sub.add_parser("chiq", parents=[common], help="quantum chromatic number bounds")
    p.add_argument("--family", choices=["hamming", "z4"], required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--s", type=int, default=None)

    p = sub.add_parser("table-compare", parents=[common], help="l(alpha) / u(alpha) table")
    p.add_argument("--alphas", default=None, help="comma-separated alphas")

    p = sub.add_parser("verify", parents=[common], help="run the oracle suites")
    p.add_argument("--level", choices=["quick", "full"], default="quick")

    return parser


def _snapshot_overridable() -> dict[str, int]:
    return {
        "z2_oracle_cap": settings.z2_oracle_cap,
        "z4_oracle_cap": settings.z4_oracle_cap,
        "threads": settings.threads,
    }


def _apply_overrides(args: argparse.Namespace) -> None:
    if args.oracle_cap is not None:
        logger.warning(
            "oracle_cap_override",
            oracle_cap=args.oracle_cap,
            note="brute-force runtime grows exponentially with n",
        )
        settings.z2_oracle_cap = args.oracle_cap
        settings.z4_oracle_cap = args.oracle_cap
    if args.threads is not None:
        if args.threads < 0:
            raise UsageError("--threads must be non-negative", details={"flag": "--threads"})
        settings.threads = args.threads
    settings.validate_limits()


def run(argv: Sequence[str], stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    """
    Run one subcommand.

    Args:
        argv: Arguments without the program name
        stdout: Record stream, sys.stdout by default
        stderr: Diagnostic stream, sys.stderr by default

    Returns:
        int: 0 on success, 1 on verification failure, 2 on usage or range errors
    """
    stdout = stdout or sys.stdout
    setup_logging()
    try:
        args = build_parser().parse_args(list(argv))
    except UsageError as e:
        return handle_cli_error(e, stderr)

    if args.log_level:
        setup_logging(args.log_level)
    log_with_context(run_id=uuid.uuid4().hex[:12], command=args.command)
    writer = RecordWriter(stdout, args.format)
    exit_code = EXIT_OK
    previous = _snapshot_overridable()

    try:
        _apply_overrides(args)
        logger.info("command_started", argv=list(argv))
        for record in HANDLERS[args.command](args):
            if record.command == "verify" and record.results is not None:
                ok = getattr(record.results, "passed", None)
                if ok is False:
                    exit_code = EXIT_FAILURE
            writer.write(record)
        logger.info("command_finished", exit_code=exit_code)
    except Exception as e:
        exit_code = handle_cli_error(e, stderr)
    finally:
        for key, value in previous.items():
            setattr(settings, key, value)
        if args.metrics_file:
            export_metrics(args.metrics_file)
        clear_log_context()

    return exit_code


def main() -> None:
    """Console-script entry point."""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
