#!/usr/bin/env python3
"""
Lebesgue constants of the Walsh system and the van der Corput discrepancy.

Command-line front end: computes L_n by any of its routes, runs the
verification sweeps and emits plot-ready CSV or JSON on stdout.

Exit codes: 0 success, 1 verification failure, 2 usage or guard error.
"""

import argparse
import logging
import math
import sys
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

import yaml

from .asymptotics import (
    ae_probe,
    clt_profile,
    dyadic_ratio_bound,
    dyadic_t_scan,
    eventual_constancy_start,
    maximizer_alignment,
    subsequence_ratio,
)
from .config import OUTPUT_FORMATS, Config, load_config, parse_int, validate_config
from .errors import GuardError, InconsistencyError
from .exact import parse_rational
from .lebesgue import (
    average_deviation_scan,
    block_max,
    block_max_brute,
    bracket_exact,
    generating_function_coeffs,
    lebesgue_table,
    limsup_probe,
    upper_bound_check,
)
from .methods import LN_METHODS, METHODS, MethodFilter, resolve_methods
from .publishers import open_writer
from .report import FAILURE_COLUMNS, SUMMARY_COLUMNS, VerificationReport
from .transformer import (
    AE_COLUMNS,
    ALIGNMENT_COLUMNS,
    AVERAGE_COLUMNS,
    BLOCK_COLUMNS,
    CLT_COLUMNS,
    GF_COLUMNS,
    LIMSUP_COLUMNS,
    LN_COLUMNS,
    SUBSEQ_COLUMNS,
    TABLE_COLUMNS,
    Transformer,
)
from .utils.logging_setup import setup_logging
from .vdc import nonnegativity_sweep
from .verifier import Verifier

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

# Options whose value may itself start with "-", e.g. --y -1,0,1
NEGATIVE_VALUE_OPTIONS = ("--y",)


class LebesgueApp:
    """Runs one command against a loaded configuration."""

    def __init__(self, config: Config, out: Optional[str] = None):
        """
        Initialize the application.

        Args:
            config: Application configuration
            out: Output path; stdout when None
        """
        self.config = config
        self.out = out
        self.guards = config.guards
        self.transformer = Transformer(config.output)
        self.verifier = Verifier(config.guards, config.execution)

    def _emit(
        self,
        columns: list[str],
        rows: Iterable[dict[str, Any]],
        envelope: Optional[dict[str, Any]] = None,
    ) -> int:
        writer = open_writer(self.config.output.format, columns, self.out, envelope=envelope)
        try:
            for row in rows:
                writer.write(row)
        finally:
            writer.close()
        return writer.total_written

    def _emit_report(self, report: VerificationReport) -> int:
        """
        Write a verification report.

        JSON: the summary fields with the failures under "rows". CSV: the
        summary row, then the failure table after a blank line if any
        value disagreed.
        """
        if self.config.output.format == "json":
            envelope = report.to_dict()
            del envelope["failures"]
            self._emit(FAILURE_COLUMNS, (f.to_dict() for f in report.failures), envelope=envelope)
        else:
            writer = open_writer("csv", SUMMARY_COLUMNS, self.out)
            try:
                writer.write(report.summary_row())
                if report.failures:
                    writer.start_section(FAILURE_COLUMNS)
                    for failure in report.failures:
                        writer.write(failure.to_dict())
            finally:
                writer.close()
        level = logging.INFO if report.ok else logging.ERROR
        logger.log(
            level,
            f"{report.subject} {report.lo}..{report.hi}: checked {report.checked}, "
            f"{len(report.failures)} failures",
        )
        first = report.first_failure()
        if first:
            logger.error(
                f"First failure at n={first.n}: {first.method_a}={first.value_a} "
                f"vs {first.method_b}={first.value_b}"
            )
        return report.exit_code

    # ------------------------------------------------------------------
    # Commands
    # ------------------------------------------------------------------

    def cmd_ln(self, n: int, method: str) -> int:
        if method == "all":
            method_filter = MethodFilter(self.guards, LN_METHODS)
            methods = method_filter.methods_for(n)
            if not methods:
                raise GuardError("n (all methods)", n, method_filter.max_limit())
            used = {m.name for m in methods}
            for name in LN_METHODS:
                if name not in used:
                    logger.warning(
                        f"Skipping {name}: n={n} exceeds its limit {method_filter.limit(name)}"
                    )
        else:
            method_filter = MethodFilter(self.guards, [method])
            method_filter.require(n)
            methods = method_filter.methods

        values = [(m.name, m(n, self.guards)) for m in methods]
        self._emit(LN_COLUMNS, (self.transformer.ln_row(n, name, v) for name, v in values))
        logger.info(f"Method filter stats: {method_filter.get_stats()}")

        distinct = {value for _, value in values}
        if len(distinct) > 1:
            logger.error(f"Methods disagree for n={n}: {sorted(map(str, distinct))}")
            return EXIT_FAILURE
        return EXIT_OK

    def cmd_verify(self, lo: int, hi: int, methods: str) -> int:
        names = resolve_methods(methods, default_all=METHODS)
        report = self.verifier.verify(names, lo, hi)
        return self._emit_report(report)

    def cmd_table(self, N: int) -> int:
        table = lebesgue_table(N, max_n=self.guards.table_max_n)
        count = self._emit(TABLE_COLUMNS, self.transformer.table_rows(table))
        logger.info(f"Table of L_1..L_{N}: {count} rows")
        return EXIT_OK

    def cmd_scan_blocks(self, r_max: int) -> int:
        if r_max > self.guards.block_brute_max_r:
            raise GuardError("r", r_max, self.guards.block_brute_max_r)
        table = lebesgue_table(1 << r_max, max_n=self.guards.table_max_n)
        rows, mismatches = [], 0
        for r in range(1, r_max + 1):
            formula = block_max(r, max_r=self.guards.block_formula_max_r)
            brute = block_max_brute(r, max_r=self.guards.block_brute_max_r, table=table)
            row = self.transformer.block_row(formula, brute)
            if not row["match"]:
                mismatches += 1
                logger.error(f"Block r={r}: formula {row['formula_value']} at "
                             f"{row['formula_argmax']}, scan {row['brute_value']} at "
                             f"{row['brute_argmax']}")
            rows.append(row)
        self._emit(BLOCK_COLUMNS, rows)
        logger.info(f"Block maxima r=1..{r_max}: {mismatches} mismatches")
        return EXIT_FAILURE if mismatches else EXIT_OK

    def cmd_gf(self, terms: int) -> int:
        series = generating_function_coeffs(terms, max_terms=self.guards.gf_max_terms)
        table = lebesgue_table(terms, max_n=self.guards.table_max_n)
        rows = [
            self.transformer.gf_row(n, series.coefficient(n), table[n])
            for n in range(1, terms + 1)
        ]
        max_diff = max(
            abs(series.coefficient(n) - table[n].to_fraction()) for n in range(1, terms + 1)
        )
        self._emit(GF_COLUMNS, rows)
        logger.info(f"Generating function up to z^{terms}: max |diff| = {max_diff}")
        return EXIT_OK if max_diff == 0 else EXIT_FAILURE

    def cmd_clt(self, N: int, y_list: Sequence[float]) -> int:
        queries = clt_profile(N, y_list, max_n=self.guards.clt_max_n)
        self._emit(CLT_COLUMNS, (self.transformer.clt_row(q) for q in queries))
        return EXIT_OK

    def cmd_subseq(self, t: Fraction, m_max: int, align: bool) -> int:
        if align:
            if t != Fraction(1, 3):
                raise ValueError("--align is only defined for t = 1/3")
            alignments = [maximizer_alignment(m) for m in range(1, m_max + 1)]
            self._emit(ALIGNMENT_COLUMNS, (self.transformer.alignment_row(a) for a in alignments))
            misaligned = [a.m for a in alignments if not a.aligned]
            if misaligned:
                logger.error(f"d at n_t(m) differs from the block maximum for m in {misaligned}")
                return EXIT_FAILURE
            return EXIT_OK

        dyadic = t.denominator & (t.denominator - 1) == 0
        if dyadic:
            queries = dyadic_t_scan(t, m_max)
        else:
            queries = [subsequence_ratio(t, m) for m in range(1, m_max + 1)]
        self._emit(SUBSEQ_COLUMNS, (self.transformer.subseq_row(q) for q in queries))

        if dyadic and m_max >= eventual_constancy_start(t):
            bound = dyadic_ratio_bound(t, m_max)
            last = queries[-1].ratio
            logger.info(f"ratio({m_max}) = {last:.6f}, bound {bound:.6f}")
            # log(n_t) and M log 2 coincide for t = 0 up to rounding
            if last > bound * (1 + 1e-12):
                logger.error(f"ratio({m_max}) = {last} exceeds its bound {bound}")
                return EXIT_FAILURE
        return EXIT_OK

    def cmd_bounds(self, N: int, nonneg_max: int) -> int:
        table = lebesgue_table(N, max_n=self.guards.table_max_n)
        reports = [upper_bound_check(N, table=table)]
        if nonneg_max:
            reports.append(nonnegativity_sweep(nonneg_max, max_n=self.guards.sweep_max_n))
        self._emit(SUMMARY_COLUMNS, (r.summary_row() for r in reports))
        code = EXIT_OK
        for report in reports:
            for failure in report.failures[:10]:
                logger.error(
                    f"{report.subject}: n={failure.n} {failure.method_a}={failure.value_a} "
                    f"{failure.method_b}={failure.value_b}"
                )
            code = max(code, report.exit_code)
        return code

    def cmd_limsup(self, r_max: int) -> int:
        if r_max > self.guards.block_formula_max_r:
            raise GuardError("r", r_max, self.guards.block_formula_max_r)
        rows, bad = [], []
        for r in range(2, r_max + 1):
            probe, closed = limsup_probe(r), bracket_exact(r)
            # negative for even r, positive for odd r
            if (probe < 0) != (r % 2 == 0) or not math.isclose(probe, closed, rel_tol=1e-9):
                bad.append(r)
            rows.append(self.transformer.limsup_row(r, block_max(r).argmax, probe, closed))
        self._emit(LIMSUP_COLUMNS, rows)
        if bad:
            logger.error(f"limsup bracket off its closed form for r in {bad}")
            return EXIT_FAILURE
        return EXIT_OK

    def cmd_average(self, lo: int, hi: int, every: bool) -> int:
        table = lebesgue_table(hi, max_n=self.guards.table_max_n)
        deviations = average_deviation_scan(lo, hi, table=table)
        if every:
            indices = range(lo, hi + 1)
        else:
            indices = [n for n in range(lo, hi + 1) if n & (n - 1) == 0] or [lo]
        self._emit(
            AVERAGE_COLUMNS,
            (self.transformer.average_row(n, float(deviations[n - lo])) for n in indices),
        )
        logger.info(
            f"Average deviation over {lo}..{hi}: "
            f"min {deviations.min():.6f}, max {deviations.max():.6f}"
        )
        return EXIT_OK

    def cmd_ae_probe(self, samples: int, m_max: int, seed: int) -> int:
        trajectories = ae_probe(samples=samples, m_max=m_max, seed=seed)
        self._emit(
            AE_COLUMNS,
            (row for trajectory in trajectories for row in self.transformer.ae_rows(trajectory)),
        )
        return EXIT_OK


# =============================================================================
# Argument parsing
# =============================================================================


def _int_at_least(minimum: int):
    def convert(text: str) -> int:
        try:
            value = parse_int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid integer '{text}'")
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}, got {value}")
        return value

    return convert


positive_int = _int_at_least(1)
nonnegative_int = _int_at_least(0)


def rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid rational '{text}'")


def float_list(text: str) -> list[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number list '{text}'")


def _join_negative_values(argv: list[str]) -> list[str]:
    """Rewrite "--y -1,0,1" as "--y=-1,0,1" so argparse does not see an option."""
    joined, i = [], 0
    while i < len(argv):
        if argv[i] in NEGATIVE_VALUE_OPTIONS and i + 1 < len(argv):
            joined.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            joined.append(argv[i])
            i += 1
    return joined


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML configuration file")
    common.add_argument("--format", choices=sorted(OUTPUT_FORMATS), help="output format")
    common.add_argument("--digits", type=positive_int, help="decimal places")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--log-level", help="override the configured log level")

    parser = argparse.ArgumentParser(
        prog="lebesgue",
        description="Walsh Lebesgue constants and van der Corput discrepancy, exactly.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ln", parents=[common], help="compute L_n")
    p.add_argument("n", type=positive_int)
    p.add_argument("--method", default="fine", choices=[*METHODS, "all"])

    p = sub.add_parser("verify", parents=[common], help="compare methods over 1..N")
    p.add_argument("--max", dest="hi", type=positive_int, default=1024)
    p.add_argument("--min", dest="lo", type=positive_int, default=1)
    p.add_argument("--methods", default="fine,recursion,nearest-int,discrepancy")

    p = sub.add_parser("table", parents=[common], help="table of L_1..L_N")
    p.add_argument("--max", dest="N", type=positive_int, required=True)

    p = sub.add_parser("scan-blocks", parents=[common], help="block maxima, formula vs scan")
    p.add_argument("--r-max", type=positive_int, default=20)

    p = sub.add_parser("gf", parents=[common], help="generating function coefficients")
    p.add_argument("--terms", type=positive_int, default=1024)

    p = sub.add_parser("clt", parents=[common], help="central limit theorem fractions")
    p.add_argument("--N", dest="N", type=_int_at_least(4), default=1 << 22)
    p.add_argument("--y", type=float_list, default=[-1.0, 0.0, 1.0])

    p = sub.add_parser("subseq", parents=[common], help="ratios along n_t(m)")
    p.add_argument("--t", type=rational, required=True)
    p.add_argument("--m-max", type=positive_int, default=40)
    p.add_argument("--align", action="store_true", help="compare with block maxima (t = 1/3)")

    p = sub.add_parser("bounds", parents=[common], help="upper bound and nonnegativity sweeps")
    p.add_argument("--max", dest="N", type=positive_int, default=1 << 20)
    p.add_argument("--nonneg-max", type=nonnegative_int, default=1 << 12)

    p = sub.add_parser("limsup", parents=[common], help="bracket at the block maximisers")
    p.add_argument("--r-max", type=_int_at_least(2), default=40)

    p = sub.add_parser("average", parents=[common], help="mean of L_k minus log2(n)/4")
    p.add_argument("--lo", type=_int_at_least(2), default=1 << 10)
    p.add_argument("--hi", type=_int_at_least(2), default=1 << 20)
    p.add_argument("--all", dest="every", action="store_true", help="one row per n")

    p = sub.add_parser("ae-probe", parents=[common], help="ratios for pseudo-random t")
    p.add_argument("--samples", type=positive_int, default=64)
    p.add_argument("--m-max", type=positive_int, default=40)
    p.add_argument("--seed", type=nonnegative_int, default=20240101)

    return parser


def dispatch(app: LebesgueApp, args: argparse.Namespace) -> int:
    command = args.command
    if command == "ln":
        return app.cmd_ln(args.n, args.method)
    if command == "verify":
        return app.cmd_verify(args.lo, args.hi, args.methods)
    if command == "table":
        return app.cmd_table(args.N)
    if command == "scan-blocks":
        return app.cmd_scan_blocks(args.r_max)
    if command == "gf":
        return app.cmd_gf(args.terms)
    if command == "clt":
        return app.cmd_clt(args.N, args.y)
    if command == "subseq":
        return app.cmd_subseq(args.t, args.m_max, args.align)
    if command == "bounds":
        return app.cmd_bounds(args.N, args.nonneg_max)
    if command == "limsup":
        return app.cmd_limsup(args.r_max)
    if command == "average":
        if args.hi < args.lo:
            raise ValueError(f"--hi {args.hi} is below --lo {args.lo}")
        return app.cmd_average(args.lo, args.hi, args.every)
    if command == "ae-probe":
        return app.cmd_ae_probe(args.samples, args.m_max, args.seed)
    raise ValueError(f"Unknown command '{command}'")


def main(argv: Optional[list[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as e:
        # argparse exits 0 for --help and 2 for usage errors
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    # Load configuration
    try:
        config = load_config(args.config)
    except FileNotFoundError as e:
        print(f"Config not found: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, yaml.YAMLError) as e:
        print(f"Failed to load configuration: {e}", file=sys.stderr)
        return EXIT_USAGE

    if args.format:
        config.output.format = args.format
    if args.digits:
        config.output.decimal_digits = args.digits
    if args.log_level:
        config.logging.level = args.log_level.upper()

    setup_logging(
        "lebesgue",
        level=getattr(logging, config.logging.level, logging.INFO),
        log_file=config.logging.file,
    )

    # Validate configuration
    try:
        warnings = validate_config(config)
    except ValueError as e:
        logger.error(f"Invalid configuration: {e}")
        return EXIT_USAGE
    for warning in warnings:
        logger.warning(f"Config warning: {warning}")

    app = LebesgueApp(config, out=args.out)
    try:
        return dispatch(app, args)
    except GuardError as e:
        logger.warning(f"Rejected: {e}")
        return EXIT_USAGE
    except InconsistencyError as e:
        logger.error(f"Internal inconsistency: {e}")
        return EXIT_FAILURE
    except (ValueError, OSError) as e:
        logger.error(f"Error: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
