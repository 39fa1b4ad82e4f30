"""Command-line entry point: ``zgb``."""

from __future__ import annotations

import argparse
import logging
import sys
import time
from collections.abc import Sequence
from pathlib import Path

from app.tables import (
    BOUND_COLUMNS,
    FORMATS,
    TABLES,
    RunManifest,
    Table,
    bound_row,
    build_table,
    fraction_text,
    render,
)
from app.verify import SUITE_ALIASES, Suite, run_suite
from bounds.gap_bounds import (
    VARIANT_ALIASES,
    BoundResult,
    Variant,
    compare_with_literature,
    hall_reference,
    lambda_boyd_unconditional,
    lambda_full,
    lambda_mixed,
    lambda_wirtinger_unconditional,
    literature_bounds,
    mixed_discrepancy,
)
from constants.cache import CoefficientCache
from constants.moments import MomentBudgetError, audit_monic_denominator, c_of_k
from core.config import config
from zlab.moments import MomentKind, moment_integral
from zlab.scan import (
    FINITE_RANGE_LABEL,
    GapSummary,
    ScanConfig,
    ZeroScanner,
    count_constant,
    import_zero_table,
    match_zero_table,
    write_zero_csv,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

BOUND_METHODS = (
    "unconditional-wirtinger",
    "unconditional-boyd",
    "mixed",
    "full",
    "hall",
    "literature",
)


def _emit(text: str, output: Path | None, manifest: RunManifest) -> None:
    if output is None:
        print(text, end="")
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text, encoding="utf-8")
    manifest.outputs.append(str(output))
    print(f"Wrote {output}")


def cmd_tables(args: argparse.Namespace, cache: CoefficientCache) -> int:
    manifest = RunManifest("tables", {"which": args.which, "format": args.format})
    table = build_table(
        args.which, manifest, args.tolerance, allow_long=args.long, cache=cache
    )
    _emit(render(table, args.format, manifest), args.output, manifest)
    return EXIT_OK if table.all_pass else EXIT_FAILED


def _bound(args: argparse.Namespace, cache: CoefficientCache) -> list[BoundResult]:
    if args.method == "unconditional-wirtinger":
        return [lambda_wirtinger_unconditional()]
    if args.method == "unconditional-boyd":
        return [lambda_boyd_unconditional()]
    if args.method == "hall":
        return [hall_reference()]
    if args.method == "literature":
        return literature_bounds()
    if args.k is None:
        raise ValueError(f"--k is required for method {args.method}")
    if args.method == "full":
        return [lambda_full(args.k, allow_long=args.long, cache=cache)]
    if args.h is None:
        raise ValueError("--h is required for method mixed")
    return [lambda_mixed(args.h, args.k, Variant(args.variant))]


def cmd_bound(args: argparse.Namespace, cache: CoefficientCache) -> int:
    manifest = RunManifest(
        "bound",
        {
            name: str(value)
            for name, value in (
                ("method", args.method),
                ("k", args.k),
                ("h", args.h),
                ("variant", Variant(args.variant).value),
            )
            if value is not None
        },
    )
    results = _bound(args, cache)
    table = Table("bound", BOUND_COLUMNS, [bound_row(r) for r in results])
    for result in results:
        manifest.note(f"{result.method.value}: {result.provenance.value}")

    if args.method == "mixed":
        discrepancy = mixed_discrepancy(args.h, args.k)
        other = (
            discrepancy.derived
            if Variant(args.variant) is Variant.PUBLISHED
            else discrepancy.published
        )
        table.rows.append(bound_row(other))
        manifest.note(f"discrepancy: {discrepancy.describe()}")
    if args.compare:
        for result in results:
            comparison = compare_with_literature(result)
            best = comparison.best_prior
            verdict = "improves on" if comparison.improves else "does not improve on"
            prior = "nothing" if best is None else f"{best.label} ({best.value:g})"
            manifest.note(f"{result.method.value} {result.value:.4f} {verdict} {prior}")

    _emit(render(table, args.format, manifest), args.output, manifest)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, cache: CoefficientCache) -> int:
    suite = Suite(args.suite)
    report = run_suite(suite, cache=cache)
    manifest = RunManifest("verify", {"suite": suite.value})
    _emit(report.render(), args.output, manifest)
    print(f"elapsed: {report.wall_time:.1f}s", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_zeros(args: argparse.Namespace, cache: CoefficientCache) -> int:
    scan_config = ScanConfig(
        t_start=args.t_start,
        t_end=args.t_end,
        grid_points_per_mean_spacing=args.density or config.scan.grid_density,
        bisection_tolerance=args.tol or config.scan.bisection_tol,
    )
    report = ZeroScanner().scan(scan_config, workers=args.workers)
    records = report.records
    manifest = RunManifest(
        "zeros", {"t_start": f"{args.t_start:g}", "t_end": f"{args.t_end:g}"}
    )
    if args.output is not None:
        write_zero_csv(records, args.output)
        manifest.outputs.append(str(args.output))
        print(f"Wrote {args.output}")

    print(f"zeros: {len(records)}")
    if len(records) >= 2:
        summary = GapSummary.from_records(records)
        print(
            f"normalized gap: min {summary.minimum:.4f} mean {summary.mean:.4f} "
            f"max {summary.maximum:.4f} std {summary.std:.4f}"
        )
        print(
            f"unfolded gap: mean {summary.mean_unfolded:.4f} "
            f"max {summary.max_unfolded:.4f}"
        )
        print(f"({FINITE_RANGE_LABEL})")
    if args.t_start <= 14.0:
        print(f"count constant C: {count_constant(records, args.t_end):.3f}")
    for gap in report.coverage_gaps:
        print(f"coverage gap: [{gap.t_lo:.6f}, {gap.t_hi:.6f}] {gap.reason}")

    status = EXIT_FAILED if report.coverage_gaps else EXIT_OK
    if args.table is not None:
        table = import_zero_table(args.table.read_bytes())
        in_range = [t for t in table if args.t_start <= t <= args.t_end]
        mismatches = match_zero_table(records, in_range)
        print(
            f"zero table: {len(in_range)} ordinates in range, "
            f"{len(mismatches)} unmatched"
        )
        if mismatches:
            status = EXIT_FAILED
    return status


def cmd_moments(args: argparse.Namespace, cache: CoefficientCache) -> int:
    estimate = moment_integral(MomentKind(args.kind), args.T, grid_density=args.density)
    manifest = RunManifest("moments", {"kind": args.kind, "T": f"{args.T:g}"})
    for note in estimate.notes:
        manifest.note(note)
    row = {
        "kind": estimate.kind.value,
        "T": f"{estimate.T:g}",
        "integral": f"{estimate.integral:.6e}",
        "predicted_leading": f"{estimate.predicted_leading:.6e}",
        "ratio": f"{estimate.ratio:.6f}",
        "provenance": "computed",
    }
    table = Table("moments", tuple(row), [row])
    _emit(render(table, args.format, manifest), args.output, manifest)
    return EXIT_OK


def cmd_cache(args: argparse.Namespace, cache: CoefficientCache) -> int:
    if args.action == "list":
        for record in cache.entries():
            print(
                f"c({record['k']}) [{record['order_mode']}/{record['m_range']}] "
                f"{record['numerator']}/{record['denominator']} "
                f"({record['wall_time']}s)"
            )
        return EXIT_OK
    if args.action == "clear":
        print(f"Removed {cache.clear()} record(s) from {cache.root}")
        return EXIT_OK
    if args.k is None:
        raise ValueError("--k is required for cache compute")
    value = c_of_k(args.k, allow_long=args.long, workers=args.workers, cache=cache)
    print(f"c({args.k}) = {fraction_text(value)}")
    return EXIT_OK


def cmd_audit(args: argparse.Namespace, cache: CoefficientCache) -> int:
    rows = []
    selected = args.h or list(range(1, 8))
    for h in selected:
        audit = audit_monic_denominator(h)
        for factor in audit.factors:
            rows.append(
                {
                    "h": str(h),
                    "a": str(factor.a),
                    "predicted": str(factor.predicted),
                    "actual": str(factor.actual),
                    "match": "yes" if factor.matches else "no",
                }
            )
        if not audit.consistent:
            print(f"H({h},k): " + "; ".join(audit.adjustment()), file=sys.stderr)
    manifest = RunManifest("audit", {"h": ",".join(str(h) for h in selected)})
    manifest.note("exponents of (K^2 - a^2): integer part of 4h/(a + sqrt(a^2 + 8h))")
    table = Table("audit", ("h", "a", "predicted", "actual", "match"), rows)
    _emit(render(table, args.format, manifest), args.output, manifest)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="markdown")
    common.add_argument("--cache-dir", type=Path, default=None)
    common.add_argument("--output", type=Path, default=None)
    common.add_argument(
        "--long", action="store_true", help="allow long-running enumeration"
    )
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="zgb", description="Zeta zero gap bounds toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    tables = sub.add_parser(
        "tables", parents=[common], help="reproduce a published table"
    )
    tables.add_argument("which", choices=TABLES)
    tables.add_argument("--tolerance", type=float, default=None)
    tables.set_defaults(handler=cmd_tables)

    bound = sub.add_parser("bound", parents=[common], help="compute one lower bound")
    bound.add_argument("method", choices=BOUND_METHODS)
    bound.add_argument("--k", type=int, default=None)
    bound.add_argument("--h", type=int, default=None)
    bound.add_argument(
        "--variant",
        choices=[*(v.value for v in Variant), *VARIANT_ALIASES],
        default="published",
    )
    bound.add_argument(
        "--compare", action="store_true", help="compare with prior bounds"
    )
    bound.set_defaults(handler=cmd_bound)

    verify = sub.add_parser("verify", parents=[common], help="run a verification suite")
    verify.add_argument(
        "--suite", choices=[*(s.value for s in Suite), *SUITE_ALIASES], default="quick"
    )
    verify.set_defaults(handler=cmd_verify)

    zeros = sub.add_parser("zeros", parents=[common], help="scan for zeros of Z")
    zeros.add_argument("--t-start", type=float, default=10.0)
    zeros.add_argument("--t-end", type=float, required=True)
    zeros.add_argument("--density", type=int, default=None)
    zeros.add_argument("--tol", type=float, default=None)
    zeros.add_argument("--workers", type=int, default=1)
    zeros.add_argument("--table", type=Path, default=None, help="zero table to match")
    zeros.set_defaults(handler=cmd_zeros)

    moments = sub.add_parser("moments", parents=[common], help="numerical moment of Z")
    moments.add_argument("kind", choices=[k.value for k in MomentKind])
    moments.add_argument("--T", type=float, required=True)
    moments.add_argument("--density", type=int, default=None)
    moments.set_defaults(handler=cmd_moments)

    cache = sub.add_parser("cache", parents=[common], help="manage cached c(k) values")
    cache.add_argument("action", choices=("list", "compute", "clear"))
    cache.add_argument("--k", type=int, default=None)
    cache.add_argument("--workers", type=int, default=None)
    cache.set_defaults(handler=cmd_cache)

    audit = sub.add_parser("audit", parents=[common], help="monic denominator audit")
    audit.add_argument("--h", type=int, action="append", default=None)
    audit.set_defaults(handler=cmd_audit)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI; returns 0 on success, 1 on failed checks, 2 on usage errors."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose > 1:
        level: int | str = logging.DEBUG
    elif args.verbose:
        level = logging.INFO
    else:
        level = config.log_level
    logging.basicConfig(
        level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr
    )

    cache = CoefficientCache(args.cache_dir or config.cache_dir)
    started = time.perf_counter()
    try:
        status: int = args.handler(args, cache)
    except (ValueError, MomentBudgetError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (RuntimeError, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED
    elapsed = time.perf_counter() - started
    logging.getLogger("zgb").info("%s finished in %.2fs", args.command, elapsed)
    return status


if __name__ == "__main__":
    sys.exit(main())
