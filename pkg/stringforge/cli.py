"""
StringForge CLI Tool

Command line interface for table generation, genus solving, specialization,
verification and brute-force map counts.

Exit codes: 0 success, 1 verification failure, 2 generation failure,
3 input error.
"""

import argparse
import sys
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .config import EngineConfig, resolve_config, set_default_config
from .exceptions import StringForgeError, exit_code_for
from .genfun import closed_form_check, free_energy
from .logging import context_manager, get_logger, setup_logging
from .models import MapCountRecord, SolveReport, SpecializeReport
from .oracle import count_records, profiles_within
from .solver import build_table, check_backsubstitution, grading_check
from .specialize import Potential, f0_series, free_energy_series, leading_order_series, map_count
from .stringpoly import generate_table, verify_table
from .utils.serializers import dumps_canonical, dumps_envelope, format_fraction
from .utils.validators import parse_profile_text, validate_range
from .verify import CHECKS, run_verification

logger = get_logger(__name__)


def _emit(config: EngineConfig, command: str, result: Any, text: str) -> None:
    if config.output_format == "json":
        print(dumps_envelope(command, result))
    else:
        print(text)


def cmd_table(args: argparse.Namespace, config: EngineConfig) -> int:
    """Generate and verify the string-operator table."""
    max_weight = config.max_weight if args.max_weight is None else validate_range(args.max_weight, "max_weight", 0, 8)
    table = generate_table(max_weight, config.threads)
    failures = verify_table(table)
    report = table.to_report()
    _emit(config, "table", report, table.to_text())
    for failure in failures + report.golden_mismatches:
        logger.error("Table check failed", detail=failure)
    return 1 if failures or report.golden_mismatches else 0


def cmd_solve(args: argparse.Namespace, config: EngineConfig) -> int:
    """Solve through ``--genus`` and report the top genus."""
    g = validate_range(args.genus, "genus", min_val=1)
    strings = generate_table(2 * g + 1, config.threads)
    full = build_table(g, operators=strings.get)
    table = full.symmetric() if args.symmetric else full

    backsubstitution = {
        key: ok
        for key, ok in check_backsubstitution(full, strings.get).items()
        if key.startswith((f"N^-{2 * g} ", f"N^-{2 * g + 1} "))
    }
    grading = grading_check(table)
    energy = free_energy(g, table)
    check = closed_form_check(g, energy.closed_form, table) if g <= 2 and energy.closed_form is not None else None

    keys = [f"z{g}", f"u{2 * g}", f"u{2 * g + 1}"]
    report = SolveReport(
        genus=g,
        symmetric=args.symmetric,
        expressions=table.to_dict(keys),
        free_energy_second_derivative=energy.relation.to_text(),
        free_energy=energy.closed_form.to_text() if energy.closed_form is not None else None,
        closed_form_check=check,
        backsubstitution=backsubstitution,
        grading=grading,
    )
    lines = [f"{key} = {text}" for key, text in report.expressions.items()]
    lines.append(f"d_x^2 F{g} = {report.free_energy_second_derivative}")
    if report.free_energy is not None:
        lines.append(f"F{g} = {report.free_energy}  [{'verified' if energy.verified else 'NOT verified'}]")
    lines.extend(f"residual {key}: {'0' if ok else 'nonzero'}" for key, ok in backsubstitution.items())
    lines.extend(
        f"grading {entry.key}: {'ok' if entry.passed else 'FAILED'}" for entry in grading.entries if entry.key in keys
    )
    _emit(config, "solve", report, "\n".join(lines))

    passed = all(backsubstitution.values()) and grading.passed and (check is None or check.equal)
    return 0 if passed else 1


def _map_counts(series: Any, genus: int, potential: Potential, order: int) -> List[MapCountRecord]:
    records: List[MapCountRecord] = []
    for profile in profiles_within([j for j, _ in potential.couplings], order):
        for faces, count in map_count(series, profile, potential).items():
            records.append(
                MapCountRecord(
                    profile={str(j): n for j, n in profile.items()},
                    genus=genus,
                    faces=faces,
                    count=format_fraction(count),
                )
            )
    return records


def cmd_specialize(args: argparse.Namespace, config: EngineConfig) -> int:
    """Coupling series of u, z and the free energy of one genus."""
    potential = Potential.parse(args.potential)
    order = config.truncation_order if args.order is None else validate_range(args.order, "order", 0, 16)
    genus = validate_range(args.genus, "genus", 0, 2)
    u, z = leading_order_series(potential, order)
    series = f0_series(u, z, order) if genus == 0 else free_energy_series(potential, genus, order)
    report = SpecializeReport(
        potential=potential.text,
        genus=genus,
        order=order,
        u=u.to_records(),
        z=z.to_records(),
        free_energy=series.to_records(),
        map_counts=_map_counts(series, genus, potential, order),
    )
    lines = [f"u = {u.to_text()}", f"z = {z.to_text()}", f"F{genus} = {series.to_text()}"]
    lines.extend(
        f"{record.profile} faces={record.faces}: {record.count}" for record in report.map_counts
    )
    _emit(config, "specialize", report, "\n".join(lines))
    return 0


def cmd_verify(args: argparse.Namespace, config: EngineConfig) -> int:
    """Run the identity and property suite."""
    report = run_verification(
        only=args.only,
        m=validate_range(args.m, "m", 1, 12),
        seed=config.seed,
        max_genus=validate_range(args.max_genus, "max_genus", 1, 3),
        workers=config.threads,
        max_darts=config.max_darts,
    )
    lines = [f"{check.name}: {'pass' if check.passed else 'FAIL ' + check.detail}" for check in report.checks]
    _emit(config, "verify", report, "\n".join(lines))
    failure = report.first_failure
    if failure is not None:
        logger.error("Verification failed", check=failure.name)
        return 1
    return 0


def cmd_count_maps(args: argparse.Namespace, config: EngineConfig) -> int:
    """Brute-force counts for one vertex profile, all genera."""
    profile = parse_profile_text(args.profile)
    records = count_records(profile, config.max_darts, config.threads)
    lines = [f"genus={r.genus} faces={r.faces}: {r.count}" for r in records]
    _emit(config, "count-maps", records, "\n".join(lines) or "no maps")
    return 0


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 3)."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def create_parser() -> argparse.ArgumentParser:
    """Create command line argument parser."""
    parser = _ArgumentParser(
        prog="stringforge",
        description="Exact string equations, free energies and map counts",
    )

    parser.add_argument(
        "--version",
        action="version",
        version=f"stringforge {__version__}",
    )

    # Global options
    parser.add_argument(
        "--format",
        choices=["text", "json"],
        help="Output format (default: text)",
    )
    parser.add_argument(
        "--threads",
        type=int,
        help="Worker processes (can also use STRINGFORGE_THREADS env var)",
    )
    parser.add_argument(
        "--config",
        help="Config file with key = value lines; overrides flags",
    )
    parser.add_argument(
        "--log-level",
        help="Log level (default: WARNING)",
    )
    parser.add_argument(
        "--seed",
        type=int,
        help="Seed for the randomized checks of verify",
    )
    parser.add_argument(
        "--jet-order",
        type=int,
        help="Highest derivative order of u and z",
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    table_parser = subparsers.add_parser("table", help="Generate the string-operator table")
    table_parser.add_argument("--max-weight", type=int, help="Largest |lambda| + |eta|")
    table_parser.set_defaults(func=cmd_table)

    solve_parser = subparsers.add_parser("solve", help="Solve the string equations through a genus")
    solve_parser.add_argument("--genus", type=int, required=True, help="Top genus")
    solve_parser.add_argument("--symmetric", action="store_true", help="Specialize to u = 0")
    solve_parser.set_defaults(func=cmd_solve)

    specialize_parser = subparsers.add_parser("specialize", help="Series for a concrete potential")
    specialize_parser.add_argument("-V", "--potential", required=True, help='Potential, e.g. "0.5*l^2 + t4*l^4"')
    specialize_parser.add_argument("--genus", type=int, default=0, help="Genus of the free energy (0..2)")
    specialize_parser.add_argument("--order", type=int, help="Total coupling degree kept")
    specialize_parser.set_defaults(func=cmd_specialize)

    verify_parser = subparsers.add_parser("verify", help="Run the identity and property suite")
    verify_parser.add_argument("--only", action="append", choices=sorted(CHECKS), help="Run only this check (repeatable)")
    verify_parser.add_argument("--m", type=int, default=5, help="Largest index for the unwinding check")
    verify_parser.add_argument("--max-genus", type=int, default=2, help="Largest genus solved by the suite")
    verify_parser.set_defaults(func=cmd_verify)

    count_parser = subparsers.add_parser("count-maps", help="Brute-force map counts for a vertex profile")
    count_parser.add_argument("--profile", required=True, help='Vertex profile "valence:count,..." e.g. "4:2"')
    count_parser.set_defaults(func=cmd_count_maps)

    return parser


def _flag_values(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        "output_format": args.format,
        "threads": args.threads,
        "log_level": args.log_level,
        "seed": args.seed,
        "jet_order": args.jet_order,
    }


def _report_error(exc: BaseException, fmt: str) -> int:
    code = exit_code_for(exc)
    if fmt == "json":
        payload = exc.to_dict() if isinstance(exc, StringForgeError) else {
            "error": type(exc).__name__,
            "message": str(exc),
            "details": {},
            "exit_code": code,
        }
        print(dumps_canonical(payload), file=sys.stderr)
    else:
        print(f"error: {exc}", file=sys.stderr)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main CLI entry point; returns the exit code."""
    parser = create_parser()
    args = parser.parse_args(argv)

    if not hasattr(args, "func"):
        parser.print_help()
        return 3

    fmt = args.format or "text"
    try:
        config = resolve_config(_flag_values(args), args.config)
        fmt = config.output_format
        setup_logging(level=config.log_level)
        set_default_config(config)
        context_manager.set_context(command=args.command)
        return args.func(args, config)
    except KeyboardInterrupt:
        print("\nOperation cancelled by user.", file=sys.stderr)
        return 130
    except Exception as e:  # noqa: BLE001
        logger.error("Command failed", command=args.command, error=str(e))
        return _report_error(e, fmt)


if __name__ == "__main__":
    sys.exit(main())
