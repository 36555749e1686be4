"""
Command-line interface.

    twistfuse [--json] [--cache-dir PATH] [--verbose] <command> ...

Exit codes: 0 success, 1 a verification gate failed, 2 usage error
(malformed or non-permissible input). `--json` prints exactly one JSON
document on stdout; logs and progress go to stderr.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

import pandas as pd

from .characters import (
    character_table,
    closed_form_diagnostics,
    quantum_dims,
)
from .config import DEFAULT_TOLERANCES, LevelContext, default_cache_dir
from .fusion import (
    fuse_module,
    general_fusion_untwisted,
    k0_square,
    verify_suite,
)
from .grid import GridConfig, run_grid_verify
from .qseries import euler_check
from .sigcore import (
    GLSignature,
    SpSignature,
    count_untwisted_basis,
    enumerate_eval_set,
    enumerate_twisted_basis,
)
from .tables import default_table_path, export_tables

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_GATE_FAILED = 1
EXIT_USAGE = 2


def _emit_json(document: dict) -> None:
    print(json.dumps(document, separators=(",", ":")))


def _emit_frame(frame: pd.DataFrame) -> None:
    print(frame.to_string(index=False) if len(frame) else "(empty)")


def _context(args) -> LevelContext:
    return LevelContext(args.n, args.level)


# ============================================================================
# Commands
# ============================================================================


def cmd_fuse(args) -> int:
    ctx = _context(args)
    f = GLSignature.parse(args.f)
    if args.target == "untwisted":
        result = general_fusion_untwisted(f, GLSignature.parse(args.g), ctx)
    else:
        result = fuse_module(f, SpSignature.parse(args.h), ctx)

    if args.json:
        _emit_json({"result": result.to_json()})
    else:
        _emit_frame(result.to_frame())
    return EXIT_OK


def cmd_dims(args) -> int:
    ctx = _context(args)
    dims = quantum_dims(ctx)
    values = dims.twisted if args.twisted else dims.untwisted
    if args.json:
        _emit_json(
            {
                "N": ctx.n,
                "level": ctx.level,
                "twisted": args.twisted,
                "C": dims.C,
                "dims": {label.key(): value for label, value in values.items()},
            }
        )
    else:
        _emit_frame(
            pd.DataFrame(
                {
                    "signature": [label.key() for label in values],
                    "quantum_dim": list(values.values()),
                }
            )
        )
        print(f"C = {dims.C:.12g}")
    return EXIT_OK


def cmd_points(args) -> int:
    ctx = _context(args)
    points = enumerate_eval_set(ctx)
    n_twisted = len(enumerate_twisted_basis(ctx))

    if args.table:
        table = character_table(ctx)
        if args.json:
            _emit_json(
                {
                    "N": ctx.n,
                    "level": ctx.level,
                    "points": [g.to_json() for g in points],
                    "signatures": list(table.columns),
                    "values": table.to_numpy().tolist(),
                }
            )
        else:
            print(table.to_string())
        return EXIT_OK

    if args.json:
        _emit_json(
            {
                "N": ctx.n,
                "level": ctx.level,
                "points": [g.to_json() for g in points],
                "twistedBasisSize": n_twisted,
                "untwistedBasisSize": count_untwisted_basis(ctx),
            }
        )
    else:
        _emit_frame(
            pd.DataFrame(
                {
                    "point": [g.key() for g in points],
                    "type": [g.type_flag for g in points],
                }
            )
        )
        print(
            f"|S| = {len(points)}, permissible twisted signatures = {n_twisted}, "
            f"untwisted basis = {count_untwisted_basis(ctx)}"
        )
    return EXIT_OK


def cmd_k0square(args) -> int:
    ctx = _context(args)
    result, record = k0_square(ctx)
    passed = record.abs_diff < DEFAULT_TOLERANCES.k0_consistency
    if args.json:
        _emit_json(
            {"result": result.to_json(), "consistency": record.to_json(), "passed": passed}
        )
    else:
        _emit_frame(result.to_frame())
        print(
            f"C^2 = {record.c_squared:.12g}, paired sum = {record.paired_sum:.12g}, "
            f"|diff| = {record.abs_diff:.3e}"
        )
    return EXIT_OK if passed else EXIT_GATE_FAILED


def cmd_verify(args) -> int:
    if args.grid:
        config = GridConfig(
            n_workers=args.workers, cache_dir=args.cache_dir or default_cache_dir()
        )
        report = run_grid_verify(config, show_progress=not args.json, quiet=args.json)
        if args.json:
            _emit_json(report.to_json())
        else:
            _emit_frame(report.to_frame()[["N", "level", "name", "passed", "residual"]])
        return EXIT_OK if report.passed else EXIT_GATE_FAILED

    ctx = _context(args)
    report = verify_suite(ctx)
    if args.json:
        _emit_json(report.to_json())
    else:
        _emit_frame(report.to_frame()[["name", "passed", "gating", "residual", "tolerance"]])
        print("PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_GATE_FAILED


def cmd_qseries(args) -> int:
    check = euler_check(args.order)
    if args.json:
        _emit_json(check.to_json())
    elif check.ok:
        print(f"OK through t^{check.order}")
    else:
        i = check.first_mismatch
        print(f"MISMATCH at t^{i}: {check.lhs.coeffs[i]} vs {check.rhs.coeffs[i]}")
    return EXIT_OK if check.ok else EXIT_GATE_FAILED


def cmd_diagnostics(args) -> int:
    report = closed_form_diagnostics(_context(args))
    if args.json:
        _emit_json(report.to_json())
    else:
        _emit_frame(report.to_frame())
    return EXIT_OK


def cmd_tables(args) -> int:
    ctx = _context(args)
    path = Path(args.out) if args.out else default_table_path(ctx, args.cache_dir)
    written = export_tables(ctx, path)
    if args.json:
        _emit_json({"N": ctx.n, "level": ctx.level, "path": str(written)})
    else:
        print(f"Fusion tables for {ctx}: {written}")
    return EXIT_OK


# ============================================================================
# Parser
# ============================================================================


def _global_flags() -> argparse.ArgumentParser:
    """Flags accepted both before and after the command."""
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument(
        "--json", action="store_true", default=argparse.SUPPRESS,
        help="print one JSON document on stdout",
    )
    flags.add_argument(
        "--cache-dir", type=Path, default=argparse.SUPPRESS,
        help="directory for fusion tables and grid results (env TWISTFUSE_CACHE)",
    )
    flags.add_argument(
        "--verbose", action="store_true", default=argparse.SUPPRESS,
        help="log progress at INFO level",
    )
    return flags


def _add_level_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, required=True, help="N, with group SU(2N)")
    parser.add_argument("--level", type=int, required=True, help="level ell >= 1")


def build_parser() -> argparse.ArgumentParser:
    flags = _global_flags()
    parser = argparse.ArgumentParser(
        prog="twistfuse",
        description="Fusion rules of LSU(2N) at level ell and its twisted module.",
        parents=[flags],
    )
    commands = parser.add_subparsers(dest="command", required=True)

    fuse = commands.add_parser("fuse", help="fuse two signatures")
    targets = fuse.add_subparsers(dest="target", required=True)
    untwisted = targets.add_parser("untwisted", parents=[flags], help="H_f [x] H_g")
    _add_level_args(untwisted)
    untwisted.add_argument("--f", required=True, help="untwisted signature, e.g. 1,0")
    untwisted.add_argument("--g", required=True, help="untwisted signature")
    module = targets.add_parser("module", parents=[flags], help="H_f [x] K_h")
    _add_level_args(module)
    module.add_argument("--f", required=True, help="untwisted signature")
    module.add_argument("--h", required=True, help="twisted signature, e.g. 1,0")
    fuse.set_defaults(handler=cmd_fuse)

    dims = commands.add_parser("dims", parents=[flags], help="quantum dimensions")
    _add_level_args(dims)
    dims.add_argument("--twisted", action="store_true", help="twisted basis d(K_h)")
    dims.set_defaults(handler=cmd_dims)

    points = commands.add_parser("points", parents=[flags], help="evaluation set")
    _add_level_args(points)
    points.add_argument("--table", action="store_true", help="print psi_h(D(g))")
    points.set_defaults(handler=cmd_points)

    k0 = commands.add_parser("k0square", parents=[flags], help="K_0 [x] K_0")
    _add_level_args(k0)
    k0.set_defaults(handler=cmd_k0square)

    verify = commands.add_parser("verify", parents=[flags], help="run all checks")
    verify.add_argument("--n", type=int, help="N (required without --grid)")
    verify.add_argument("--level", type=int, help="level (required without --grid)")
    verify.add_argument("--grid", action="store_true", help="run the acceptance grid")
    verify.add_argument("--workers", type=int, default=4, help="grid worker processes")
    verify.set_defaults(handler=cmd_verify)

    qseries = commands.add_parser("qseries", help="power-series identities")
    identities = qseries.add_subparsers(dest="identity", required=True)
    euler = identities.add_parser("euler", parents=[flags], help="distinct vs odd parts")
    euler.add_argument("--order", type=int, required=True, help="truncation order T")
    qseries.set_defaults(handler=cmd_qseries)

    diagnostics = commands.add_parser(
        "diagnostics", parents=[flags], help="direct sums vs printed closed forms"
    )
    _add_level_args(diagnostics)
    diagnostics.set_defaults(handler=cmd_diagnostics)

    tables = commands.add_parser("tables", parents=[flags], help="export fusion tables")
    _add_level_args(tables)
    tables.add_argument("--out", help="output path (default: cache directory)")
    tables.set_defaults(handler=cmd_tables)

    return parser


def run_command(argv: list[str] | None = None) -> int:
    """Parse argv, run the command and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    args.json = getattr(args, "json", False)
    args.verbose = getattr(args, "verbose", False)
    args.cache_dir = getattr(args, "cache_dir", None)

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    if args.command == "verify" and not args.grid and (args.n is None or args.level is None):
        print("error: verify needs --n and --level unless --grid is given", file=sys.stderr)
        return EXIT_USAGE

    try:
        return args.handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
