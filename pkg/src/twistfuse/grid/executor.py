"""
Parallel execution of the verification suite over a grid of (N, level) cells.

Each cell is independent and pure, so cells are farmed out to worker
processes and collected as they complete. Results optionally go to the
SQLite store in `grid.database`.
"""

import logging
import sqlite3
import sys
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path

import pandas as pd
from tqdm import tqdm

from ..config import LevelContext
from ..fusion import VerifyReport, verify_suite
from .config import GridConfig
from .database import (
    create_grid_database,
    update_batch_status,
    update_cell_status,
    write_batch_meta,
    write_cell_error,
    write_cell_registry,
    write_check_results,
)

logger = logging.getLogger(__name__)

RESULTS_DB_NAME = "grid_results.db"


def execute_single_cell(cell: tuple[int, int]) -> dict:
    """
    Verify one (N, level) cell. Called by worker processes.

    Returns:
        dict with keys:
            - cell: (N, level)
            - success: bool, False only if the suite itself raised
            - report: VerifyReport if success
            - error: str | None
            - duration_sec: float
    """
    start = time.perf_counter()
    try:
        report = verify_suite(LevelContext(*cell))
        return {
            "cell": cell,
            "success": True,
            "report": report,
            "error": None,
            "duration_sec": time.perf_counter() - start,
        }
    except Exception as e:
        return {
            "cell": cell,
            "success": False,
            "report": None,
            "error": f"{type(e).__name__}: {e}",
            "duration_sec": time.perf_counter() - start,
        }


@dataclass
class GridReport:
    """
    Aggregated result of a grid batch.

    Attributes:
        batch_id: Batch identifier
        reports: Per-cell reports in grid order
        errors: Cells whose worker raised, with the error message
        db_path: Results database, if one was written
    """

    batch_id: str
    reports: list[VerifyReport] = field(default_factory=list)
    errors: dict[tuple[int, int], str] = field(default_factory=dict)
    db_path: Path | None = None

    @property
    def passed(self) -> bool:
        return not self.errors and all(r.passed for r in self.reports)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "cells": [r.to_json() for r in self.reports],
            "errors": [
                {"N": n, "level": level, "error": msg}
                for (n, level), msg in sorted(self.errors.items())
            ],
        }

    def to_frame(self) -> pd.DataFrame:
        if not self.reports:
            return pd.DataFrame(
                columns=["N", "level", "name", "passed", "residual", "tolerance"]
            )
        return pd.concat([r.to_frame() for r in self.reports], ignore_index=True)


def _iter_results(config: GridConfig, show_progress: bool):
    cells = config.cells
    bar = tqdm(total=len(cells), desc="grid", file=sys.stderr, disable=not show_progress)
    try:
        if config.n_workers == 1:
            for cell in cells:
                result = execute_single_cell(cell)
                bar.update(1)
                yield cell, result
            return

        with ProcessPoolExecutor(max_workers=config.n_workers) as executor:
            future_to_cell = {
                executor.submit(execute_single_cell, cell): cell for cell in cells
            }
            for future in as_completed(future_to_cell):
                cell = future_to_cell[future]
                try:
                    result = future.result()
                except Exception as e:
                    result = {
                        "cell": cell,
                        "success": False,
                        "report": None,
                        "error": f"worker_exception: {e}",
                        "duration_sec": None,
                    }
                bar.update(1)
                yield cell, result
    finally:
        bar.close()


def run_grid_verify(
    config: GridConfig,
    db_path: Path | str | None = None,
    show_progress: bool = True,
    quiet: bool = False,
) -> GridReport:
    """
    Run `verify_suite` on every cell of the grid.

    Never raises on failed checks; the returned report carries them.

    Args:
        config: Grid configuration (cells, workers, cache directory)
        db_path: Results database; defaults to <cache_dir>/grid_results.db
            when config.cache_dir is set, otherwise nothing is written
        show_progress: Show a tqdm bar on stderr
        quiet: Suppress the banner blocks

    Example:
        >>> report = run_grid_verify(GridConfig(cells=[(1, 1), (2, 1)], n_workers=2))
        >>> report.passed
        True
    """
    out = sys.stderr if quiet else sys.stdout
    report = GridReport(batch_id=config.batch_id)

    if not config.cells:
        logger.warning("Empty grid in batch %s; nothing to verify", config.batch_id)
        return report

    if db_path is None and config.cache_dir is not None:
        db_path = config.cache_dir / RESULTS_DB_NAME
    conn: sqlite3.Connection | None = None
    if db_path is not None:
        report.db_path = Path(db_path)
        conn = create_grid_database(report.db_path)
        write_batch_meta(conn, config)
        write_cell_registry(conn, config.batch_id, config.cells)

    if not quiet:
        print(f"\n{'='*70}", file=out)
        print("Grid Verification", file=out)
        print(f"{'='*70}", file=out)
        print(f"Batch ID: {config.batch_id}", file=out)
        print(f"Cells: {len(config.cells)}", file=out)
        print(f"Workers: {config.n_workers}", file=out)
        print(f"Results: {report.db_path or '(not stored)'}", file=out)
        print(f"{'='*70}\n", file=out)

    by_cell: dict[tuple[int, int], VerifyReport] = {}
    try:
        for cell, result in _iter_results(config, show_progress):
            if result["success"]:
                cell_report = result["report"]
                by_cell[cell] = cell_report
                status = "passed" if cell_report.passed else "failed"
                logger.info("Cell N=%d level=%d %s", *cell, status)
                if conn is not None:
                    update_cell_status(conn, config.batch_id, cell, status, result["duration_sec"])
                    write_check_results(conn, config.batch_id, cell_report)
            else:
                report.errors[cell] = result["error"]
                logger.error("Cell N=%d level=%d raised: %s", *cell, result["error"])
                if conn is not None:
                    update_cell_status(conn, config.batch_id, cell, "error", result["duration_sec"])
                    write_cell_error(
                        conn, config.batch_id, cell, "execution_error", result["error"]
                    )

        report.reports = [by_cell[c] for c in config.cells if c in by_cell]
        if conn is not None:
            update_batch_status(
                conn, config.batch_id, "passed" if report.passed else "failed"
            )
    finally:
        if conn is not None:
            conn.close()

    n_passed = sum(1 for r in report.reports if r.passed)
    n_cells = len(config.cells)
    if not quiet:
        print(f"\n{'='*70}", file=out)
        print("Grid Summary", file=out)
        print(f"{'='*70}", file=out)
        print(f"Total cells: {n_cells}", file=out)
        print(f"Passed: {n_passed} ({n_passed/n_cells*100:.1f}%)", file=out)
        print(f"Failed: {n_cells - n_passed}", file=out)
        for r in report.reports:
            for check in r.failures:
                print(f"  N={r.n} level={r.level}: {check.name} ({check.detail})", file=out)
        for (n, level), msg in sorted(report.errors.items()):
            print(f"  N={n} level={level}: {msg}", file=out)
        print(f"Status: {'passed' if report.passed else 'failed'}", file=out)
        print(f"{'='*70}\n", file=out)

    return report
