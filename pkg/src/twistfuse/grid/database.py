"""
SQLite results store for grid verification batches.

Tables:
- GRID_BatchMeta: one row per batch with its configuration
- GRID_CellRegistry: one row per (N, level) cell with its status
- GRID_CheckResults: one row per check of every completed cell
- GRID_CellErrors: cells whose worker raised
"""

import json
import sqlite3
from datetime import datetime
from pathlib import Path
from typing import TYPE_CHECKING

import pandas as pd

if TYPE_CHECKING:
    from ..fusion import VerifyReport
    from .config import GridConfig


SCHEMA_GRID_BATCH_META = """
CREATE TABLE IF NOT EXISTS GRID_BatchMeta (
    batch_id      TEXT PRIMARY KEY,
    n_cells       INTEGER NOT NULL,
    n_workers     INTEGER NOT NULL,
    created_at    TEXT NOT NULL,
    completed_at  TEXT,
    status        TEXT NOT NULL,  -- running/passed/failed
    config_json   TEXT NOT NULL
);
"""

SCHEMA_GRID_CELL_REGISTRY = """
CREATE TABLE IF NOT EXISTS GRID_CellRegistry (
    batch_id      TEXT NOT NULL,
    n             INTEGER NOT NULL,
    level         INTEGER NOT NULL,
    status        TEXT DEFAULT 'pending',  -- pending/passed/failed/error
    created_at    TEXT,
    completed_at  TEXT,
    duration_sec  REAL,
    PRIMARY KEY (batch_id, n, level)
);
"""

SCHEMA_GRID_CHECK_RESULTS = """
CREATE TABLE IF NOT EXISTS GRID_CheckResults (
    batch_id   TEXT NOT NULL,
    n          INTEGER NOT NULL,
    level      INTEGER NOT NULL,
    name       TEXT NOT NULL,
    passed     INTEGER NOT NULL,  -- 0/1
    gating     INTEGER NOT NULL,  -- 0/1
    residual   REAL,
    tolerance  REAL,
    detail     TEXT,
    PRIMARY KEY (batch_id, n, level, name),
    FOREIGN KEY (batch_id, n, level) REFERENCES GRID_CellRegistry(batch_id, n, level)
);
"""

SCHEMA_GRID_CELL_ERRORS = """
CREATE TABLE IF NOT EXISTS GRID_CellErrors (
    batch_id    TEXT NOT NULL,
    n           INTEGER NOT NULL,
    level       INTEGER NOT NULL,
    error_type  TEXT NOT NULL,
    error_msg   TEXT NOT NULL,
    timestamp   TEXT NOT NULL,
    PRIMARY KEY (batch_id, n, level)
);
"""


def create_grid_database(db_path: Path) -> sqlite3.Connection:
    """
    Create SQLite database with the grid schema.

    Safe to call on an existing database (uses IF NOT EXISTS).

    Returns:
        Open connection to the database
    """
    db_path = Path(db_path)
    db_path.parent.mkdir(parents=True, exist_ok=True)
    conn = sqlite3.connect(db_path)

    conn.execute(SCHEMA_GRID_BATCH_META)
    conn.execute(SCHEMA_GRID_CELL_REGISTRY)
    conn.execute(SCHEMA_GRID_CHECK_RESULTS)
    conn.execute(SCHEMA_GRID_CELL_ERRORS)

    conn.commit()
    return conn


def write_batch_meta(conn: sqlite3.Connection, config: "GridConfig") -> None:
    """Write batch metadata; call once before any cell runs."""
    conn.execute(
        """
        INSERT INTO GRID_BatchMeta
        (batch_id, n_cells, n_workers, created_at, status, config_json)
        VALUES (?, ?, ?, ?, ?, ?)
        """,
        (
            config.batch_id,
            len(config.cells),
            config.n_workers,
            datetime.now().isoformat(),
            "running",
            json.dumps(config.to_json(), indent=2),
        ),
    )
    conn.commit()


def write_cell_registry(
    conn: sqlite3.Connection, batch_id: str, cells: list[tuple[int, int]]
) -> None:
    """Pre-populate the registry with every planned cell as 'pending'."""
    now = datetime.now().isoformat()
    conn.executemany(
        """
        INSERT INTO GRID_CellRegistry (batch_id, n, level, status, created_at)
        VALUES (?, ?, ?, 'pending', ?)
        """,
        [(batch_id, n, level, now) for n, level in cells],
    )
    conn.commit()


def update_cell_status(
    conn: sqlite3.Connection,
    batch_id: str,
    cell: tuple[int, int],
    status: str,
    duration_sec: float | None = None,
) -> None:
    """
    Update status of a cell in the registry.

    Args:
        status: New status ('pending', 'passed', 'failed', 'error')
    """
    conn.execute(
        """
        UPDATE GRID_CellRegistry
        SET status = ?, completed_at = ?, duration_sec = ?
        WHERE batch_id = ? AND n = ? AND level = ?
        """,
        (status, datetime.now().isoformat(), duration_sec, batch_id, *cell),
    )
    conn.commit()


def write_check_results(
    conn: sqlite3.Connection, batch_id: str, report: "VerifyReport"
) -> None:
    """Write every check of a cell's verification report."""
    conn.executemany(
        """
        INSERT INTO GRID_CheckResults
        (batch_id, n, level, name, passed, gating, residual, tolerance, detail)
        VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)
        """,
        [
            (
                batch_id,
                report.n,
                report.level,
                check.name,
                int(check.passed),
                int(check.gating),
                check.residual,
                check.tolerance,
                check.detail,
            )
            for check in report.checks
        ],
    )
    conn.commit()


def write_cell_error(
    conn: sqlite3.Connection,
    batch_id: str,
    cell: tuple[int, int],
    error_type: str,
    error_msg: str,
) -> None:
    """Log a cell whose worker raised."""
    conn.execute(
        """
        INSERT INTO GRID_CellErrors (batch_id, n, level, error_type, error_msg, timestamp)
        VALUES (?, ?, ?, ?, ?, ?)
        """,
        (batch_id, *cell, error_type, error_msg, datetime.now().isoformat()),
    )
    conn.commit()


def update_batch_status(conn: sqlite3.Connection, batch_id: str, status: str) -> None:
    """Set the final batch status ('passed' or 'failed')."""
    conn.execute(
        """
        UPDATE GRID_BatchMeta
        SET status = ?, completed_at = ?
        WHERE batch_id = ?
        """,
        (status, datetime.now().isoformat(), batch_id),
    )
    conn.commit()


def load_batch_meta(conn: sqlite3.Connection) -> dict:
    """Load batch metadata."""
    cursor = conn.execute("SELECT * FROM GRID_BatchMeta")
    row = cursor.fetchone()
    if row is None:
        return {}

    columns = [desc[0] for desc in cursor.description]
    return dict(zip(columns, row, strict=True))


def load_grid_results(db_path: Path) -> dict:
    """
    Load all results of a grid batch database.

    Returns:
        Dictionary with keys:
            - 'batch_meta': dict with batch metadata
            - 'registry': DataFrame with one row per cell
            - 'checks': DataFrame with one row per check per cell
            - 'errors': DataFrame with worker errors

    Example:
        >>> results = load_grid_results(Path("grid_results.db"))
        >>> failed = results["checks"].query("gating == 1 and passed == 0")
    """
    conn = sqlite3.connect(db_path)

    try:
        return {
            "batch_meta": load_batch_meta(conn),
            "registry": pd.read_sql_query("SELECT * FROM GRID_CellRegistry", conn),
            "checks": pd.read_sql_query("SELECT * FROM GRID_CheckResults", conn),
            "errors": pd.read_sql_query("SELECT * FROM GRID_CellErrors", conn),
        }
    finally:
        conn.close()
