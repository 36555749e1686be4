"""
Grid verification over many (N, level) cells.

Public API:
    GridConfig: Cells, workers and output location of a batch
    run_grid_verify: Run the verification suite on every cell
    GridReport: Aggregated pass/fail of a batch
    load_grid_results: Read a batch database back as pandas frames
"""

from .config import GridConfig
from .database import (
    create_grid_database,
    load_grid_results,
    update_batch_status,
    update_cell_status,
    write_batch_meta,
    write_cell_error,
    write_cell_registry,
    write_check_results,
)
from .executor import GridReport, execute_single_cell, run_grid_verify

__all__ = [
    # Configuration
    "GridConfig",
    # Execution
    "run_grid_verify",
    "execute_single_cell",
    "GridReport",
    # Database functions
    "create_grid_database",
    "write_batch_meta",
    "write_cell_registry",
    "update_cell_status",
    "write_check_results",
    "write_cell_error",
    "update_batch_status",
    "load_grid_results",
]
