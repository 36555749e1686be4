#!/usr/bin/env python3
"""
Acceptance-grid verification run.

Runs the full verification suite on every (N, level) cell of the default
grid in parallel and stores per-check results in SQLite.

Grid: N in {1, 2, 3}, level in {1..4}, with N=3 capped at level 3.

Output: outputs/acceptance/grid_results.db
"""

import sys
import time
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from twistfuse.config import DEFAULT_GRID
from twistfuse.grid import GridConfig, run_grid_verify

# Configuration
N_WORKERS = 4
OUTPUT_DIR = Path(__file__).parent.parent / "outputs" / "acceptance"


def main():
    """Run the acceptance grid."""
    print("=" * 70)
    print("Acceptance Grid")
    print("=" * 70)
    print(f"Cells: {len(DEFAULT_GRID)}")
    print(f"Workers: {N_WORKERS}")
    print(f"Output: {OUTPUT_DIR}")
    print("=" * 70)

    start_time = time.time()

    config = GridConfig(cells=list(DEFAULT_GRID), n_workers=N_WORKERS, cache_dir=OUTPUT_DIR)
    report = run_grid_verify(config)

    elapsed = time.time() - start_time
    print("=" * 70)
    print(f"Grid {'PASSED' if report.passed else 'FAILED'} in {elapsed:.1f} seconds")
    print(f"Results: {report.db_path}")
    print("=" * 70)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
