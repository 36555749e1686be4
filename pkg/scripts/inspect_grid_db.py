"""Print batch metadata, failed checks and cell errors from a grid results database."""

import sys
from pathlib import Path

import pandas as pd

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from twistfuse.grid import load_grid_results

db_path = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("outputs/acceptance/grid_results.db")
print(f"Inspecting {db_path}")

if not db_path.exists():
    print(f"DB not found: {db_path}")
    sys.exit(1)

results = load_grid_results(db_path)
print("Batch:", results["batch_meta"])

with pd.option_context("display.width", 120, "display.max_rows", 200):
    print("\n--- Cells ---")
    print(results["registry"])

    checks = results["checks"]
    if len(checks):
        failed = checks[checks["passed"] == 0]
        print(f"\n--- Failed checks ({len(failed)} of {len(checks)}) ---")
        print(failed if len(failed) else "(none)")

    if len(results["errors"]):
        print("\n--- Cell errors ---")
        print(results["errors"])
