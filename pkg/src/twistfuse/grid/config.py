"""
Configuration for verification runs over a grid of (N, level) cells.
"""

from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path

from ..config import DEFAULT_GRID, LevelContext, default_cache_dir


@dataclass
class GridConfig:
    """
    Configuration for a grid verification batch.

    Attributes:
        cells: (N, level) pairs to verify; may be empty
        n_workers: Number of worker processes (1 runs in-process)
        cache_dir: Directory for fusion tables and the results database
        batch_id: Unique batch identifier (auto-generated if None)
    """

    cells: list[tuple[int, int]] = field(default_factory=lambda: list(DEFAULT_GRID))
    n_workers: int = 4
    cache_dir: Path | None = field(default_factory=default_cache_dir)
    batch_id: str | None = None

    def __post_init__(self):
        """Validate configuration and set defaults."""
        if isinstance(self.n_workers, bool) or self.n_workers <= 0:
            raise ValueError(f"n_workers must be > 0, got {self.n_workers}")

        # Normalizes and validates every cell
        self.cells = [tuple(cell) for cell in self.cells]
        for cell in self.cells:
            if len(cell) != 2:
                raise ValueError(f"grid cell must be an (N, level) pair, got {cell}")
            LevelContext(*cell)

        if len(self.cells) != len(set(self.cells)):
            duplicates = sorted({c for c in self.cells if self.cells.count(c) > 1})
            raise ValueError(f"Duplicate grid cells: {duplicates}")

        if self.batch_id is None:
            self.batch_id = f"grid_{datetime.now().strftime('%Y%m%d_%H%M%S')}"

        if self.cache_dir is not None:
            self.cache_dir = Path(self.cache_dir)

    @property
    def contexts(self) -> list[LevelContext]:
        return [LevelContext(n, level) for n, level in self.cells]

    def to_json(self) -> dict:
        return {
            "batch_id": self.batch_id,
            "cells": [list(c) for c in self.cells],
            "n_workers": self.n_workers,
            "cache_dir": str(self.cache_dir) if self.cache_dir is not None else None,
        }
