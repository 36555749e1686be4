"""
Unit tests for package configuration.
"""

import sys
from pathlib import Path

import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from twistfuse.config import (
    DEFAULT_GRID,
    DEFAULT_TOLERANCES,
    LevelContext,
    Tolerances,
    default_cache_dir,
)


class TestLevelContext:
    def test_derived_quantities(self):
        ctx = LevelContext(2, 3)
        assert ctx.kappa == 7
        assert ctx.rank == 4
        assert str(ctx) == "N=2, level=3"

    @pytest.mark.parametrize("n,level", [(0, 1), (1, 0), (-1, 2), (1, -3)])
    def test_rejects_nonpositive(self, n, level):
        with pytest.raises(ValueError):
            LevelContext(n, level)

    @pytest.mark.parametrize("n,level", [(1.0, 1), (1, "2"), (True, 1), (1, False)])
    def test_rejects_non_integers(self, n, level):
        with pytest.raises(ValueError):
            LevelContext(n, level)

    def test_error_names_field(self):
        with pytest.raises(ValueError, match="level"):
            LevelContext(1, 0)

    def test_hashable_and_frozen(self):
        ctx = LevelContext(1, 2)
        assert {ctx: 1}[LevelContext(1, 2)] == 1
        with pytest.raises(AttributeError):
            ctx.n = 3


class TestTolerances:
    def test_defaults(self):
        assert DEFAULT_TOLERANCES.assert_abs == 1e-9
        assert DEFAULT_TOLERANCES.rounding == 1e-6
        assert DEFAULT_TOLERANCES.det_floor == 1e-9
        assert DEFAULT_TOLERANCES.cond_ceiling == 1e8
        assert DEFAULT_TOLERANCES.k0_consistency == 1e-6

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError, match="rounding"):
            Tolerances(rounding=0.0)


class TestDefaultGrid:
    def test_cells(self):
        assert len(DEFAULT_GRID) == 11
        assert (3, 4) not in DEFAULT_GRID
        assert (3, 3) in DEFAULT_GRID
        assert (1, 4) in DEFAULT_GRID


class TestCacheDir:
    def test_unset(self, monkeypatch):
        monkeypatch.delenv("TWISTFUSE_CACHE", raising=False)
        assert default_cache_dir() is None

    def test_read_on_each_call(self, monkeypatch, tmp_path):
        monkeypatch.setenv("TWISTFUSE_CACHE", str(tmp_path))
        assert default_cache_dir() == tmp_path
        monkeypatch.setenv("TWISTFUSE_CACHE", str(tmp_path / "other"))
        assert default_cache_dir() == tmp_path / "other"

    def test_empty_value_means_unset(self, monkeypatch):
        monkeypatch.setenv("TWISTFUSE_CACHE", "")
        assert default_cache_dir() is None
