"""
Unit tests for fusion-table export and cache reuse.
"""

import json
import logging
import sys
from pathlib import Path

import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from twistfuse.config import LevelContext
from twistfuse.tables import (
    FORMAT_VERSION,
    build_tables,
    default_table_path,
    export_tables,
    is_valid_document,
)


class TestBuildTables:
    def test_n1_level1(self):
        doc = build_tables(LevelContext(1, 1))
        assert doc["format"] == FORMAT_VERSION
        assert doc["basisUntwisted"] == ["0,0", "1,0"]
        assert doc["basisTwisted"] == ["0", "1"]
        assert doc["fundamentalMatrices"] == {"1": [[0, 1], [1, 0]]}
        assert doc["moduleMatrices"] == {"1": [[0, 1], [1, 0]]}

    def test_n2_level1(self):
        doc = build_tables(LevelContext(2, 1))
        assert len(doc["basisUntwisted"]) == 4
        assert len(doc["basisTwisted"]) == 2
        assert sorted(doc["fundamentalMatrices"]) == ["1", "2", "3"]
        assert doc["moduleMatrices"]["2"] == [[1, 0], [0, 1]]

    def test_valid_document(self):
        ctx = LevelContext(1, 2)
        doc = build_tables(ctx)
        assert is_valid_document(doc, ctx)
        assert not is_valid_document(doc, LevelContext(1, 3))
        assert not is_valid_document({"format": FORMAT_VERSION}, ctx)


class TestExportTables:
    def test_writes_file(self, tmp_path):
        path = export_tables(LevelContext(1, 1), tmp_path / "t.json")
        doc = json.loads(path.read_text())
        assert doc["N"] == 1
        assert doc["level"] == 1
        assert not list(tmp_path.glob("*.tmp"))

    def test_rerun_byte_identical(self, tmp_path):
        path = tmp_path / "t.json"
        export_tables(LevelContext(2, 1), path)
        first = path.read_bytes()
        export_tables(LevelContext(2, 1), path)
        assert path.read_bytes() == first

        other = tmp_path / "u.json"
        export_tables(LevelContext(2, 1), other)
        assert other.read_bytes() == first

    def test_reuses_valid_cache(self, tmp_path, caplog):
        path = tmp_path / "t.json"
        export_tables(LevelContext(1, 2), path)
        with caplog.at_level(logging.INFO, logger="twistfuse.tables"):
            export_tables(LevelContext(1, 2), path)
        assert "Reusing" in caplog.text

    def test_checksum_mismatch_recomputes(self, tmp_path, caplog):
        ctx = LevelContext(1, 2)
        path = tmp_path / "t.json"
        export_tables(ctx, path)
        doc = json.loads(path.read_text())
        doc["checksum"] = "0" * 64
        path.write_text(json.dumps(doc))

        with caplog.at_level(logging.WARNING, logger="twistfuse.tables"):
            export_tables(ctx, path)
        assert "mismatch" in caplog.text
        assert json.loads(path.read_text())["checksum"] != "0" * 64

    def test_corrupt_file_recomputed(self, tmp_path):
        ctx = LevelContext(1, 1)
        path = tmp_path / "t.json"
        path.write_text("{not json")
        export_tables(ctx, path)
        assert is_valid_document(json.loads(path.read_text()), ctx)

    def test_io_error_names_path(self, tmp_path):
        blocker = tmp_path / "file.txt"
        blocker.write_text("x")
        target = blocker / "t.json"
        with pytest.raises(OSError, match="file.txt"):
            export_tables(LevelContext(1, 1), target)


class TestDefaultPath:
    def test_uses_cache_dir(self, tmp_path):
        path = default_table_path(LevelContext(2, 3), tmp_path)
        assert path == tmp_path / "fusion_N2_level3.json"

    def test_reads_env_at_call_time(self, monkeypatch, tmp_path):
        monkeypatch.setenv("TWISTFUSE_CACHE", str(tmp_path))
        assert default_table_path(LevelContext(1, 1)) == tmp_path / "fusion_N1_level1.json"

    def test_falls_back_to_cwd(self, monkeypatch, tmp_path):
        monkeypatch.delenv("TWISTFUSE_CACHE", raising=False)
        monkeypatch.chdir(tmp_path)
        assert default_table_path(LevelContext(1, 1)) == tmp_path / "fusion_N1_level1.json"
