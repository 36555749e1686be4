"""
Black-box tests of the command-line surface through run_command.
"""

import json
import sys
from pathlib import Path
from unittest.mock import patch

import numpy as np
import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from twistfuse.cli import EXIT_GATE_FAILED, EXIT_OK, EXIT_USAGE, run_command

pytestmark = pytest.mark.integration


def run_json(capsys, argv):
    code = run_command(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestFuse:
    def test_untwisted_json(self, capsys):
        code = run_command(
            ["fuse", "untwisted", "--n", "1", "--level", "1", "--f", "1,0", "--g", "1,0", "--json"]
        )
        assert code == EXIT_OK
        assert capsys.readouterr().out.strip() == '{"result":{"0,0":1}}'

    def test_module_json(self, capsys):
        code = run_command(
            ["fuse", "module", "--n", "2", "--level", "1", "--f", "1,0,0,0", "--h", "1,0", "--json"]
        )
        assert code == EXIT_OK
        assert capsys.readouterr().out.strip() == '{"result":{"0,0":1}}'

    def test_global_flag_before_command(self, capsys):
        code, doc = run_json(
            capsys,
            ["--json", "fuse", "untwisted", "--n", "1", "--level", "2", "--f", "1,0", "--g", "1,0"],
        )
        assert code == EXIT_OK
        assert doc == {"result": {"0,0": 1, "2,0": 1}}

    def test_human_output(self, capsys):
        code = run_command(
            ["fuse", "untwisted", "--n", "1", "--level", "2", "--f", "1,0", "--g", "1,0"]
        )
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "signature" in out and "2,0" in out

    @pytest.mark.parametrize(
        "f,message",
        [("1,a", "malformed signature"), ("0,1", "weakly decreasing"), ("2,0", "not permissible")],
    )
    def test_bad_signature_exit_2(self, capsys, f, message):
        code = run_command(
            ["fuse", "untwisted", "--n", "1", "--level", "1", "--f", f, "--g", "0,0"]
        )
        assert code == EXIT_USAGE
        assert message in capsys.readouterr().err

    def test_wrong_length_exit_2(self, capsys):
        code = run_command(
            ["fuse", "module", "--n", "2", "--level", "1", "--f", "1,0,0,0", "--h", "1"]
        )
        assert code == EXIT_USAGE


class TestOtherCommands:
    def test_dims(self, capsys):
        code, doc = run_json(capsys, ["dims", "--n", "2", "--level", "1", "--twisted", "--json"])
        assert code == EXIT_OK
        assert doc["C"] == pytest.approx(2**0.5)
        assert list(doc["dims"]) == ["0,0", "1,0"]

    def test_points(self, capsys):
        code, doc = run_json(capsys, ["points", "--n", "2", "--level", "2", "--json"])
        assert code == EXIT_OK
        assert doc["twistedBasisSize"] == len(doc["points"]) == 4
        assert doc["points"][-1] == {"doubled": [1, 1], "type": "half-integral"}

    def test_points_table(self, capsys):
        code, doc = run_json(capsys, ["points", "--n", "1", "--level", "1", "--table", "--json"])
        assert code == EXIT_OK
        assert np.allclose(doc["values"], [[1, 1], [1, -1]])

    def test_k0square(self, capsys):
        code, doc = run_json(capsys, ["k0square", "--n", "2", "--level", "1", "--json"])
        assert code == EXIT_OK
        assert doc["result"] == {"0,0,0,0": 1, "1,1,0,0": 1}
        assert doc["consistency"]["cSquared"] == pytest.approx(2.0)

    def test_verify(self, capsys):
        code, doc = run_json(capsys, ["verify", "--n", "1", "--level", "1", "--json"])
        assert code == EXIT_OK
        assert doc["passed"] is True

    def test_verify_needs_cell(self, capsys):
        assert run_command(["verify"]) == EXIT_USAGE

    def test_qseries(self, capsys):
        code = run_command(["qseries", "euler", "--order", "5"])
        assert code == EXIT_OK
        assert capsys.readouterr().out.strip() == "OK through t^5"

    def test_qseries_bad_order(self, capsys):
        assert run_command(["qseries", "euler", "--order", "0"]) == EXIT_USAGE

    def test_diagnostics_never_fails(self, capsys):
        code, doc = run_json(capsys, ["diagnostics", "--n", "1", "--level", "1", "--json"])
        assert code == EXIT_OK
        assert len(doc["pairs"]) == 4

    def test_tables(self, capsys, tmp_path):
        out = tmp_path / "tables.json"
        code = run_command(["tables", "--n", "1", "--level", "1", "--out", str(out)])
        assert code == EXIT_OK
        first = out.read_bytes()
        assert run_command(["tables", "--n", "1", "--level", "1", "--out", str(out)]) == EXIT_OK
        assert out.read_bytes() == first

    def test_tables_cache_dir(self, capsys, tmp_path):
        code = run_command(
            ["--cache-dir", str(tmp_path), "tables", "--n", "2", "--level", "1"]
        )
        assert code == EXIT_OK
        assert (tmp_path / "fusion_N2_level1.json").exists()

    def test_deterministic_output(self, capsys):
        argv = ["k0square", "--n", "2", "--level", "2", "--json"]
        run_command(argv)
        first = capsys.readouterr().out
        run_command(argv)
        assert capsys.readouterr().out == first

    def test_grid_json_deterministic(self, capsys, tmp_path):
        argv = ["--json", "--cache-dir", str(tmp_path), "verify", "--grid", "--workers", "1"]
        with patch("twistfuse.grid.config.DEFAULT_GRID", ((1, 1), (2, 1))):
            assert run_command(argv) == EXIT_OK
            first = capsys.readouterr().out
            with patch("twistfuse.grid.config.datetime") as clock:
                clock.now.return_value.strftime.return_value = "19990101_000000"
                assert run_command(argv) == EXIT_OK
            second = capsys.readouterr().out
        assert first == second
        assert "batch_id" not in json.loads(first)


class TestUsage:
    def test_unknown_command(self, capsys):
        assert run_command(["frobnicate"]) == EXIT_USAGE

    def test_missing_argument(self, capsys):
        assert run_command(["dims", "--n", "1"]) == EXIT_USAGE

    def test_invalid_level(self, capsys):
        assert run_command(["dims", "--n", "1", "--level", "0"]) == EXIT_USAGE

    def test_help(self, capsys):
        assert run_command(["--help"]) == EXIT_OK

    def test_gate_exit_code_constant(self):
        assert EXIT_GATE_FAILED == 1
