"""
Command-line harness tests
"""

import io
import json
from unittest.mock import patch

from src.mmident.config.models import Config
from src.mmident.core.experiments import draw_model
from src.mmident.harness import build_parser, run


def _run(argv):
    stdout, stderr = io.StringIO(), io.StringIO()
    code = run(argv, stdout, stderr)
    return code, stdout.getvalue(), stderr.getvalue()


class TestHarness:
    """argv to exit code"""

    def test_fixtures_listing(self):
        code, out, err = _run(["fixtures"])
        assert code == 0
        assert err == ""
        listing = json.loads(out)
        assert "pure_imaginary" in listing
        assert listing["replaceable"] == "{X1} is a replaceable subset"

    def test_missing_command(self):
        code, out, err = _run([])
        assert code == 1
        assert out == ""
        assert json.loads(err)["error"]["command"] == "mmident"

    def test_invalid_choice(self):
        code, _, err = _run(["recover", "--fixture", "nowhere"])
        assert code == 1
        assert "invalid choice" in json.loads(err)["error"]["message"]

    def test_recover_needs_a_source(self):
        code, _, err = _run(["recover"])
        assert code == 1
        error = json.loads(err)["error"]
        assert error["command"] == "recover"
        assert "Either 'in_dir' or 'fixture'" in error["message"]

    def test_text_format(self):
        code, out, _ = _run(["--format", "text", "subsets", "--fixture", "replaceable"])
        assert code == 0
        assert out.startswith("Maximal valid subsets (3)")

    def test_equiv_distinguish(self):
        code, out, _ = _run(
            [
                "equiv",
                "distinguish",
                "--fixture",
                "triangle_a",
                "--other-fixture",
                "triangle_b",
            ]
        )
        assert code == 0
        assert json.loads(out)["target"] == [1]

    def test_missing_config_file(self, tmp_path):
        code, _, err = _run(["--config", str(tmp_path / "absent.json"), "fixtures"])
        assert code == 1
        assert json.loads(err)["error"]["type"] == "FileNotFoundError"

    def test_table1_from_config(self, config_file, oracle_batch_config):
        path = config_file(oracle_batch_config)
        code, out, _ = _run(["--config", path, "table1"])
        assert code == 0
        cells = json.loads(out)["cells"]
        assert [(c["m"], c["n"], c["mode"]) for c in cells] == [(2, 2, "oracle")]
        assert cells[0]["mean"] == 0.0

        code, out, _ = _run(["--config", path, "--format", "text", "table1"])
        assert code == 0
        assert out.startswith("SHD over 10 runs (oracle)")

    def test_table1_minimum_runs(self, config_file):
        path = config_file({"experiment": {"mode": "oracle"}})
        code, _, err = _run(["--config", path, "table1", "--runs", "5"])
        assert code == 1
        assert json.loads(err)["error"]["type"] == "ValidationError"

    def test_simulate_flags(self, tmp_path):
        out_dir = str(tmp_path / "sim")
        argv = ["simulate", "--out-dir", out_dir, "--m", "1", "--n", "2"]
        code, out, _ = _run(argv + ["--samples", "30", "--seed", "2"])
        assert code == 0
        assert json.loads(out)["target"] == out_dir

    def test_parser_defaults(self):
        args = build_parser().parse_args(["recover", "--fixture", "replaceable"])
        assert args.format == "json"
        assert args.route == "pure_child"
        assert args.mode == "oracle"

    def test_require_assumptions_flag(self):
        parser = build_parser()
        assert parser.parse_args(["table1"]).require_assumptions is None
        args = parser.parse_args(["table1", "--no-require-assumptions"])
        assert args.require_assumptions is False
        assert Config().experiment.require_assumptions is True

    def test_require_assumptions_reaches_the_draws(
        self, config_file, oracle_batch_config
    ):
        path = config_file(oracle_batch_config)
        with patch(
            "src.mmident.core.experiments.draw_model", wraps=draw_model
        ) as spy:
            code, _, _ = _run(["--config", path, "table1", "--no-require-assumptions"])
        assert code == 0
        assert spy.call_count == 10
        assert all(call.args[2] is False for call in spy.call_args_list)
