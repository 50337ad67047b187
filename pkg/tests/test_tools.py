"""
Command tools tests
"""

import json
from unittest.mock import patch

from src.mmident.config.models import (
    Config,
    EquivParams,
    ExperimentConfig,
    GeneratorConfig,
    RecoverParams,
    SearchConfig,
    SimulateParams,
    SubsetsParams,
    Table1Params,
)
from src.mmident.core.errors import InconsistentInputError, PipelineStageError
from src.mmident.core.manifest import ManifestStore
from src.mmident.core.simdata import ExperimentRun
from src.mmident.tools.base import (
    EXIT_INPUT_ERROR,
    EXIT_INTERNAL_ERROR,
    EXIT_OK,
    CommandTool,
)
from src.mmident.tools.equiv import EquivalenceTool
from src.mmident.tools.recover import RecoverTool
from src.mmident.tools.simulate import SimulateTool
from src.mmident.tools.subsets import SubsetTool
from src.mmident.tools.table1 import ExperimentTool


def _error(outcome):
    return json.loads(outcome.error)["error"]


class TestCommandTool:
    """Error mapping shared by every command"""

    def setup_method(self):
        self.tool = CommandTool(Config())

    def test_stage_errors_report_the_cause(self):
        error = PipelineStageError(
            "algorithm2_orient", InconsistentInputError("no common latent")
        )
        outcome = self.tool._handle_error("recover", error)

        assert outcome.exit_code == EXIT_INPUT_ERROR
        assert outcome.output == ""
        details = _error(outcome)
        assert details["stage"] == "algorithm2_orient"
        assert details["type"] == "InconsistentInputError"

    def test_unexpected_errors_are_internal(self):
        outcome = self.tool._handle_error("recover", RuntimeError("boom"))
        assert outcome.exit_code == EXIT_INTERNAL_ERROR
        assert _error(outcome)["type"] == "RuntimeError"
        assert _error(outcome)["stage"] is None

    def test_required_params(self):
        outcome = self.tool._execute_with_logging(
            "demo", "-", self.tool._validate_required_params, graph="  "
        )
        assert outcome.exit_code == EXIT_INPUT_ERROR
        assert "Parameter 'graph' is required" in _error(outcome)["message"]


class TestSubsetTool:
    """Subset Tool test class"""

    def setup_method(self):
        self.tool = SubsetTool(Config())

    def test_fixture(self):
        outcome = self.tool.subsets(SubsetsParams(fixture="pure_imaginary"))
        assert outcome.exit_code == EXIT_OK
        subsets = json.loads(outcome.output)["subsets"]
        assert len(subsets) == 7
        pair = next(s for s in subsets if s["subset"] == [4, 5])
        assert pair["imaginary"] is True

    def test_text_output(self):
        outcome = self.tool.subsets(SubsetsParams(fixture="replaceable"), "text")
        assert outcome.output.startswith("Maximal valid subsets (3)")

    def test_missing_source(self):
        outcome = self.tool.subsets(SubsetsParams())
        assert outcome.exit_code == EXIT_INPUT_ERROR
        assert "is required" in _error(outcome)["message"]


class TestEquivalenceTool:
    """Equivalence Tool test class"""

    def setup_method(self):
        self.tool = EquivalenceTool(Config())

    def _run(self, **params):
        return self.tool.equiv(EquivParams(**params))

    def test_distinguish(self):
        outcome = self._run(
            action="distinguish", fixture="triangle_a", other_fixture="triangle_b"
        )
        assert outcome.exit_code == EXIT_OK
        result = json.loads(outcome.output)
        assert result["distinguishable"] is True
        assert result["target"] == [1]

    def test_iec(self):
        outcome = self._run(
            action="iec", fixture="triangle_a", other_fixture="triangle_b"
        )
        result = json.loads(outcome.output)
        assert result["iec_equivalent"] is False
        assert result["markov_equivalent"] is True
        assert result["iec_class_size"] == 2

    def test_maximal(self):
        outcome = self._run(action="maximal", fixture="non_maximal")
        result = json.loads(outcome.output)
        assert result["maximal"] is False
        assert result["violation"] == {"kind": "latent", "source": 2, "target": 0}
        assert result["assumptions"]["satisfied"] is False

    def test_remap_check(self):
        outcome = self._run(action="remap-check", fixture="imaginary_example")
        result = json.loads(outcome.output)
        assert result["isolated_edges"] == [[1, 3]]
        assert result["passed"] is True

    def test_remap_check_on_normal_edge(self):
        outcome = self._run(
            action="remap-check", fixture="imaginary_example", edge=(3, 2)
        )
        assert outcome.exit_code == EXIT_INPUT_ERROR
        assert _error(outcome)["type"] == "GraphError"

    def test_missing_other_graph(self):
        outcome = self._run(action="distinguish", fixture="triangle_a")
        assert outcome.exit_code == EXIT_INPUT_ERROR
        assert _error(outcome)["message"] == "Parameter 'other' is required"

    def test_maximal_needs_a_measurement_model(self):
        outcome = self._run(action="maximal", fixture="triangle_a")
        assert outcome.exit_code == EXIT_INPUT_ERROR
        assert "is a DAG" in _error(outcome)["message"]


class TestRecoverTool:
    """Recover Tool test class"""

    def setup_method(self):
        self.tool = RecoverTool(Config())

    def test_fixture(self):
        outcome = self.tool.recover(RecoverParams(fixture="pure_imaginary"))
        assert outcome.exit_code == EXIT_OK
        model = json.loads(outcome.output)["model"]
        assert model["covers"] == [[0, 4], [1, 5], [2, 4], [3, 5]]
        assert model["undirected"] == [[0, 1], [2, 3]]
        assert model["directed"] == []
        assert model["route"] == "pure_child"

    def test_no_imaginary_route(self):
        outcome = self.tool.recover(
            RecoverParams(fixture="fractured_real", route="no_imaginary")
        )
        assert json.loads(outcome.output)["model"]["m"] == 5

    def test_orientation_failure(self):
        outcome = self.tool.recover(
            RecoverParams(fixture="pure_imaginary", route="no_imaginary")
        )
        assert outcome.exit_code == EXIT_INPUT_ERROR
        details = _error(outcome)
        assert details["command"] == "recover"
        assert details["stage"] == "algorithm2_orient"
        assert details["type"] == "InconsistentInputError"

    def test_search_guard_from_config(self):
        tool = RecoverTool(Config(search=SearchConfig(max_maximals=2)))
        outcome = tool.recover(RecoverParams(fixture="pure_imaginary"))
        assert outcome.exit_code == EXIT_INPUT_ERROR
        assert _error(outcome)["stage"] == "bipartite_pure_child"
        assert _error(outcome)["type"] == "SearchGuardExceeded"

    def test_output_is_claimed_once(self, tmp_path):
        out = str(tmp_path / "model.json")
        params = RecoverParams(fixture="replaceable", out=out)

        assert self.tool.recover(params).exit_code == EXIT_OK
        written = json.loads((tmp_path / "model.json").read_text(encoding="utf-8"))
        assert written["model"]["covers"] == [[0, 1], [1, 2]]
        assert ManifestStore(str(tmp_path)).find_by_output(out).command == "recover"

        again = self.tool.recover(params)
        assert again.exit_code == EXIT_INPUT_ERROR
        assert "already exists" in _error(again)["message"]

    def test_missing_directory(self, tmp_path):
        outcome = self.tool.recover(RecoverParams(in_dir=str(tmp_path / "none")))
        assert outcome.exit_code == EXIT_INPUT_ERROR
        assert _error(outcome)["type"] == "FileNotFoundError"


class TestSimulateTool:
    """Simulate Tool test class"""

    def setup_method(self):
        self.tool = SimulateTool(Config())

    def _params(self, out_dir):
        # one latent with two children: both targets give the same Udg
        return SimulateParams(
            out_dir=out_dir, generator=GeneratorConfig(m=1, n=2, seed=4), samples=50
        )

    def test_simulate_then_recover(self, tmp_path):
        out_dir = str(tmp_path / "sim")
        outcome = self.tool.simulate(self._params(out_dir))
        assert outcome.exit_code == EXIT_OK

        result = json.loads(outcome.output)
        assert len(result["outputs"]) == 3
        assert (tmp_path / "sim" / "graph.json").exists()
        assert (tmp_path / "sim" / "dist_00.csv").exists()
        manifest = ManifestStore(out_dir).list_manifests()[0]
        assert manifest.command == "simulate"
        assert manifest.seed == 4

        recover = RecoverTool(Config())
        oracle = recover.recover(RecoverParams(in_dir=out_dir))
        assert json.loads(oracle.output)["model"]["covers"] == [[0, 1]]

        samples = recover.recover(
            RecoverParams(in_dir=out_dir, mode="samples", threshold=0.3)
        )
        assert samples.exit_code == EXIT_OK

    def test_outputs_are_not_overwritten(self, tmp_path):
        out_dir = str(tmp_path / "sim")
        assert self.tool.simulate(self._params(out_dir)).exit_code == EXIT_OK
        again = self.tool.simulate(self._params(out_dir))
        assert again.exit_code == EXIT_INPUT_ERROR
        assert "already exists" in _error(again)["message"]


class TestExperimentTool:
    """Experiment Tool test class"""

    def _tool(self, **experiment):
        return ExperimentTool(Config(experiment=ExperimentConfig(**experiment)))

    def test_runs_every_cell_and_regime(self):
        tool = self._tool(cells=[(2, 2), (2, 3)])
        fake = ExperimentRun.summarize(
            [0] * 10, m=2, n=2, regime="pure_child", mode="oracle", seed=0
        )
        with patch(
            "src.mmident.tools.table1.run_cell", return_value=fake
        ) as run_cell:
            results = tool.run_cells(Table1Params(runs=10, mode="oracle"))

        assert len(results) == 4
        assert run_cell.call_count == 4
        assert run_cell.call_args.kwargs["runs"] == 10

    def test_oracle_batch_with_output(self, tmp_path):
        tool = self._tool(cells=[(2, 2)], regimes=["pure_child"])
        out = str(tmp_path / "table1.json")
        params = Table1Params(runs=10, mode="oracle", out=out)

        outcome = tool.table1(params)
        assert outcome.exit_code == EXIT_OK
        cells = json.loads(outcome.output)["cells"]
        assert len(cells) == 1
        assert cells[0]["mean"] == 0.0
        assert (tmp_path / "table1.json").exists()

        with patch("src.mmident.tools.table1.run_cell") as run_cell:
            again = tool.table1(params)
        assert again.exit_code == EXIT_INPUT_ERROR
        run_cell.assert_not_called()
