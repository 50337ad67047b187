"""
Simulation command for mmident.

Draws one random measurement model, samples every distinct
interventional distribution of the complete target family, and writes
graph, data, oracle Udgs and a manifest into an output directory.
"""

import os
from typing import Dict, List

from ..config.models import SimulateParams
from ..core.graph import InterventionTarget, save_model
from ..core.manifest import ManifestStore
from ..core.simdata import gen_random_mm, make_sem, sem_sample
from ..core.udg import Udg, save_samples, save_udg, udg_from_graph
from ..formatting import ReportFormatters
from ..formatting.formatters import OutputFormat
from .base import CommandOutcome, CommandTool

GRAPH_FILE = "graph.json"


class SimulateTool(CommandTool):
    """Writes simulated interventional datasets."""

    def simulate(
        self, params: SimulateParams, fmt: OutputFormat = "json"
    ) -> CommandOutcome:
        return self._execute_with_logging(
            "simulate", params.out_dir, self._simulate, params, fmt
        )

    def _simulate(self, params: SimulateParams, fmt: OutputFormat) -> str:
        self._validate_required_params(out_dir=params.out_dir)
        generator = params.generator
        sem_config = self.config.sem
        count = params.samples or sem_config.samples

        model = gen_random_mm(generator)

        # one distribution per distinct oracle Udg; targets are not recorded
        distinct: Dict[Udg, InterventionTarget] = {}
        for t in model.complete_targets():
            distinct.setdefault(udg_from_graph(model, t), t)
        ordered = sorted(distinct, key=Udg.sort_key)

        out_dir = params.out_dir
        graph_path = os.path.join(out_dir, GRAPH_FILE)
        names = [f"dist_{k:02d}" for k in range(len(ordered))]
        csv_paths = [os.path.join(out_dir, f"{name}.csv") for name in names]
        udg_paths = [os.path.join(out_dir, f"{name}.udg.json") for name in names]
        outputs: List[str] = [graph_path] + csv_paths + udg_paths
        ManifestStore(out_dir).check_available(outputs)

        try:
            os.makedirs(out_dir, exist_ok=True)
        except OSError as e:
            raise ValueError(f"Cannot create output directory {out_dir}: {e}") from e

        spec = make_sem(model, sem_config, generator.seed)
        try:
            save_model(model, graph_path)
            for udg, csv_path, udg_path in zip(ordered, csv_paths, udg_paths):
                data = sem_sample(spec, distinct[udg], count, generator.seed)
                save_samples(data, csv_path)
                save_udg(udg, udg_path)
        except OSError as e:
            raise ValueError(
                f"Failed writing simulation output in {out_dir}: {e}"
            ) from e

        self.logger.info(
            f"Simulated m={model.m}, n={model.n} ({generator.regime}):"
            f" {len(ordered)} distinct distributions of {model.m + 1} targets"
        )
        self._record_manifest(
            "simulate",
            out_dir,
            outputs,
            {"generator": generator, "sem": sem_config, "samples": count},
            generator.seed,
        )
        return ReportFormatters.format_command_result(
            "simulate",
            out_dir,
            outputs,
            f"m={model.m}, n={model.n}, {len(ordered)} distributions, {count} samples",
            fmt,
        )
