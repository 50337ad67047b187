"""
Batch experiment command for mmident.

Runs every (m, n) cell for every configured regime and reports mean SHD
with its standard error, as JSON and as a plain-text table.
"""

import os
from typing import List

from ..config.models import Table1Params
from ..core.experiments import run_cell
from ..core.manifest import ManifestStore
from ..core.simdata import ExperimentRun
from ..formatting import ReportFormatters
from ..formatting.formatters import OutputFormat
from .base import CommandOutcome, CommandTool


class ExperimentTool(CommandTool):
    """Runs SHD batches over random measurement models."""

    def table1(
        self, params: Table1Params, fmt: OutputFormat = "json"
    ) -> CommandOutcome:
        return self._execute_with_logging(
            "table1", f"{params.runs} runs ({params.mode})", self._table1, params, fmt
        )

    def run_cells(self, params: Table1Params) -> List[ExperimentRun]:
        experiment = self.config.experiment
        results = []
        for m, n in experiment.cells:
            for regime in experiment.regimes:
                results.append(
                    run_cell(
                        regime,
                        m,
                        n,
                        experiment,
                        mode=params.mode,
                        runs=params.runs,
                        sem_config=self.config.sem,
                        test_config=self.config.independence,
                        threshold=self.config.independence.threshold,
                    )
                )
        return results

    def _table1(self, params: Table1Params, fmt: OutputFormat) -> str:
        if params.out:
            # refuse a claimed output before spending the batch
            ManifestStore(os.path.dirname(params.out) or ".").check_available(
                [params.out]
            )
        results = self.run_cells(params)

        if params.out:
            self._write_report(
                "table1",
                params.out,
                {"cells": results},
                {
                    "params": params,
                    "experiment": self.config.experiment,
                    "sem": self.config.sem,
                    "independence": self.config.independence,
                },
                self.config.experiment.seed,
            )

        return ReportFormatters.format_table1(results, fmt)
