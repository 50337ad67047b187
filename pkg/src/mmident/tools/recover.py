"""
Recovery command for mmident.

Reads unlabeled interventional distributions (oracle Udg JSONs, CSV
samples, or a named fixture), runs the full recovery pipeline, and
reports the recovered model together with subset diagnostics.
"""

from typing import List, Optional, Tuple

from ..config.models import RecoverParams
from ..core.fixtures import fixture_targets, get_model
from ..core.graph import MeasurementModel
from ..core.recovery import full_pipeline
from ..core.subsets import SubsetReport, subset_reports
from ..core.udg import (
    Udg,
    clique_family,
    load_sample_dir,
    load_udg_dir,
    oracle_udgs,
    udg_from_samples,
)
from ..formatting import ReportFormatters
from ..formatting.formatters import OutputFormat
from .base import CommandOutcome, CommandTool


class RecoverTool(CommandTool):
    """Runs the identification pipeline on one input set."""

    def recover(
        self, params: RecoverParams, fmt: OutputFormat = "json"
    ) -> CommandOutcome:
        target = params.fixture or params.in_dir or "-"
        return self._execute_with_logging(
            "recover", target, self._recover, params, fmt
        )

    def _load_udgs(
        self, params: RecoverParams
    ) -> Tuple[List[Udg], Optional[MeasurementModel]]:
        if params.fixture:
            truth = get_model(params.fixture)
            return oracle_udgs(truth, fixture_targets(params.fixture)), truth

        if params.mode == "oracle":
            return load_udg_dir(params.in_dir), None

        udgs = [
            udg_from_samples(matrix, params.threshold, self.config.independence)
            for matrix in load_sample_dir(params.in_dir)
        ]
        return udgs, None

    def _recover(self, params: RecoverParams, fmt: OutputFormat) -> str:
        udgs, truth = self._load_udgs(params)
        max_maximals = self.config.search.max_maximals

        model = full_pipeline(udgs, params.route, max_maximals)
        report = model.to_report(params.route)
        subsets: List[SubsetReport] = subset_reports(
            clique_family(udgs), truth, max_maximals
        )

        if params.out:
            self._write_report(
                "recover",
                params.out,
                {"model": report, "subsets": subsets},
                {"params": params, "search": self.config.search},
            )

        return ReportFormatters.format_recovered(report, subsets, fmt)
