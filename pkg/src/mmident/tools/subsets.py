"""
Subset report command for mmident.

Classifies every maximal valid subset of a clique family built from a
fixture, a graph JSON, or a directory of Udg JSONs.
"""

from typing import List, Optional, Tuple

from ..config.models import SubsetsParams
from ..core.fixtures import fixture_targets, get_model
from ..core.graph import MeasurementModel, load_model
from ..core.subsets import subset_reports
from ..core.udg import Udg, clique_family, load_udg_dir, oracle_udgs
from ..formatting import ReportFormatters
from ..formatting.formatters import OutputFormat
from .base import CommandOutcome, CommandTool


class SubsetTool(CommandTool):
    """Dumps a SubsetReport per maximal valid subset."""

    def subsets(
        self, params: SubsetsParams, fmt: OutputFormat = "json"
    ) -> CommandOutcome:
        target = params.fixture or params.graph or params.in_dir or "-"
        return self._execute_with_logging(
            "subsets", target, self._subsets, params, fmt
        )

    def _source(
        self, params: SubsetsParams
    ) -> Tuple[List[Udg], Optional[MeasurementModel]]:
        if params.fixture:
            truth = get_model(params.fixture)
            return oracle_udgs(truth, fixture_targets(params.fixture)), truth
        if params.graph:
            truth = load_model(params.graph)
            return oracle_udgs(truth), truth
        if params.in_dir:
            return load_udg_dir(params.in_dir), None
        raise ValueError("One of 'fixture', 'graph' or 'in_dir' is required")

    def _subsets(self, params: SubsetsParams, fmt: OutputFormat) -> str:
        udgs, truth = self._source(params)
        reports = subset_reports(
            clique_family(udgs), truth, self.config.search.max_maximals
        )
        return ReportFormatters.format_subsets(reports, fmt)
