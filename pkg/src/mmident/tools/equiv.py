"""
Equivalence command for mmident.

Thin dispatch to the equivalence operations: isolated-equivalence,
the target remapping check for isolated edges, distinguishing targets,
and maximality with assumption diagnostics.
"""

from typing import Any, Dict, Optional

from ..config.models import EquivParams
from ..core.equivalence import (
    check_assumptions,
    distinguishing_target,
    iec_class,
    iec_equivalent,
    markov_equivalent,
    maximality_check,
    theorem_remap_check,
)
from ..core.fixtures import fixture_targets, get_dag, get_model
from ..core.graph import Dag, MeasurementModel, isolated_edges, load_dag, load_model
from ..formatting import ReportFormatters
from ..formatting.formatters import OutputFormat
from .base import CommandOutcome, CommandTool


class EquivalenceTool(CommandTool):
    """Equivalence experiments on DAGs and measurement models."""

    def equiv(
        self, params: EquivParams, fmt: OutputFormat = "json"
    ) -> CommandOutcome:
        target = params.fixture or params.graph or "-"
        return self._execute_with_logging(
            f"equiv {params.action}", target, self._equiv, params, fmt
        )

    def _dag(self, path: Optional[str], fixture: Optional[str], role: str) -> Dag:
        if fixture:
            return get_dag(fixture)
        self._validate_required_params(**{role: path})
        return load_dag(path)

    def _model(self, params: EquivParams) -> MeasurementModel:
        if params.fixture:
            return get_model(params.fixture)
        self._validate_required_params(graph=params.graph)
        return load_model(params.graph)

    def _equiv(self, params: EquivParams, fmt: OutputFormat) -> str:
        handlers = {
            "iec": self._iec,
            "remap-check": self._remap_check,
            "distinguish": self._distinguish,
            "maximal": self._maximal,
        }
        result = handlers[params.action](params)
        return ReportFormatters.format_equivalence(params.action, result, fmt)

    def _iec(self, params: EquivParams) -> Dict[str, Any]:
        g1 = self._dag(params.graph, params.fixture, "graph")
        g2 = self._dag(params.other, params.other_fixture, "other")
        return {
            "iec_equivalent": iec_equivalent(g1, g2),
            "markov_equivalent": markov_equivalent(g1, g2),
            "iec_class_size": len(iec_class(g1)),
        }

    def _remap_check(self, params: EquivParams) -> Dict[str, Any]:
        g = self._dag(params.graph, params.fixture, "graph")
        max_nodes = self.config.search.max_exhaustive_nodes
        edges = [tuple(params.edge)] if params.edge else sorted(isolated_edges(g))
        checks = [
            {
                "edge": list(edge),
                "passed": theorem_remap_check(g, edge, max_nodes=max_nodes),
            }
            for edge in edges
        ]
        return {
            "isolated_edges": [list(e) for e in sorted(isolated_edges(g))],
            "checks": checks,
            "passed": all(c["passed"] for c in checks),
        }

    def _distinguish(self, params: EquivParams) -> Dict[str, Any]:
        g1 = self._dag(params.graph, params.fixture, "graph")
        g2 = self._dag(params.other, params.other_fixture, "other")
        found = distinguishing_target(
            g1, g2, max_nodes=self.config.search.max_exhaustive_nodes
        )
        return {
            "distinguishable": found is not None,
            "target": sorted(found) if found is not None else None,
        }

    def _maximal(self, params: EquivParams) -> Dict[str, Any]:
        model = self._model(params)
        targets = fixture_targets(params.fixture) if params.fixture else None
        max_latents = self.config.search.max_latents_for_latent_additions
        result = maximality_check(model, targets, max_latents)
        return {
            "maximal": result.maximal,
            "violation": result.violation._asdict() if result.violation else None,
            "latent_additions_checked": result.latent_additions_checked,
            "assumptions": check_assumptions(model, targets, max_latents),
        }
