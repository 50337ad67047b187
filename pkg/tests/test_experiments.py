"""
Batch experiment tests
"""

import pytest

from src.mmident.config.models import ExperimentConfig, GeneratorConfig
from src.mmident.core.equivalence import check_assumptions
from src.mmident.core.errors import PipelineStageError
from src.mmident.core.experiments import (
    STATUS_FALLBACK,
    STATUS_OK,
    STATUS_SKELETON,
    draw_model,
    recover_with_fallbacks,
    route_for,
    run_cell,
)
from src.mmident.core.simdata import gen_random_mm, shd
from src.mmident.core.udg import oracle_udgs


class TestRouting:
    """Route choice and degraded recovery"""

    def test_route_for_regime(self):
        assert route_for("pure_child") == "pure_child"
        assert route_for("single_source") == "no_imaginary"

    def test_clean_recovery(self, pure_imaginary_model):
        model, status = recover_with_fallbacks(
            oracle_udgs(pure_imaginary_model), "pure_child", 20
        )
        assert status == STATUS_OK
        assert shd(model, pure_imaginary_model) == 0

    def test_guard_falls_back_to_no_imaginary(self, fractured_model):
        # eleven maximal valid subsets exceed a guard of five
        model, status = recover_with_fallbacks(
            oracle_udgs(fractured_model), "pure_child", 5
        )
        assert status == STATUS_FALLBACK
        assert shd(model, fractured_model) == 0

    def test_orientation_failure_keeps_the_skeleton(self, pure_imaginary_model):
        model, status = recover_with_fallbacks(
            oracle_udgs(pure_imaginary_model), "no_imaginary", 20
        )
        assert status == STATUS_SKELETON
        assert model.m == 5
        assert model.latent_pdag.directed == frozenset()
        assert model.latent_pdag.undirected == {
            (0, 1),
            (0, 4),
            (1, 4),
            (2, 3),
            (2, 4),
            (3, 4),
        }

    def test_other_stage_failures_propagate(self):
        with pytest.raises(PipelineStageError, match="clique_family"):
            recover_with_fallbacks([], "pure_child", 20)


class TestDrawModel:
    """Per-run graph draws"""

    def test_first_draw_without_assumptions(self):
        cfg = GeneratorConfig(m=3, n=5, seed=2)
        assert draw_model(cfg, 4) == gen_random_mm(cfg, 4)

    def test_first_satisfying_draw_is_kept(self):
        # H0 -> H1 with one pure child each satisfies every assumption
        cfg = GeneratorConfig(m=2, n=2, latent_edge_density=1.0)
        model = draw_model(cfg, 3, require_assumptions=True)
        assert check_assumptions(model).satisfied
        assert model == gen_random_mm(cfg, 3)


class TestRunCell:
    """Whole cells in oracle and sample modes"""

    def setup_method(self):
        self.experiment = ExperimentConfig(runs=10, seed=7, n_jobs=1)

    @pytest.mark.parametrize(
        "regime,m,n",
        [("pure_child", 2, 2), ("pure_child", 1, 2), ("single_source", 2, 2)],
    )
    def test_oracle_cells_are_exact(self, regime, m, n):
        result = run_cell(regime, m, n, self.experiment, mode="oracle")
        assert result.runs == 10
        assert result.mean == 0.0
        assert result.statuses == [STATUS_OK] * 10
        assert result.samples is None

    def test_cells_are_reproducible(self):
        first = run_cell("pure_child", 2, 3, self.experiment, mode="oracle", runs=5)
        second = run_cell("pure_child", 2, 3, self.experiment, mode="oracle", runs=5)
        assert first.per_run_shd == second.per_run_shd
        assert first.recovered_latents == second.recovered_latents

    def test_sample_mode(self):
        result = run_cell(
            "pure_child",
            1,
            2,
            self.experiment,
            mode="samples",
            runs=2,
            samples=200,
            threshold=0.3,
        )
        assert result.runs == 2
        assert result.samples == 200
        assert result.threshold == 0.3
        assert set(result.statuses) <= {STATUS_OK, STATUS_FALLBACK, STATUS_SKELETON}
        assert len(result.per_run_shd) == 2


TABLE_CELLS = [(2, 5), (3, 8), (4, 7), (4, 8)]


@pytest.mark.slow
class TestTableOne:
    """Full-size cells in both modes"""

    def setup_method(self):
        self.experiment = ExperimentConfig(runs=100, n_jobs=-1)

    @pytest.mark.parametrize("regime", ["pure_child", "single_source"])
    @pytest.mark.parametrize("m,n", TABLE_CELLS)
    def test_oracle_cells_are_exact(self, regime, m, n):
        result = run_cell(regime, m, n, self.experiment, mode="oracle")
        assert result.per_run_shd == [0] * 100

    @pytest.mark.parametrize(
        "m,n,band", [(2, 5, 0.3), (3, 8, 1.5), (4, 7, 2.5), (4, 8, 4.0)]
    )
    def test_sample_cells_stay_in_band(self, m, n, band):
        result = run_cell("pure_child", m, n, self.experiment, mode="samples")
        assert result.mean <= band
