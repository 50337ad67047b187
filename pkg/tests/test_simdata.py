"""
Simulation and scoring tests
"""

import numpy as np
import pytest

from src.mmident.config.models import GeneratorConfig, SemConfig
from src.mmident.core.equivalence import has_pure_children, latent_sources
from src.mmident.core.errors import GraphError
from src.mmident.core.fixtures import get_dag
from src.mmident.core.graph import Dag, MeasurementModel, target
from src.mmident.core.independence import calibrated_cutoff, symmetric_xi
from src.mmident.core.recovery import LatentPdag, RecoveredModel
from src.mmident.core.simdata import (
    ExperimentRun,
    SemSpec,
    canonical_model,
    gen_random_mm,
    make_sem,
    sem_sample,
    shd,
)


class TestGenerator:
    """Random measurement models"""

    def test_same_key_same_model(self):
        cfg = GeneratorConfig(m=3, n=6, seed=11)
        assert gen_random_mm(cfg, run=2) == gen_random_mm(cfg, run=2)

    def test_every_latent_has_a_pure_child(self):
        cfg = GeneratorConfig(m=4, n=8, seed=3, bipartite_extra_density=0.9)
        for run in range(10):
            model = gen_random_mm(cfg, run)
            assert has_pure_children(model)
            for h in range(4):
                assert model.observed_parents(h) == {h}

    def test_single_source_regime(self):
        cfg = GeneratorConfig(
            m=4, n=6, regime="single_source", latent_edge_density=0.0, seed=5
        )
        for run in range(10):
            assert latent_sources(gen_random_mm(cfg, run)) == [0]

    def test_empty_latent_graph(self):
        cfg = GeneratorConfig(m=3, n=3, latent_edge_density=0.0)
        model = gen_random_mm(cfg)
        assert model.latent_edges == frozenset()
        assert model.bipartite_edges == {(0, 0), (1, 1), (2, 2)}

    def test_infeasible_settings(self):
        with pytest.raises(ValueError, match="Infeasible generator settings"):
            GeneratorConfig(m=4, n=3)


class TestSem:
    """Quadratic SEM sampling"""

    def setup_method(self):
        self.model = gen_random_mm(GeneratorConfig(m=2, n=4, seed=1))
        self.spec = make_sem(self.model, SemConfig(), seed=1)

    def test_coefficients(self):
        assert set(self.spec.coefficients) == set(self.model.dag.edges)
        for value in self.spec.coefficients.values():
            assert 0.5 <= abs(value) <= 1.5

    def test_missing_coefficients(self):
        with pytest.raises(ValueError, match="Missing coefficients"):
            SemSpec(self.model, {})

    def test_scales_must_be_positive(self):
        with pytest.raises(ValueError, match="noise_scale must be positive"):
            SemSpec(self.model, self.spec.coefficients, noise_scale=0.0)

    def test_shapes(self):
        assert sem_sample(self.spec, target(), 30).shape == (30, 4)
        full = sem_sample(self.spec, target(), 30, include_latents=True)
        assert full.shape == (30, 6)

    def test_sampling_is_keyed(self):
        first = sem_sample(self.spec, target(1), 50, seed=4, run=2)
        np.testing.assert_array_equal(
            first, sem_sample(self.spec, target(1), 50, seed=4, run=2)
        )
        other = sem_sample(self.spec, target(1), 50, seed=4, run=3)
        assert not np.array_equal(first, other)

    def test_intervened_latent_follows_the_intervention(self):
        data = sem_sample(self.spec, target(0), 4000, include_latents=True)
        assert data[:, 0].mean() == pytest.approx(2.0, abs=0.1)
        assert data[:, 0].std() == pytest.approx(1.0, abs=0.1)

    def test_count_must_be_positive(self):
        with pytest.raises(ValueError, match="count must be >= 1"):
            sem_sample(self.spec, target(), 0)


class TestScoring:
    """Canonical ground truth and SHD"""

    def test_canonical_model(self, imaginary_model):
        truth = canonical_model(imaginary_model)
        assert truth.covers == imaginary_model.covers()
        assert truth.latent_pdag.directed == frozenset()
        assert truth.latent_pdag.undirected == {(1, 3), (2, 3)}

    def test_model_against_itself(self, pure_imaginary_model):
        assert shd(pure_imaginary_model, pure_imaginary_model) == 0

    def test_dags(self):
        assert shd(get_dag("triangle_a"), get_dag("triangle_b")) == 1
        assert shd(Dag(3, [(0, 1)]), Dag(3, [(1, 2)])) == 2
        with pytest.raises(GraphError, match="Size mismatch"):
            shd(Dag(2), Dag(3))

    def test_pdags(self):
        oriented = LatentPdag(3, directed=[(0, 1)])
        assert shd(oriented, LatentPdag(3, undirected=[(0, 1)])) == 1
        assert shd(oriented, LatentPdag(3, directed=[(1, 2)])) == 2

    def test_models_with_different_latent_counts(self):
        merged = RecoveredModel([{0, 1}], LatentPdag(1))
        split = RecoveredModel([{0}, {1}], LatentPdag(2))
        # one cover loses X1, the unmatched cover {X1} counts in full
        assert shd(merged, split) == 2

    def test_latents_are_matched_before_scoring(self):
        a = RecoveredModel([{0, 1}, {2}], LatentPdag(2, directed=[(0, 1)]))
        b = RecoveredModel([{2}, {0, 1}], LatentPdag(2, directed=[(1, 0)]))
        assert shd(a, b) == 0

    def test_incomparable_types(self):
        with pytest.raises(TypeError, match="Cannot compare"):
            shd(Dag(2), LatentPdag(2))


class TestExperimentRun:
    """Cell summaries"""

    def _summary(self, scores, **fields):
        return ExperimentRun.summarize(
            scores, m=2, n=2, regime="pure_child", mode="oracle", seed=0, **fields
        )

    def test_mean_and_standard_error(self):
        result = self._summary([1, 3])
        assert result.runs == 2
        assert result.mean == pytest.approx(2.0)
        assert result.standard_error == pytest.approx(1.0)

    def test_single_run(self):
        result = self._summary([4])
        assert result.mean == 4.0
        assert result.standard_error == 0.0

    def test_status_counts(self):
        result = self._summary(
            [0, 0, 1], statuses=["ok", "skeleton_only", "ok"]
        )
        assert result.status_counts() == {"ok": 2, "skeleton_only": 1}


class TestHardInterventions:
    """Intervened latents lose their dependence on former parents"""

    def setup_method(self):
        # H0 -> H1, one pure child each
        self.model = MeasurementModel(2, 2, [(0, 0), (1, 1)], [(0, 1)])
        self.cutoff = calibrated_cutoff(500, 2, 499, 0.05)

    def _rejections(self, intervention):
        rejected = 0
        for seed in range(50):
            spec = make_sem(self.model, SemConfig(), seed=seed)
            data = sem_sample(spec, intervention, 500, seed=seed, include_latents=True)
            rejected += symmetric_xi(data[:, 0], data[:, 1]) > self.cutoff
        return rejected

    def test_cut_edge_leaves_independent_latents(self):
        # expected count is 2.5 at level 0.05
        assert self._rejections(target(1)) <= 8

    def test_observational_latents_are_dependent(self):
        assert self._rejections(target()) >= 45


class TestShdProperties:
    """Metric properties of the structural Hamming distance"""

    def setup_method(self):
        cfg = GeneratorConfig(m=3, n=6, latent_edge_density=0.6, seed=71)
        self.models = [gen_random_mm(cfg, run) for run in range(30)]

    def test_identical_models_score_zero(self):
        for model in self.models:
            assert shd(canonical_model(model), canonical_model(model)) == 0

    def test_models_are_symmetric(self):
        truths = [canonical_model(model) for model in self.models]
        for a, b in zip(truths, truths[1:]):
            assert shd(a, b) == shd(b, a)

    def test_latent_relabeling_is_free(self):
        for model in self.models:
            perm = [2, 0, 1]
            relabeled = MeasurementModel(
                model.m,
                model.n,
                [(perm[h], x) for h, x in model.bipartite_edges],
                [(perm[a], perm[b]) for a, b in model.latent_edges],
            )
            assert shd(canonical_model(model), canonical_model(relabeled)) == 0

    def test_dags_form_a_metric(self, random_dags):
        dags = random_dags(30, 5, 5, seed=72)
        for a, b, c in zip(dags, dags[1:], dags[2:]):
            assert shd(a, a) == 0
            assert shd(a, b) == shd(b, a)
            assert shd(a, c) <= shd(a, b) + shd(b, c)
