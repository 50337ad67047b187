"""
Subset calculus tests
"""

import pytest

from src.mmident.config.models import GeneratorConfig
from src.mmident.core.equivalence import (
    assumptions_hold,
    children_condition,
    subset_condition,
)
from src.mmident.core.errors import SearchGuardExceeded
from src.mmident.core.experiments import draw_model
from src.mmident.core.fixtures import get_model
from src.mmident.core.subsets import (
    clique_closure,
    fractured_report,
    is_complete_collection,
    is_imaginary,
    is_replaceable,
    is_valid,
    maximal_valid_subsets,
    minimum_complete_collection,
    shattered_cliques,
    subset_report,
    subset_reports,
    superset_witnesses,
)
from src.mmident.core.udg import clique_family, oracle_udgs


def _sets(*subsets):
    return tuple(frozenset(s) for s in subsets)


class TestMaximalValidSubsets:
    """Valid and maximal valid subsets"""

    def test_imaginary_example(self, imaginary_family):
        assert maximal_valid_subsets(imaginary_family) == _sets(
            {0, 1}, {0, 1, 3}, {0, 1, 4}, {2, 4}, {4}, {4, 5}
        )

    def test_lone_child_is_not_maximal(self, imaginary_family):
        # X5 always shares its cliques with X4
        assert is_valid({5}, imaginary_family)
        assert clique_closure({5}, imaginary_family) == {4, 5}
        assert frozenset({5}) not in maximal_valid_subsets(imaginary_family)

    def test_validity(self, imaginary_family):
        assert is_valid({0, 1, 4}, imaginary_family)
        assert not is_valid({0, 1, 2}, imaginary_family)

    def test_subset_arguments(self, imaginary_family):
        with pytest.raises(ValueError, match="nonempty"):
            is_valid(set(), imaginary_family)
        with pytest.raises(ValueError, match="out of range"):
            is_valid({9}, imaginary_family)

    def test_pure_imaginary(self, pure_imaginary_family):
        assert maximal_valid_subsets(pure_imaginary_family) == _sets(
            {0, 4}, {1, 5}, {2, 4}, {3, 5}, {4}, {4, 5}, {5}
        )

    def test_fractured_real_count(self, fractured_family):
        maximals = maximal_valid_subsets(fractured_family)
        assert len(maximals) == 11
        assert frozenset({4, 5, 6}) in maximals


class TestReplaceable:
    """Maximal valid subsets strictly inside another"""

    def test_replaceable_fixture(self):
        family = clique_family(oracle_udgs(get_model("replaceable")))
        maximals = maximal_valid_subsets(family)
        assert maximals == _sets({0, 1}, {1}, {1, 2})
        assert is_replaceable({1}, maximals)
        assert superset_witnesses({1}, maximals) == _sets({0, 1}, {1, 2})
        assert not is_replaceable({0, 1}, maximals)

    def test_non_member(self, imaginary_family):
        maximals = maximal_valid_subsets(imaginary_family)
        with pytest.raises(ValueError, match="is not a maximal valid subset"):
            is_replaceable({5}, maximals)


class TestCompleteCollections:
    """Shattered cliques, completeness and the minimum collection"""

    def test_shattered_cliques(self):
        cliques = _sets({0, 1, 2}, {2, 3})
        # {2, 3} lacks a member holding X3
        assert shattered_cliques(_sets({0, 1}, {2}), cliques) == _sets({0, 1, 2})
        assert shattered_cliques(_sets({0, 1}), cliques) == ()

    def test_true_covers_are_complete(self, pure_imaginary_family):
        covers = _sets({0, 4}, {1, 5}, {2, 4}, {3, 5})
        assert is_complete_collection(covers, pure_imaginary_family)
        assert not is_complete_collection(covers[:3], pure_imaginary_family)

    def test_members_must_be_maximal(self, pure_imaginary_family):
        with pytest.raises(ValueError, match="is not a maximal valid subset"):
            is_complete_collection(_sets({0, 1}), pure_imaginary_family)

    def test_minimum_collection(self, fractured_family):
        maximals = maximal_valid_subsets(fractured_family)
        assert minimum_complete_collection(maximals, fractured_family) == _sets(
            {0, 4, 5}, {1, 4, 5}, {2, 4, 6}, {3, 5, 6}
        )


class TestFractured:
    """Fractured subsets with their witnesses"""

    def test_imaginary_subset_is_fractured(self, pure_imaginary_family):
        result = fractured_report({4, 5}, pure_imaginary_family)
        assert result.fractured
        assert result.witness == _sets({0, 4}, {1, 5}, {2, 4}, {3, 5})

    def test_real_child_set_is_fractured(self, fractured_family):
        result = fractured_report({4, 5, 6}, fractured_family)
        assert result.fractured
        assert frozenset({4, 5, 6}) not in result.witness

    def test_uncovered_node_blocks_fracture(self, imaginary_family):
        # every complete collection needs a member holding X5
        result = fractured_report({4, 5}, imaginary_family)
        assert not result.fractured
        assert result.witness is None

    def test_search_guard(self, pure_imaginary_family):
        with pytest.raises(SearchGuardExceeded, match="above the search guard 3"):
            fractured_report({4, 5}, pure_imaginary_family, max_maximals=3)


class TestImaginary:
    """Ground-truth imaginary subsets"""

    def test_imaginary(self, pure_imaginary_model, imaginary_model):
        assert is_imaginary({4, 5}, pure_imaginary_model)
        assert not is_imaginary({0, 4}, pure_imaginary_model)
        assert is_imaginary({4, 5}, imaginary_model)


class TestSubsetReports:
    """Per-subset classification"""

    def test_reports_with_truth(self, pure_imaginary_family, pure_imaginary_model):
        reports = subset_reports(pure_imaginary_family, pure_imaginary_model)
        by_subset = {tuple(r.subset): r for r in reports}
        assert len(reports) == 7

        pair = by_subset[(4, 5)]
        assert pair.maximal_valid
        assert pair.fractured is True
        assert pair.imaginary is True
        assert pair.covering_latent is None
        assert pair.fractured_witness == [[0, 4], [1, 5], [2, 4], [3, 5]]

        single = by_subset[(4,)]
        assert single.replaceable is True
        assert single.superset_witnesses == [[0, 4], [2, 4], [4, 5]]
        assert single.covering_latent == 0

    def test_report_without_truth(self, imaginary_family):
        report = subset_report({0, 1}, imaginary_family)
        assert report.replaceable is True
        assert report.imaginary is None

    def test_non_maximal_subset(self, imaginary_family):
        report = subset_report({5}, imaginary_family)
        assert report.valid
        assert not report.maximal_valid
        assert report.fractured is None

    def test_undecided_fracture(self, pure_imaginary_family):
        report = subset_report({4, 5}, pure_imaginary_family, max_maximals=3)
        assert report.fractured is None
        assert "Undecided" in report.undecided


def _satisfying_models(regime, m, n, runs, seed):
    cfg = GeneratorConfig(m=m, n=n, regime=regime, seed=seed)
    models = [draw_model(cfg, run, require_assumptions=True) for run in range(runs)]
    return [model for model in models if assumptions_hold(model)]


CELLS = [(2, 5), (3, 6), (3, 8), (4, 7)]


@pytest.mark.slow
class TestRandomGraphs:
    """Subset results on seeded graphs that satisfy the assumptions"""

    @pytest.mark.parametrize("m,n", CELLS)
    def test_child_sets_are_maximal_valid(self, m, n):
        models = _satisfying_models("pure_child", m, n, runs=15, seed=51)
        assert models
        for model in models:
            maximals = maximal_valid_subsets(clique_family(oracle_udgs(model)))
            for cover in model.covers():
                assert cover in maximals, f"{model!r} {sorted(cover)}"

    @pytest.mark.parametrize("m,n", CELLS)
    def test_single_source_graphs_have_no_imaginary_subsets(self, m, n):
        models = _satisfying_models("single_source", m, n, runs=15, seed=52)
        assert models
        for model in models:
            maximals = maximal_valid_subsets(clique_family(oracle_udgs(model)))
            imaginary = [s for s in maximals if is_imaginary(s, model)]
            assert not imaginary, f"{model!r} {imaginary}"

    @pytest.mark.parametrize("m,n", CELLS)
    def test_imaginary_subsets_are_fractured(self, m, n):
        for model in _satisfying_models("pure_child", m, n, runs=15, seed=53):
            fam = clique_family(oracle_udgs(model))
            maximals = maximal_valid_subsets(fam)
            for subset in maximals:
                if not is_imaginary(subset, model):
                    continue
                try:
                    result = fractured_report(subset, fam, maximals)
                except SearchGuardExceeded:
                    continue
                assert result.fractured, f"{model!r} {sorted(subset)}"


class TestSubsetCondition:
    """Nested child sets cannot survive the children condition"""

    def test_children_condition_implies_subset_condition(self, random_models):
        nested = 0
        for model in random_models(200, 3, 4, seed=54):
            if not subset_condition(model):
                nested += 1
                assert not children_condition(model), f"{model!r}"
        assert nested > 0
