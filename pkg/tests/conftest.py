"""
Pytest configuration and fixtures
"""

import itertools
import json

import numpy as np
import pytest

from src.mmident.config.loader import CONFIG_ENV_VAR
from src.mmident.config.models import Config
from src.mmident.core.fixtures import get_model
from src.mmident.core.graph import Dag, MeasurementModel
from src.mmident.core.udg import clique_family, oracle_udgs


@pytest.fixture(autouse=True)
def no_config_env(monkeypatch):
    """Keep a developer's MMIDENT_CONFIG out of the tests"""
    monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)


@pytest.fixture
def default_config():
    """Default harness configuration fixture"""
    return Config()


@pytest.fixture
def imaginary_model():
    """Four latents with an imaginary pair {X4, X5} (0-based)"""
    return get_model("imaginary_example")


@pytest.fixture
def imaginary_family(imaginary_model):
    """Oracle clique family of imaginary_example"""
    return clique_family(oracle_udgs(imaginary_model))


@pytest.fixture
def pure_imaginary_model():
    """Pure children everywhere, imaginary {X4, X5}"""
    return get_model("pure_imaginary")


@pytest.fixture
def pure_imaginary_family(pure_imaginary_model):
    """Oracle clique family of pure_imaginary"""
    return clique_family(oracle_udgs(pure_imaginary_model))


@pytest.fixture
def fractured_model():
    """Five latents whose real child set {X4, X5, X6} is fractured"""
    return get_model("fractured_real")


@pytest.fixture
def fractured_family(fractured_model):
    """Oracle clique family of fractured_real"""
    return clique_family(oracle_udgs(fractured_model))


@pytest.fixture
def config_file(tmp_path):
    """Factory writing a configuration JSON and returning its path"""

    def _write(data, name="config.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture
def oracle_batch_config():
    """Smallest oracle batch: one (2, 2) cell in the pure-child regime"""
    return {
        "logging": {"level": "WARNING"},
        "experiment": {
            "runs": 10,
            "cells": [[2, 2]],
            "regimes": ["pure_child"],
            "mode": "oracle",
        },
    }


@pytest.fixture
def random_dags():
    """Factory of seeded random DAGs with sizes in [min_nodes, max_nodes]"""

    def _draw(count, min_nodes, max_nodes, seed=0, density=0.5):
        rng = np.random.default_rng(seed)
        dags = []
        for _ in range(count):
            size = int(rng.integers(min_nodes, max_nodes + 1))
            order = rng.permutation(size)
            edges = [
                (int(order[i]), int(order[j]))
                for i, j in itertools.combinations(range(size), 2)
                if rng.random() < density
            ]
            dags.append(Dag(size, edges))
        return dags

    return _draw


@pytest.fixture
def random_models():
    """Factory of seeded measurement models with arbitrary bipartite parts

    Unlike the experiment generator these need not have pure children.
    """

    def _draw(count, m, n, seed=0, density=0.5):
        rng = np.random.default_rng(seed)
        models = []
        for _ in range(count):
            latent_edges = [
                (i, j)
                for i, j in itertools.combinations(range(m), 2)
                if rng.random() < density
            ]
            bipartite = set()
            for x in range(n):
                parents = [h for h in range(m) if rng.random() < density]
                parents = parents or [int(rng.integers(0, m))]
                bipartite.update((h, x) for h in parents)
            models.append(MeasurementModel(m, n, bipartite, latent_edges))
        return models

    return _draw
