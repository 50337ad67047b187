"""
Simulation of measurement models and scoring of recovered ones.

This module provides:
- gen_random_mm: random models in the pure-child and single-source regimes
- SemSpec / make_sem / sem_sample: quadratic SEM with hard interventions
- chatterjee_xi: the rank statistic used by the sample front end
- canonical_model: ground truth with its unorientable edges undirected
- shd: structural Hamming distance for DAGs, PDAGs and models
- ExperimentRun: per-cell SHD summary

Every random draw comes from a generator seeded by a SeedSequence
keyed on (seed, run, ...), so results do not depend on call order.
"""

import math
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.random import SeedSequence, default_rng
from pydantic import BaseModel, Field
from scipy.optimize import linear_sum_assignment

from ..config.models import GeneratorConfig, Mode, Regime, SemConfig
from .errors import GraphError
from .graph import (
    Dag,
    Edge,
    InterventionTarget,
    MeasurementModel,
    unorientable_edges,
)
from .independence import chatterjee_xi
from .logging import get_logger
from .recovery import LatentPdag, RecoveredModel

logger = get_logger("simdata")

__all__ = [
    "ExperimentRun",
    "SemSpec",
    "canonical_model",
    "chatterjee_xi",
    "gen_random_mm",
    "make_sem",
    "sem_sample",
    "shd",
]

# stream tags for SeedSequence keys
_GRAPH_STREAM = 0
_COEFFICIENT_STREAM = 1
_NOISE_STREAM = 2


def _rng(*key: int) -> np.random.Generator:
    return default_rng(SeedSequence([int(k) for k in key]))


def gen_random_mm(
    cfg: GeneratorConfig, run: int = 0, attempt: int = 0
) -> MeasurementModel:
    """Draw a random measurement model.

    Latent i -> j (i < j) appears with ``latent_edge_density``. Observed
    X_0..X_{m-1} are pure children of H_0..H_{m-1}; each remaining
    observed variable takes every latent as a parent with
    ``bipartite_extra_density`` and gets one uniform parent if none was
    drawn. In the single-source regime every latent after H_0 is given
    a parent, so H_0 is the only source. ``attempt`` selects an
    independent redraw for the same run.
    """
    rng = _rng(cfg.seed, run, _GRAPH_STREAM, attempt)
    m, n = cfg.m, cfg.n

    latent_edges = set()
    for j in range(1, m):
        parents = [i for i in range(j) if rng.random() < cfg.latent_edge_density]
        if cfg.regime == "single_source" and not parents:
            parents = [int(rng.integers(0, j))]
        latent_edges.update((i, j) for i in parents)

    bipartite = {(h, h) for h in range(m)}
    for x in range(m, n):
        parents = [h for h in range(m) if rng.random() < cfg.bipartite_extra_density]
        if not parents:
            parents = [int(rng.integers(0, m))]
        bipartite.update((h, x) for h in parents)

    return MeasurementModel(m, n, bipartite, latent_edges)


class SemSpec:
    """Quadratic SEM on a measurement model: f(v) = c * v**2 per edge."""

    __slots__ = (
        "graph",
        "coefficients",
        "noise_scale",
        "intervention_mean",
        "intervention_scale",
    )

    def __init__(
        self,
        graph: MeasurementModel,
        coefficients: Dict[Edge, float],
        noise_scale: float = 1.0,
        intervention_mean: float = 2.0,
        intervention_scale: float = 1.0,
    ):
        if noise_scale <= 0:
            raise ValueError(f"noise_scale must be positive, got {noise_scale}")
        if intervention_scale <= 0:
            raise ValueError(
                f"intervention_scale must be positive, got {intervention_scale}"
            )
        missing = graph.dag.edges - set(coefficients)
        if missing:
            raise ValueError(f"Missing coefficients for edges {sorted(missing)}")
        self.graph = graph
        self.coefficients = dict(coefficients)
        self.noise_scale = noise_scale
        self.intervention_mean = intervention_mean
        self.intervention_scale = intervention_scale


def make_sem(
    graph: MeasurementModel,
    config: Optional[SemConfig] = None,
    seed: int = 0,
    run: int = 0,
) -> SemSpec:
    """Draw |c| ~ U[low, high] with a random sign for every edge."""
    config = config or SemConfig()
    rng = _rng(seed, run, _COEFFICIENT_STREAM)
    coefficients = {}
    for edge in sorted(graph.dag.edges):
        magnitude = rng.uniform(config.coefficient_low, config.coefficient_high)
        sign = 1.0 if rng.random() < 0.5 else -1.0
        coefficients[edge] = sign * magnitude
    return SemSpec(
        graph,
        coefficients,
        config.noise_scale,
        config.intervention_mean,
        config.intervention_scale,
    )


def _target_key(intervention: InterventionTarget) -> int:
    return 0 if not intervention else next(iter(intervention)) + 1


def sem_sample(
    spec: SemSpec,
    intervention: InterventionTarget,
    count: int,
    seed: int = 0,
    run: int = 0,
    include_latents: bool = False,
) -> np.ndarray:
    """Ancestral sampling from the intervened SEM.

    Returns a (count x n) matrix of observed columns; with
    ``include_latents`` the m latent columns come first.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")

    graph = spec.graph
    intervened = graph.intervene(intervention)
    dag = intervened.dag
    key = _target_key(intervention)

    values = np.zeros((count, dag.node_count))
    for node in dag.topological_order():
        rng = _rng(seed, run, _NOISE_STREAM, key, node)
        if node in intervention:
            values[:, node] = rng.normal(
                spec.intervention_mean, spec.intervention_scale, size=count
            )
            continue
        column = rng.normal(0.0, spec.noise_scale, size=count)
        for parent in sorted(dag.parents(node)):
            column += spec.coefficients[(parent, node)] * values[:, parent] ** 2
        values[:, node] = column

    if include_latents:
        return values
    return values[:, graph.m:]


# === SCORING


def canonical_model(mm: MeasurementModel) -> RecoveredModel:
    """Ground truth as a recovered model: unorientable edges undirected."""
    free = unorientable_edges(mm.latent_dag)
    pdag = LatentPdag(mm.m, mm.latent_edges - free, free)
    return RecoveredModel(mm.covers(), pdag).canonical()


_EdgeState = Union[str, Tuple[int, int]]


def _edge_states(
    directed, undirected, mapping: Optional[Dict[int, int]] = None
) -> Dict[Tuple[int, int], _EdgeState]:
    mapping = mapping or {}
    states: Dict[Tuple[int, int], _EdgeState] = {}
    for a, b in directed:
        a, b = mapping.get(a, a), mapping.get(b, b)
        states[(min(a, b), max(a, b))] = (a, b)
    for a, b in undirected:
        a, b = mapping.get(a, a), mapping.get(b, b)
        states[(min(a, b), max(a, b))] = "-"
    return states


def _state_distance(
    left: Dict[Tuple[int, int], _EdgeState], right: Dict[Tuple[int, int], _EdgeState]
) -> int:
    pairs = set(left) | set(right)
    return sum(1 for pair in pairs if left.get(pair) != right.get(pair))


def _model_shd(a: RecoveredModel, b: RecoveredModel) -> int:
    if a.m and b.m:
        cost = np.array([[len(ca ^ cb) for cb in b.covers] for ca in a.covers])
        rows, cols = linear_sum_assignment(cost)
        mapping = {int(r): int(c) for r, c in zip(rows, cols)}
    else:
        mapping = {}

    # unmatched latents of a get fresh labels past b's
    extra = b.m
    for i in range(a.m):
        if i not in mapping:
            mapping[i] = extra
            extra += 1

    matched_b = {mapping[i] for i in range(a.m)}
    total = 0
    for i, cover in enumerate(a.covers):
        j = mapping[i]
        total += len(cover ^ b.covers[j]) if j < b.m else len(cover)
    total += sum(len(cover) for j, cover in enumerate(b.covers) if j not in matched_b)

    left = _edge_states(a.latent_pdag.directed, a.latent_pdag.undirected, mapping)
    right = _edge_states(b.latent_pdag.directed, b.latent_pdag.undirected)
    return total + _state_distance(left, right)


Scorable = Union[Dag, LatentPdag, RecoveredModel, MeasurementModel]


def shd(a: Scorable, b: Scorable) -> int:
    """Structural Hamming distance.

    Each adjacency present in one graph only costs 1, as does each
    orientation (or directed/undirected) mismatch. Measurement models
    are compared through :func:`canonical_model`; latents are matched by
    minimum cover disagreement before scoring, and bipartite edges count
    one each.
    """
    if isinstance(a, MeasurementModel):
        a = canonical_model(a)
    if isinstance(b, MeasurementModel):
        b = canonical_model(b)

    if isinstance(a, Dag) and isinstance(b, Dag):
        if a.node_count != b.node_count:
            raise GraphError(f"Size mismatch: {a.node_count} != {b.node_count}")
        return _state_distance(_edge_states(a.edges, ()), _edge_states(b.edges, ()))

    if isinstance(a, LatentPdag) and isinstance(b, LatentPdag):
        if a.num_latents != b.num_latents:
            raise GraphError(f"Size mismatch: {a.num_latents} != {b.num_latents}")
        return _state_distance(
            _edge_states(a.directed, a.undirected),
            _edge_states(b.directed, b.undirected),
        )

    if isinstance(a, RecoveredModel) and isinstance(b, RecoveredModel):
        # tied cover matchings can score differently from either side
        return min(_model_shd(a, b), _model_shd(b, a))

    raise TypeError(f"Cannot compare {type(a).__name__} with {type(b).__name__}")


class ExperimentRun(BaseModel):
    """SHD summary of one (m, n, regime) cell."""

    m: int
    n: int
    regime: Regime
    mode: Mode
    runs: int
    seed: int
    samples: Optional[int] = Field(default=None, description="Samples per distribution")
    threshold: Optional[float] = Field(
        default=None, description="Fixed cutoff, None when calibrated"
    )
    per_run_shd: List[int] = Field(default_factory=list)
    statuses: List[str] = Field(default_factory=list)
    recovered_latents: List[int] = Field(default_factory=list)
    mean: float = 0.0
    standard_error: float = 0.0

    @classmethod
    def summarize(cls, per_run_shd: Sequence[int], **fields) -> "ExperimentRun":
        """Fill mean and standard error (sample std / sqrt(runs))."""
        scores = np.asarray(per_run_shd, dtype=float)
        mean = float(scores.mean()) if scores.size else 0.0
        if scores.size > 1:
            standard_error = float(scores.std(ddof=1) / math.sqrt(scores.size))
        else:
            standard_error = 0.0
        return cls(
            per_run_shd=[int(s) for s in per_run_shd],
            mean=mean,
            standard_error=standard_error,
            runs=len(per_run_shd),
            **fields,
        )

    def status_counts(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for status in self.statuses:
            counts[status] = counts.get(status, 0) + 1
        return counts
