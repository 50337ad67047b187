"""
Undirected dependency graphs and their maximal-clique families.

This module provides:
- Udg: undirected graph over observed variables (marginal dependence)
- udg_from_graph: oracle construction through d-separation
- udg_from_samples: construction from data with the symmetrized
  Chatterjee statistic and a calibrated (or fixed) cutoff
- maximal_cliques: canonical maximal-clique enumeration
- CliqueFamily / clique_family: the deduplicated, unlabeled family
- JSON and CSV readers/writers for Udgs and sample matrices
"""

import json
import os
from itertools import combinations
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel, Field

from ..config.models import IndependenceTestConfig
from .errors import GraphError
from .graph import InterventionTarget, MeasurementModel
from .independence import calibrated_cutoff, column_order, column_ranks, xi_from_ranks
from .logging import get_logger

logger = get_logger("udg")

Clique = FrozenSet[int]


def clique_key(clique: Iterable[int]) -> Tuple[int, ...]:
    return tuple(sorted(clique))


def sort_cliques(cliques: Iterable[Clique]) -> Tuple[Clique, ...]:
    return tuple(sorted(cliques, key=clique_key))


class Udg:
    """Undirected dependency graph over observed variables ``0..n-1``."""

    __slots__ = ("_n", "_edges", "_adjacency", "_hash")

    def __init__(self, num_observed: int, edges: Iterable[Tuple[int, int]] = ()):
        if num_observed < 1:
            raise GraphError(f"A Udg needs at least one node, got {num_observed}")
        normalized = set()
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise GraphError(f"Self-loop on X{a}")
            if not (0 <= a < num_observed and 0 <= b < num_observed):
                raise GraphError(f"Udg edge {a}-{b} out of range for n={num_observed}")
            normalized.add((min(a, b), max(a, b)))

        adjacency: List[set] = [set() for _ in range(num_observed)]
        for a, b in normalized:
            adjacency[a].add(b)
            adjacency[b].add(a)

        self._n = num_observed
        self._edges = frozenset(normalized)
        self._adjacency = tuple(frozenset(s) for s in adjacency)
        self._hash = hash((num_observed, self._edges))

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> FrozenSet[Tuple[int, int]]:
        return self._edges

    def has_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self._edges

    def neighbors(self, node: int) -> FrozenSet[int]:
        return self._adjacency[node]

    def sort_key(self) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
        return self._n, tuple(sorted(self._edges))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self._n))
        graph.add_edges_from(self._edges)
        return graph

    def to_spec(self) -> "UdgSpec":
        return UdgSpec(n=self._n, edges=sorted(self._edges))

    @classmethod
    def from_spec(cls, spec: "UdgSpec") -> "Udg":
        return cls(spec.n, spec.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Udg):
            return False
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        pairs = ", ".join(f"{a}-{b}" for a, b in sorted(self._edges))
        return f"Udg({self._n}, [{pairs}])"


class UdgSpec(BaseModel):
    """JSON form of a Udg."""

    n: int = Field(ge=1, description="Number of observed variables")
    edges: List[Tuple[int, int]] = Field(default_factory=list)


class CliqueFamily:
    """Deduplicated per-distribution Udgs with their maximal cliques.

    Entries are kept in canonical order (by sorted edge list), so the
    family does not depend on the order in which Udgs were supplied.
    """

    __slots__ = ("_n", "_entries", "_omega")

    def __init__(self, n: int, entries: Sequence[Tuple[Udg, Tuple[Clique, ...]]]):
        self._n = n
        self._entries = tuple(entries)
        omega = set()
        for _, cliques in self._entries:
            omega.update(cliques)
        self._omega = frozenset(omega)

    @property
    def n(self) -> int:
        return self._n

    @property
    def entries(self) -> Tuple[Tuple[Udg, Tuple[Clique, ...]], ...]:
        return self._entries

    @property
    def udgs(self) -> Tuple[Udg, ...]:
        return tuple(udg for udg, _ in self._entries)

    @property
    def clique_sets(self) -> Tuple[Tuple[Clique, ...], ...]:
        return tuple(cliques for _, cliques in self._entries)

    @property
    def omega(self) -> FrozenSet[Clique]:
        """Union of maximal cliques across distributions."""
        return self._omega

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[Tuple[Udg, Tuple[Clique, ...]]]:
        return iter(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CliqueFamily):
            return False
        return self._n == other._n and self.udgs == other.udgs

    def __hash__(self) -> int:
        return hash((self._n, self.udgs))

    def __repr__(self) -> str:
        return f"CliqueFamily(n={self._n}, distributions={len(self._entries)})"


# === CONSTRUCTION


def udg_from_graph(g: MeasurementModel, intervention: InterventionTarget) -> Udg:
    """Oracle Udg: X_i - X_j iff they are d-connected given ∅ in G^(I).

    Observed variables are sinks, so with nothing conditioned on two of
    them are d-connected exactly when they share a latent ancestor.
    """
    latent_dag = g.intervene(intervention).latent_dag
    upstream = [latent_dag.ancestors(h) | {h} for h in range(g.m)]
    reach = [
        frozenset().union(*(upstream[h] for h in g.observed_parents(x)))
        for x in range(g.n)
    ]
    edges = [(i, j) for i, j in combinations(range(g.n), 2) if reach[i] & reach[j]]
    return Udg(g.n, edges)


def oracle_udgs(
    g: MeasurementModel, targets: Optional[Sequence[InterventionTarget]] = None
) -> List[Udg]:
    """Oracle Udgs for every target (default: the complete family)."""
    targets = g.complete_targets() if targets is None else targets
    return [udg_from_graph(g, t) for t in targets]


def udg_from_samples(
    data: np.ndarray,
    threshold: Optional[float] = None,
    config: Optional[IndependenceTestConfig] = None,
) -> Udg:
    """Empirical Udg from a (samples x observed) matrix.

    An edge is drawn when max(ξ(x, y), ξ(y, x)) exceeds the cutoff. The
    cutoff is ``threshold`` if given, then ``config.threshold``, then the
    permutation-calibrated familywise value for the matrix shape, which
    holds the chance of any spurious edge in the whole Udg to
    ``config.level``. Zero-variance columns are reported and left
    without edges.
    """
    config = config or IndependenceTestConfig()
    matrix = np.asarray(data, dtype=float)
    if matrix.ndim != 2 or matrix.shape[1] < 1:
        raise ValueError(
            f"Sample matrix must be 2-D with columns, got shape {matrix.shape}"
        )

    count, n = matrix.shape
    if count < config.min_samples:
        raise ValueError(
            f"At least {config.min_samples} samples are required, got {count}"
        )

    if threshold is None:
        threshold = config.threshold
    if threshold is None and n > 1:
        threshold = calibrated_cutoff(
            count,
            n,
            config.permutations,
            config.level,
            config.calibration_seed,
        )

    degenerate = {j for j in range(n) if np.ptp(matrix[:, j]) == 0.0}
    for j in sorted(degenerate):
        logger.warning(f"Column X{j} has zero variance; treated as independent")

    orders = [column_order(matrix[:, j]) for j in range(n)]
    ranks = [column_ranks(matrix[:, j]) for j in range(n)]

    edges = []
    for i in range(n):
        if i in degenerate:
            continue
        for j in range(i + 1, n):
            if j in degenerate:
                continue
            statistic = max(
                xi_from_ranks(orders[i], ranks[j]),
                xi_from_ranks(orders[j], ranks[i]),
            )
            if statistic > threshold:
                edges.append((i, j))
    return Udg(n, edges)


def maximal_cliques(u: Udg) -> Tuple[Clique, ...]:
    """Maximal cliques in canonical order; isolated nodes are singletons."""
    return sort_cliques(frozenset(c) for c in nx.find_cliques(u.to_networkx()))


def clique_family(udgs: Iterable[Udg]) -> CliqueFamily:
    """Deduplicate Udgs and attach their maximal cliques."""
    distinct = set()
    n: Optional[int] = None
    for udg in udgs:
        if n is None:
            n = udg.n
        elif udg.n != n:
            raise ValueError(f"All Udgs must share n: got {udg.n} and {n}")
        distinct.add(udg)

    if n is None:
        raise ValueError("At least one Udg is required")

    ordered = sorted(distinct, key=Udg.sort_key)
    entries = [(udg, maximal_cliques(udg)) for udg in ordered]
    logger.debug(f"Clique family: {len(entries)} distinct distributions over n={n}")
    return CliqueFamily(n, entries)


# === FILE I/O


def load_udg(path: str) -> Udg:
    with open(path, "r", encoding="utf-8") as f:
        return Udg.from_spec(UdgSpec(**json.load(f)))


def save_udg(udg: Udg, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(udg.to_spec().model_dump_json(indent=2))


def load_samples(path: str) -> np.ndarray:
    """Read a CSV sample file with an X0..X{n-1} header row."""
    matrix = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return matrix


def save_samples(matrix: np.ndarray, path: str) -> None:
    header = ",".join(f"X{j}" for j in range(matrix.shape[1]))
    np.savetxt(path, matrix, delimiter=",", header=header, comments="", fmt="%.10g")


def _sorted_files(in_dir: str, suffix: str) -> List[str]:
    if not os.path.isdir(in_dir):
        raise FileNotFoundError(f"Input directory not found: {in_dir}")
    names = sorted(f for f in os.listdir(in_dir) if f.endswith(suffix))
    return [os.path.join(in_dir, f) for f in names]


def load_udg_dir(in_dir: str) -> List[Udg]:
    """Every ``*.udg.json`` (or plain Udg ``*.json``) file in a directory."""
    udgs = []
    for path in _sorted_files(in_dir, ".json"):
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
        if isinstance(data, dict) and {"n", "edges"} <= set(data) and "m" not in data:
            udgs.append(Udg.from_spec(UdgSpec(**data)))
    if not udgs:
        raise ValueError(f"No Udg JSON files found in {in_dir}")
    return udgs


def load_sample_dir(in_dir: str) -> List[np.ndarray]:
    matrices = [load_samples(path) for path in _sorted_files(in_dir, ".csv")]
    if not matrices:
        raise ValueError(f"No CSV sample files found in {in_dir}")
    return matrices
