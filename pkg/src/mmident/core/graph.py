"""
Directed-graph substrate for measurement models.

This module provides:
- Dag: immutable DAG over dense 0-based node indices
- MeasurementModel: latents plus observed children (G = G_B ∪ G_H)
- Relatives, d-separation (ball passing) and a path-enumeration oracle
- Hard single-node interventions
- Edge classification (normal / covered / isolated)
- Marginal and exhaustive d-separation families
- JSON specs for graphs

Latents come first in the combined node index of a MeasurementModel;
the JSON form keeps latents and observed variables in separate
namespaces.
"""

import itertools
import json
from enum import Enum
from functools import lru_cache
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

import networkx as nx
from pydantic import BaseModel, Field

from .errors import CycleError, GraphError, SearchGuardExceeded

Node = int
Edge = Tuple[int, int]
NodeSet = FrozenSet[int]
InterventionTarget = FrozenSet[int]
Triple = Tuple[NodeSet, NodeSet, NodeSet]
DsepFamily = FrozenSet[Triple]

EMPTY_TARGET: InterventionTarget = frozenset()

_FROM_CHILD = "c"
_FROM_PARENT = "p"


class EdgeClass(str, Enum):
    """Classification of a DAG edge x->y."""

    NORMAL = "normal"
    COVERED = "covered"
    ISOLATED = "isolated"


class RelativeKind(str, Enum):
    """Relative sets exposed by :func:`relatives`."""

    PARENTS = "parents"
    CHILDREN = "children"
    ANCESTORS = "ancestors"
    DESCENDANTS = "descendants"


def target(node: Optional[int] = None) -> InterventionTarget:
    """Build an intervention target: empty, or the single given node."""
    return EMPTY_TARGET if node is None else frozenset({node})


class Dag:
    """Immutable directed acyclic graph over nodes ``0..node_count-1``."""

    __slots__ = ("_node_count", "_edges", "_parents", "_children", "_hash")

    def __init__(self, node_count: int, edges: Iterable[Edge] = ()):
        if not isinstance(node_count, int) or node_count < 1:
            raise GraphError(f"node_count must be a positive integer, got {node_count}")

        edge_list = [(int(a), int(b)) for a, b in edges]
        edge_set = frozenset(edge_list)
        if len(edge_set) != len(edge_list):
            raise GraphError("Duplicate edges are not allowed")

        parents: List[Set[int]] = [set() for _ in range(node_count)]
        children: List[Set[int]] = [set() for _ in range(node_count)]
        for a, b in edge_set:
            if not (0 <= a < node_count and 0 <= b < node_count):
                raise GraphError(f"Edge {a}->{b} out of range for {node_count} nodes")
            if a == b:
                raise GraphError(f"Self-loop on node {a}")
            parents[b].add(a)
            children[a].add(b)

        self._node_count = node_count
        self._edges: FrozenSet[Edge] = edge_set
        self._parents = tuple(frozenset(p) for p in parents)
        self._children = tuple(frozenset(c) for c in children)
        self._hash = hash((node_count, edge_set))

        graph = self.to_networkx()
        if not nx.is_directed_acyclic_graph(graph):
            cycle = [u for u, _ in nx.find_cycle(graph)]
            raise CycleError(cycle + cycle[:1])

    # === ACCESSORS
    @property
    def node_count(self) -> int:
        return self._node_count

    @property
    def nodes(self) -> range:
        return range(self._node_count)

    @property
    def edges(self) -> FrozenSet[Edge]:
        return self._edges

    def has_edge(self, a: int, b: int) -> bool:
        return (a, b) in self._edges

    def parents(self, node: int) -> NodeSet:
        self._check_node(node)
        return self._parents[node]

    def children(self, node: int) -> NodeSet:
        self._check_node(node)
        return self._children[node]

    def ancestors(self, node: int) -> NodeSet:
        self._check_node(node)
        return self._closure(node, self._parents)

    def descendants(self, node: int) -> NodeSet:
        self._check_node(node)
        return self._closure(node, self._children)

    def neighbors(self, node: int) -> NodeSet:
        return self.parents(node) | self.children(node)

    def skeleton(self) -> FrozenSet[FrozenSet[int]]:
        return frozenset(frozenset(e) for e in self._edges)

    def vstructures(self) -> FrozenSet[Tuple[int, int, int]]:
        """Triples (i, k, j) with i->k<-j, i < j, and i, j non-adjacent."""
        found = set()
        for node in self.nodes:
            for p1, p2 in itertools.combinations(sorted(self._parents[node]), 2):
                if p1 not in self._parents[p2] and p2 not in self._parents[p1]:
                    found.add((p1, node, p2))
        return frozenset(found)

    def topological_order(self) -> List[int]:
        return list(nx.lexicographical_topological_sort(self.to_networkx()))

    # === DERIVED GRAPHS
    def reversed_edge(self, edge: Edge) -> "Dag":
        a, b = edge
        if not self.has_edge(a, b):
            raise GraphError(f"Edge {a}->{b} not found")
        return Dag(self._node_count, (self._edges - {(a, b)}) | {(b, a)})

    def with_edges(self, added: Iterable[Edge]) -> "Dag":
        return Dag(self._node_count, self._edges | frozenset(added))

    def without_edges(self, removed: Iterable[Edge]) -> "Dag":
        return Dag(self._node_count, self._edges - frozenset(removed))

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self._node_count))
        graph.add_edges_from(self._edges)
        return graph

    # === HELPERS
    def _check_node(self, node: int) -> None:
        if not (0 <= node < self._node_count):
            raise GraphError(f"Node {node} out of range for {self._node_count} nodes")

    @staticmethod
    def _closure(node: int, step: Sequence[FrozenSet[int]]) -> NodeSet:
        seen: Set[int] = set()
        stack = list(step[node])
        while stack:
            current = stack.pop()
            if current not in seen:
                seen.add(current)
                stack.extend(step[current])
        return frozenset(seen)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dag):
            return False
        return self._node_count == other._node_count and self._edges == other._edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        arcs = ", ".join(f"{a}->{b}" for a, b in sorted(self._edges))
        return f"Dag({self._node_count}, [{arcs}])"


class MeasurementModel:
    """Latent DAG G_H plus bipartite latent->observed edges G_B.

    Latent indices run over ``0..m-1`` and observed indices over
    ``0..n-1`` in their own namespace. ``dag`` exposes the combined
    graph, where observed ``j`` becomes node ``m + j``.
    """

    __slots__ = ("_m", "_n", "_bipartite", "_latent_dag", "_covers", "_dag")

    def __init__(
        self,
        num_latents: int,
        num_observed: int,
        bipartite_edges: Iterable[Edge],
        latent_edges: Iterable[Edge] = (),
    ):
        if num_latents < 1 or num_observed < 1:
            raise GraphError("A measurement model needs m >= 1 and n >= 1")

        bipartite = frozenset((int(h), int(x)) for h, x in bipartite_edges)
        for h, x in bipartite:
            if not (0 <= h < num_latents and 0 <= x < num_observed):
                raise GraphError(f"Bipartite edge H{h}->X{x} out of range")

        orphans = set(range(num_observed)) - {x for _, x in bipartite}
        if orphans:
            raise GraphError(
                f"Observed nodes without a latent parent: {sorted(orphans)}"
            )

        self._m = num_latents
        self._n = num_observed
        self._bipartite = bipartite
        self._latent_dag = Dag(num_latents, latent_edges)
        self._covers = tuple(
            frozenset(x for h, x in bipartite if h == i) for i in range(num_latents)
        )
        self._dag: Optional[Dag] = None

    @property
    def m(self) -> int:
        return self._m

    @property
    def n(self) -> int:
        return self._n

    @property
    def bipartite_edges(self) -> FrozenSet[Edge]:
        return self._bipartite

    @property
    def latent_edges(self) -> FrozenSet[Edge]:
        return self._latent_dag.edges

    @property
    def latent_dag(self) -> Dag:
        return self._latent_dag

    @property
    def dag(self) -> Dag:
        if self._dag is None:
            combined = set(self._latent_dag.edges)
            combined |= {(h, self._m + x) for h, x in self._bipartite}
            self._dag = Dag(self._m + self._n, combined)
        return self._dag

    def observed_node(self, x: int) -> int:
        """Combined-graph index of observed variable ``x``."""
        return self._m + x

    def cover(self, latent: int) -> NodeSet:
        """Observed children of a latent (its child set)."""
        if not (0 <= latent < self._m):
            raise GraphError(f"Latent {latent} out of range for m={self._m}")
        return self._covers[latent]

    def covers(self) -> Tuple[NodeSet, ...]:
        return self._covers

    def observed_parents(self, x: int) -> NodeSet:
        return frozenset(h for h, child in self._bipartite if child == x)

    def complete_targets(self) -> List[InterventionTarget]:
        """The complete single-node target family {∅, {H1}, ..., {Hm}}."""
        return [EMPTY_TARGET] + [target(i) for i in range(self._m)]

    def intervene(self, latent_target: InterventionTarget) -> "MeasurementModel":
        _check_target(latent_target, self._m)
        if not latent_target:
            return self
        (h,) = latent_target
        kept = {(a, b) for a, b in self.latent_edges if b != h}
        return MeasurementModel(self._m, self._n, self._bipartite, kept)

    def with_bipartite_edge(self, edge: Edge) -> "MeasurementModel":
        return MeasurementModel(
            self._m, self._n, self._bipartite | {edge}, self.latent_edges
        )

    def with_latent_edge(self, edge: Edge) -> "MeasurementModel":
        return MeasurementModel(
            self._m, self._n, self._bipartite, self.latent_edges | {edge}
        )

    def to_spec(self) -> "GraphSpec":
        return GraphSpec(
            m=self._m,
            n=self._n,
            latent_edges=sorted(self.latent_edges),
            bipartite_edges=sorted(self._bipartite),
        )

    @classmethod
    def from_spec(cls, spec: "GraphSpec") -> "MeasurementModel":
        return cls(spec.m, spec.n, spec.bipartite_edges, spec.latent_edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MeasurementModel):
            return False
        return (
            self._m == other._m
            and self._n == other._n
            and self._bipartite == other._bipartite
            and self.latent_edges == other.latent_edges
        )

    def __hash__(self) -> int:
        return hash((self._m, self._n, self._bipartite, self.latent_edges))

    def __repr__(self) -> str:
        return (
            f"MeasurementModel(m={self._m}, n={self._n},"
            f" latent={sorted(self.latent_edges)},"
            f" bipartite={sorted(self._bipartite)})"
        )


class GraphSpec(BaseModel):
    """JSON form of a measurement model."""

    m: int = Field(ge=1, description="Number of latents")
    n: int = Field(ge=1, description="Number of observed variables")
    latent_edges: List[Tuple[int, int]] = Field(
        default_factory=list, description="Latent->latent edges"
    )
    bipartite_edges: List[Tuple[int, int]] = Field(
        description="Latent->observed edges (observed indices in their own namespace)"
    )


class DagSpec(BaseModel):
    """JSON form of a plain DAG."""

    nodes: int = Field(ge=1, description="Number of nodes")
    edges: List[Tuple[int, int]] = Field(default_factory=list)


def load_model(path: str) -> MeasurementModel:
    """Read a measurement model from a graph JSON file."""
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    return MeasurementModel.from_spec(GraphSpec(**data))


def save_model(model: MeasurementModel, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(model.to_spec().model_dump_json(indent=2))


def load_dag(path: str) -> Dag:
    """Read a plain DAG from JSON; graph JSON is accepted as its latent DAG."""
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    if "m" in data:
        return MeasurementModel.from_spec(GraphSpec(**data)).latent_dag
    spec = DagSpec(**data)
    return Dag(spec.nodes, spec.edges)


# === OPERATIONS


def relatives(
    g: Dag,
    node: int,
    kind: Union[RelativeKind, str],
    closed: bool = False,
) -> NodeSet:
    """Return parents, children, ancestors or descendants of ``node``.

    Ancestors and descendants exclude the node itself unless ``closed``
    is set, which gives the closure that includes it.
    """
    kind = RelativeKind(kind)
    if kind is RelativeKind.PARENTS:
        result = g.parents(node)
    elif kind is RelativeKind.CHILDREN:
        result = g.children(node)
    elif kind is RelativeKind.ANCESTORS:
        result = g.ancestors(node)
    else:
        result = g.descendants(node)
    return result | {node} if closed else result


def _as_set(nodes: Union[int, Iterable[int]]) -> NodeSet:
    if isinstance(nodes, int):
        return frozenset({nodes})
    return frozenset(nodes)


def _check_query(g: Dag, A: NodeSet, B: NodeSet, C: NodeSet) -> None:
    for node in A | B | C:
        if not (0 <= node < g.node_count):
            raise GraphError(f"Node {node} out of range for {g.node_count} nodes")
    if not A or not B:
        raise GraphError("A and B must be nonempty")
    if A & B or A & C or B & C:
        raise GraphError("A, B and C must be pairwise disjoint")


def d_separated(
    g: Dag,
    A: Union[int, Iterable[int]],
    B: Union[int, Iterable[int]],
    C: Union[int, Iterable[int]] = (),
) -> bool:
    """Check whether A and B are d-separated by C (ball passing)."""
    A, B, C = _as_set(A), _as_set(B), _as_set(C)
    _check_query(g, A, B, C)

    # shade C and its ancestors
    shaded = set(C)
    for node in C:
        shaded |= g.ancestors(node)

    visited: Set[Tuple[int, str]] = set()
    schedule = [(node, _FROM_CHILD) for node in A]
    while schedule:
        node, direction = schedule.pop()
        if node in B:
            return False
        if (node, direction) in visited:
            continue
        visited.add((node, direction))

        if direction == _FROM_CHILD and node not in C:
            schedule.extend((p, _FROM_CHILD) for p in g.parents(node))
            schedule.extend((c, _FROM_PARENT) for c in g.children(node))

        if direction == _FROM_PARENT:
            # collider with a shaded node lets the ball bounce back up
            if node in shaded:
                schedule.extend((p, _FROM_CHILD) for p in g.parents(node))
            if node not in C:
                schedule.extend((c, _FROM_PARENT) for c in g.children(node))

    return True


def _path_is_active(g: Dag, path: Sequence[int], C: NodeSet) -> bool:
    for i in range(1, len(path) - 1):
        prev, node, nxt = path[i - 1], path[i], path[i + 1]
        if g.has_edge(prev, node) and g.has_edge(nxt, node):
            if node not in C and not (g.descendants(node) & C):
                return False
        elif node in C:
            return False
    return True


def active_paths(
    g: Dag, a: int, b: int, C: Iterable[int] = ()
) -> Iterator[List[int]]:
    """Enumerate every simple path between a and b that is active given C."""
    C = frozenset(C)
    skeleton = g.to_networkx().to_undirected()
    for path in nx.all_simple_paths(skeleton, a, b):
        if _path_is_active(g, path, C):
            yield path


def d_separated_by_paths(
    g: Dag,
    A: Union[int, Iterable[int]],
    B: Union[int, Iterable[int]],
    C: Union[int, Iterable[int]] = (),
) -> bool:
    """Exhaustive active-path check; reference oracle for small graphs."""
    A, B, C = _as_set(A), _as_set(B), _as_set(C)
    _check_query(g, A, B, C)
    for a in A:
        for b in B:
            if next(active_paths(g, a, b, C), None) is not None:
                return False
    return True


def _check_target(intervention: InterventionTarget, node_count: int) -> None:
    if len(intervention) > 1:
        raise GraphError(
            f"Intervention targets hold at most one node, got {sorted(intervention)}"
        )
    for node in intervention:
        if not (0 <= node < node_count):
            raise GraphError(f"Intervention target {node} out of range")


def intervene(g: Dag, intervention: InterventionTarget) -> Dag:
    """Hard intervention: drop every incoming edge of the target."""
    _check_target(intervention, g.node_count)
    if not intervention:
        return g
    (node,) = intervention
    return g.without_edges((p, node) for p in g.parents(node))


def edge_class(g: Dag, edge: Edge) -> EdgeClass:
    """Classify x->y as isolated, covered, or normal.

    Isolated edges are covered too; they are reported as isolated.
    """
    x, y = edge
    if not g.has_edge(x, y):
        raise GraphError(f"Edge {x}->{y} not found")
    if not g.parents(x) and g.parents(y) == {x}:
        return EdgeClass.ISOLATED
    if g.parents(x) | {x} == g.parents(y):
        return EdgeClass.COVERED
    return EdgeClass.NORMAL


def isolated_edges(g: Dag) -> FrozenSet[Edge]:
    return frozenset(e for e in g.edges if edge_class(g, e) is EdgeClass.ISOLATED)


def unorientable_edges(g: Dag) -> FrozenSet[Edge]:
    """Isolated edges plus the chain edges they force to stay unoriented.

    x->y qualifies when pa(y) = {x} and either pa(x) is empty or
    pa(x) = {w} with w->x qualifying itself.
    """
    found: Set[Edge] = set()
    for y in g.topological_order():
        parents = g.parents(y)
        if len(parents) != 1:
            continue
        (x,) = parents
        grand = g.parents(x)
        if not grand:
            found.add((x, y))
        elif len(grand) == 1:
            (w,) = grand
            if (w, x) in found:
                found.add((x, y))
    return frozenset(found)


def canonical_triple(a: int, b: int, C: Iterable[int] = ()) -> Triple:
    lo, hi = min(a, b), max(a, b)
    return frozenset({lo}), frozenset({hi}), frozenset(C)


def dsep_family(
    g: Dag,
    universe: Optional[Iterable[int]] = None,
    marginal_only: bool = True,
    max_nodes: int = 8,
) -> DsepFamily:
    """d-separation statements with singleton A and B over ``universe``.

    ``marginal_only`` keeps C = ∅; otherwise every C drawn from the rest
    of the universe is enumerated, which is guarded by ``max_nodes``.
    """
    nodes = frozenset(g.nodes) if universe is None else frozenset(universe)
    for node in nodes:
        if not (0 <= node < g.node_count):
            raise GraphError(f"Universe node {node} out of range")

    if not marginal_only and len(nodes) > max_nodes:
        raise SearchGuardExceeded("d-separation universe", len(nodes), max_nodes)

    ordered = sorted(nodes)
    family: Set[Triple] = set()
    for a, b in itertools.combinations(ordered, 2):
        if marginal_only:
            if d_separated(g, a, b):
                family.add(canonical_triple(a, b))
            continue
        rest = [v for v in ordered if v not in (a, b)]
        for size in range(len(rest) + 1):
            for C in itertools.combinations(rest, size):
                if d_separated(g, a, b, C):
                    family.add(canonical_triple(a, b, C))
    return frozenset(family)


@lru_cache(maxsize=8)
def all_dags(node_count: int) -> Tuple[Dag, ...]:
    """Every labeled DAG on ``node_count`` nodes (desk scale only)."""
    if node_count > 5:
        raise SearchGuardExceeded("DAG enumeration node count", node_count, 5)
    pairs = list(itertools.combinations(range(node_count), 2))
    found: Dict[FrozenSet[Edge], Dag] = {}
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        edges = []
        for (a, b), c in zip(pairs, choice):
            if c == 1:
                edges.append((a, b))
            elif c == 2:
                edges.append((b, a))
        try:
            dag = Dag(node_count, edges)
        except CycleError:
            continue
        found[dag.edges] = dag
    return tuple(found[key] for key in sorted(found, key=sorted))
