"""
Equivalence classes under unknown single-node hard interventions.

This module provides:
- markov_equivalent: skeleton + v-structure comparison
- iec_equivalent / iec_class: reachability by isolated-edge reversals
- interventional_family_set: unlabeled per-target family sets
- theorem_remap_check: an isolated-edge reversal is matched by a
  relabeling of the targets
- distinguishing_target: a target of g1 no target of g2 can imitate
- maximality_check: single-edge additions that keep the family set
- Assumption diagnostics (children condition, subset condition,
  pure children, latent sources) and AssumptionReport
"""

from collections import deque
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Union

from pydantic import BaseModel, Field

from .errors import CycleError, GraphError
from .graph import (
    EMPTY_TARGET,
    Dag,
    DsepFamily,
    Edge,
    EdgeClass,
    InterventionTarget,
    MeasurementModel,
    d_separated,
    dsep_family,
    edge_class,
    intervene,
    isolated_edges,
    target,
)
from .logging import get_logger, log_stage_call
from .udg import Udg, udg_from_graph

logger = get_logger("equivalence")

DsepFamilySet = FrozenSet[Union[DsepFamily, Udg]]


def _check_same_size(g1: Dag, g2: Dag) -> None:
    if g1.node_count != g2.node_count:
        raise GraphError(
            f"Graphs differ in size: {g1.node_count} != {g2.node_count}"
        )


def dag_targets(g: Dag) -> List[InterventionTarget]:
    """The complete single-node family {∅, {0}, ..., {k-1}}."""
    return [EMPTY_TARGET] + [target(v) for v in g.nodes]


def markov_equivalent(g1: Dag, g2: Dag) -> bool:
    _check_same_size(g1, g2)
    return g1.skeleton() == g2.skeleton() and g1.vstructures() == g2.vstructures()


def iec_class(g: Dag) -> FrozenSet[Dag]:
    """Every DAG reachable from ``g`` by isolated-edge reversals."""
    seen = {g}
    queue = deque([g])
    while queue:
        current = queue.popleft()
        for edge in sorted(isolated_edges(current)):
            neighbor = current.reversed_edge(edge)
            if neighbor not in seen:
                seen.add(neighbor)
                queue.append(neighbor)
    return frozenset(seen)


def iec_equivalent(g1: Dag, g2: Dag) -> bool:
    """Breadth-first search over isolated-edge reversals starting at g1."""
    _check_same_size(g1, g2)
    if g1 == g2:
        return True
    return g2 in iec_class(g1)


def interventional_family_set(
    g: Union[Dag, MeasurementModel],
    targets: Optional[Sequence[InterventionTarget]] = None,
    universe: Optional[Sequence[int]] = None,
    max_nodes: int = 8,
) -> DsepFamilySet:
    """Deduplicated per-target families, one per target.

    For a plain DAG each family is the full singleton-triple
    d-separation family over ``universe``. For a measurement model the
    family over the observed variables is represented by its Udg, whose
    maximal cliques determine it.
    """
    if isinstance(g, MeasurementModel):
        targets = g.complete_targets() if targets is None else targets
        return frozenset(udg_from_graph(g, t) for t in targets)

    targets = dag_targets(g) if targets is None else targets
    return frozenset(
        dsep_family(
            intervene(g, t), universe, marginal_only=False, max_nodes=max_nodes
        )
        for t in targets
    )


def remap_target(
    intervention: InterventionTarget, edge: Edge
) -> InterventionTarget:
    """Swap the endpoints of ``edge``; every other target is unchanged.

    For the reversal of x -> y, {x} maps to {y} and {y} maps back to {x}.
    Mapping {y} to itself does not work: in the reversed graph y is a
    source, so intervening on it keeps the edge that {y} cut in the
    original.
    """
    x, y = edge
    if intervention == target(x):
        return target(y)
    if intervention == target(y):
        return target(x)
    return intervention


def theorem_remap_check(
    g1: Dag,
    iso_edge: Edge,
    targets: Optional[Sequence[InterventionTarget]] = None,
    max_nodes: int = 8,
) -> bool:
    """Reverse an isolated edge and match every target's full family."""
    if edge_class(g1, iso_edge) is not EdgeClass.ISOLATED:
        raise GraphError(f"Edge {iso_edge[0]}->{iso_edge[1]} is not isolated")

    g2 = g1.reversed_edge(iso_edge)
    targets = dag_targets(g1) if targets is None else targets
    for t in targets:
        left = dsep_family(intervene(g1, t), marginal_only=False, max_nodes=max_nodes)
        right = dsep_family(
            intervene(g2, remap_target(t, iso_edge)),
            marginal_only=False,
            max_nodes=max_nodes,
        )
        if left != right:
            logger.debug(f"Remap mismatch for target {sorted(t)} on edge {iso_edge}")
            return False
    return True


def distinguishing_target(
    g1: Dag, g2: Dag, max_nodes: int = 8
) -> Optional[InterventionTarget]:
    """A target of g1 whose family no target of g2 reproduces.

    Targets are tried from sinks to sources of g1 (reverse topological
    order), then ∅. Returns None when every family of g1 is matched.
    """
    _check_same_size(g1, g2)
    others = interventional_family_set(g2, max_nodes=max_nodes)
    order = [target(v) for v in reversed(g1.topological_order())] + [EMPTY_TARGET]
    for t in order:
        family = dsep_family(intervene(g1, t), marginal_only=False, max_nodes=max_nodes)
        if family not in others:
            return t
    return None


class EdgeAddition(NamedTuple):
    """An edge whose addition leaves the interventional family set unchanged."""

    kind: str  # "bipartite" or "latent"
    source: int
    target: int


class MaximalityResult(NamedTuple):
    maximal: bool
    violation: Optional[EdgeAddition]
    latent_additions_checked: bool


def _latent_parents(mm: MeasurementModel) -> Dict[int, FrozenSet[int]]:
    return {h: mm.latent_dag.parents(h) for h in range(mm.m)}


def maximality_check(
    mm: MeasurementModel,
    targets: Optional[Sequence[InterventionTarget]] = None,
    max_latents: int = 5,
) -> MaximalityResult:
    """Single-edge maximality test.

    Every absent latent->observed edge is added in turn; then, for models
    with at most ``max_latents`` latents, every absent acyclic
    latent->latent edge. The first addition that keeps the family set is
    returned as the violation.
    """
    targets = mm.complete_targets() if targets is None else list(targets)
    baseline = interventional_family_set(mm, targets)

    for h in range(mm.m):
        for x in range(mm.n):
            if (h, x) in mm.bipartite_edges:
                continue
            grown = mm.with_bipartite_edge((h, x))
            if interventional_family_set(grown, targets) == baseline:
                log_stage_call(
                    logger, "maximality_check", f"bipartite H{h}->X{x} kept family"
                )
                return MaximalityResult(False, EdgeAddition("bipartite", h, x), True)

    if mm.m > max_latents:
        logger.info(
            f"Skipping latent-edge additions: m={mm.m} exceeds {max_latents}"
        )
        return MaximalityResult(True, None, False)

    present = mm.latent_dag.skeleton()
    for a in range(mm.m):
        for b in range(mm.m):
            if a == b or frozenset((a, b)) in present:
                continue
            try:
                grown = mm.with_latent_edge((a, b))
            except CycleError:
                continue
            if interventional_family_set(grown, targets) == baseline:
                log_stage_call(
                    logger, "maximality_check", f"latent H{a}->H{b} kept family"
                )
                return MaximalityResult(False, EdgeAddition("latent", a, b), True)

    return MaximalityResult(True, None, True)


# === ASSUMPTION DIAGNOSTICS


def children_condition(
    mm: MeasurementModel, targets: Optional[Sequence[InterventionTarget]] = None
) -> bool:
    """Latents d-separated under a target must have d-separated children."""
    targets = mm.complete_targets() if targets is None else targets
    for t in targets:
        dag = mm.intervene(t).dag
        for i in range(mm.m):
            for j in range(i + 1, mm.m):
                if not d_separated(dag, i, j):
                    continue
                separated_children = any(
                    d_separated(dag, mm.observed_node(a), mm.observed_node(b))
                    for a in mm.cover(i)
                    for b in mm.cover(j)
                    if a != b
                )
                if not separated_children:
                    return False
    return True


def subset_condition(mm: MeasurementModel) -> bool:
    """No latent's child set strictly contains another's."""
    covers = mm.covers()
    return not any(
        covers[i] < covers[j]
        for i in range(mm.m)
        for j in range(mm.m)
        if i != j
    )


def pure_children(mm: MeasurementModel) -> Dict[int, List[int]]:
    """Observed children whose only parent is the given latent."""
    return {
        h: sorted(x for x in mm.cover(h) if mm.observed_parents(x) == {h})
        for h in range(mm.m)
    }


def has_pure_children(mm: MeasurementModel) -> bool:
    return all(pure_children(mm).values())


def latent_sources(mm: MeasurementModel) -> List[int]:
    return [h for h, parents in _latent_parents(mm).items() if not parents]


class AssumptionReport(BaseModel):
    """Graph-level verdicts for the identifiability assumptions."""

    children_condition: bool = Field(
        description="d-separated latents have d-separated children under every target"
    )
    subset_condition: bool = Field(description="No child set strictly contains another")
    pure_children: bool = Field(description="Every latent has a pure child")
    latent_sources: List[int] = Field(default_factory=list)
    single_source: bool
    maximal: bool = Field(description="Single-edge maximality verdict")
    maximality_violation: Optional[Dict[str, Union[str, int]]] = None
    latent_additions_checked: bool = True
    satisfied: bool = Field(
        description="children_condition, subset_condition and maximal all hold"
    )


def assumptions_hold(
    mm: MeasurementModel,
    targets: Optional[Sequence[InterventionTarget]] = None,
    max_latents: int = 5,
) -> bool:
    """``check_assumptions(...).satisfied``, stopping at the first failure."""
    return (
        subset_condition(mm)
        and children_condition(mm, targets)
        and maximality_check(mm, targets, max_latents).maximal
    )


def check_assumptions(
    mm: MeasurementModel,
    targets: Optional[Sequence[InterventionTarget]] = None,
    max_latents: int = 5,
) -> AssumptionReport:
    children = children_condition(mm, targets)
    subsets_ok = subset_condition(mm)
    sources = latent_sources(mm)
    maximality = maximality_check(mm, targets, max_latents)
    return AssumptionReport(
        children_condition=children,
        subset_condition=subsets_ok,
        pure_children=has_pure_children(mm),
        latent_sources=sources,
        single_source=len(sources) == 1,
        maximal=maximality.maximal,
        maximality_violation=(
            maximality.violation._asdict() if maximality.violation else None
        ),
        latent_additions_checked=maximality.latent_additions_checked,
        satisfied=children and subsets_ok and maximality.maximal,
    )
