"""
Subset calculus over a clique family.

This module provides:
- is_valid / maximal_valid_subsets: valid and maximal valid subsets
- is_replaceable / superset_witnesses
- shattered_cliques / is_complete_collection
- minimum_complete_collection: exact smallest complete collection
- fractured_report: fractured certificate (guarded exhaustive search)
- is_imaginary: ground-truth check
- SubsetReport and subset_reports for CLI output
"""

import itertools
import time
from typing import Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

from pydantic import BaseModel, Field

from .errors import SearchGuardExceeded
from .graph import MeasurementModel, NodeSet
from .logging import get_logger, log_stage_call
from .udg import Clique, CliqueFamily, Udg, clique_key, sort_cliques

logger = get_logger("subsets")


def _as_subset(subset: Iterable[int], fam: CliqueFamily) -> NodeSet:
    nodes = frozenset(subset)
    if not nodes:
        raise ValueError("Subset must be nonempty")
    for x in nodes:
        if not (0 <= x < fam.n):
            raise ValueError(f"Subset member X{x} out of range for n={fam.n}")
    return nodes


def is_valid(subset: Iterable[int], fam: CliqueFamily) -> bool:
    """True iff every distribution has a maximal clique containing ``subset``."""
    nodes = _as_subset(subset, fam)
    return all(any(nodes <= c for c in cliques) for cliques in fam.clique_sets)


def clique_closure(subset: Iterable[int], fam: CliqueFamily) -> Optional[NodeSet]:
    """Intersection of every Ω-clique containing ``subset`` (None if none does)."""
    nodes = frozenset(subset)
    containing = [c for c in fam.omega if nodes <= c]
    if not containing:
        return None
    return frozenset.intersection(*containing)


def maximal_valid_subsets(fam: CliqueFamily) -> Tuple[NodeSet, ...]:
    """All maximal valid subsets, in canonical order.

    Candidates are the nonempty intersections of Ω-cliques (a fixpoint
    of pairwise intersection). A valid candidate X is maximal iff the
    intersection of all Ω-cliques containing it is X itself.
    """
    started = time.time()
    candidates: Set[NodeSet] = set(fam.omega)
    frontier = set(candidates)
    while frontier:
        fresh = set()
        for a in frontier:
            for b in candidates:
                meet = a & b
                if meet and meet not in candidates:
                    fresh.add(meet)
        candidates |= fresh
        frontier = fresh

    maximals = [
        x
        for x in candidates
        if is_valid(x, fam) and clique_closure(x, fam) == x
    ]
    result = sort_cliques(maximals)
    log_stage_call(
        logger,
        "maximal_valid_subsets",
        f"{len(result)} of {len(candidates)} candidates",
        (time.time() - started) * 1000,
    )
    return result


def _check_member(subset: NodeSet, maximals: Sequence[NodeSet]) -> None:
    if subset not in set(maximals):
        raise ValueError(f"Subset {clique_key(subset)} is not a maximal valid subset")


def superset_witnesses(
    subset: Iterable[int], maximals: Sequence[NodeSet]
) -> Tuple[NodeSet, ...]:
    """Maximal valid subsets strictly containing ``subset``."""
    nodes = frozenset(subset)
    _check_member(nodes, maximals)
    return sort_cliques(m for m in maximals if nodes < m)


def is_replaceable(subset: Iterable[int], maximals: Sequence[NodeSet]) -> bool:
    return bool(superset_witnesses(subset, maximals))


def shattered_cliques(
    collection: Iterable[Iterable[int]], cliques: Iterable[Clique]
) -> Tuple[Clique, ...]:
    """Cliques equal to the union of the collection members they contain."""
    members = [frozenset(s) for s in collection]
    shattered = []
    for clique in cliques:
        clique = frozenset(clique)
        union: Set[int] = set()
        for member in members:
            if member and member <= clique:
                union |= member
        if union == clique:
            shattered.append(clique)
    return sort_cliques(shattered)


def _covers_udg(udg: Udg, shattered: Sequence[Clique]) -> bool:
    covered_nodes: Set[int] = set()
    for clique in shattered:
        covered_nodes |= clique
    if len(covered_nodes) != udg.n:
        return False
    return all(
        any(a in c and b in c for c in shattered) for a, b in udg.edges
    )


def _complete(collection: Sequence[NodeSet], fam: CliqueFamily) -> bool:
    for udg, cliques in fam:
        if not _covers_udg(udg, shattered_cliques(collection, cliques)):
            return False
    return True


def is_complete_collection(
    collection: Iterable[Iterable[int]],
    fam: CliqueFamily,
    maximals: Optional[Sequence[NodeSet]] = None,
) -> bool:
    """Check that, for every distribution, the shattered cliques cover the Udg.

    Every edge and every node must lie inside some shattered clique.
    Members must be maximal valid subsets of ``fam``.
    """
    members = [frozenset(s) for s in collection]
    maximals = maximal_valid_subsets(fam) if maximals is None else maximals
    allowed = set(maximals)
    for member in members:
        if member not in allowed:
            raise ValueError(
                f"Collection member {clique_key(member)} is not a maximal valid subset"
            )
    return _complete(members, fam)


def check_search_guard(maximals: Sequence[NodeSet], limit: int, stage: str) -> None:
    if len(maximals) > limit:
        raise SearchGuardExceeded(
            "maximal valid subset pool", len(maximals), limit, stage=stage
        )


def minimum_complete_collection(
    pool: Sequence[NodeSet], fam: CliqueFamily
) -> Optional[Tuple[NodeSet, ...]]:
    """Smallest complete sub-collection of ``pool`` (first in canonical order).

    Searches by increasing cardinality; collections that leave some
    observed node uncovered are skipped before the clique check.
    """
    ordered = sort_cliques(pool)
    everything = frozenset(range(fam.n))
    if frozenset().union(*ordered) != everything or not _complete(ordered, fam):
        return None
    for size in range(1, len(ordered) + 1):
        for combo in itertools.combinations(ordered, size):
            if frozenset().union(*combo) != everything:
                continue
            if _complete(combo, fam):
                return combo
    return None


class FracturedResult(NamedTuple):
    fractured: bool
    witness: Optional[Tuple[NodeSet, ...]]


def fractured_report(
    subset: Iterable[int],
    fam: CliqueFamily,
    maximals: Optional[Sequence[NodeSet]] = None,
    max_maximals: int = 20,
) -> FracturedResult:
    """Decide whether ``subset`` is fractured, with a minimum witness.

    A complete collection avoiding ``subset`` exists iff the pool of all
    maximal valid subsets not contained in it is complete, since
    completeness is monotone in the collection.
    """
    nodes = frozenset(subset)
    maximals = maximal_valid_subsets(fam) if maximals is None else maximals
    _check_member(nodes, maximals)
    check_search_guard(maximals, max_maximals, "fractured_report")

    pool = [m for m in maximals if not m <= nodes]
    witness = minimum_complete_collection(pool, fam)
    log_stage_call(
        logger,
        "fractured_report",
        f"{clique_key(nodes)} fractured={witness is not None}",
    )
    return FracturedResult(witness is not None, witness)


def covering_latents(subset: Iterable[int], truth: MeasurementModel) -> List[int]:
    nodes = frozenset(subset)
    return [i for i, cover in enumerate(truth.covers()) if nodes <= cover]


def is_imaginary(subset: Iterable[int], truth: MeasurementModel) -> bool:
    """True iff no latent's child set contains ``subset``."""
    return not covering_latents(subset, truth)


class SubsetReport(BaseModel):
    """Classification of one observed-variable subset."""

    subset: List[int] = Field(description="Observed indices, sorted")
    valid: bool
    maximal_valid: bool
    replaceable: Optional[bool] = Field(
        default=None, description="Only set for maximal valid subsets"
    )
    superset_witnesses: List[List[int]] = Field(default_factory=list)
    fractured: Optional[bool] = Field(
        default=None, description="None when undecided or not maximal valid"
    )
    fractured_witness: Optional[List[List[int]]] = None
    undecided: Optional[str] = Field(
        default=None, description="Reason the fractured search was refused"
    )
    imaginary: Optional[bool] = Field(
        default=None, description="Only set when ground truth is available"
    )
    covering_latent: Optional[int] = None


def _as_lists(sets: Iterable[NodeSet]) -> List[List[int]]:
    return [list(clique_key(s)) for s in sets]


def subset_report(
    subset: Iterable[int],
    fam: CliqueFamily,
    maximals: Optional[Sequence[NodeSet]] = None,
    truth: Optional[MeasurementModel] = None,
    max_maximals: int = 20,
) -> SubsetReport:
    """Full classification of one subset with its witnesses."""
    nodes = _as_subset(subset, fam)
    maximals = maximal_valid_subsets(fam) if maximals is None else maximals
    report = SubsetReport(
        subset=list(clique_key(nodes)),
        valid=is_valid(nodes, fam),
        maximal_valid=nodes in set(maximals),
    )
    if not report.maximal_valid:
        return report

    witnesses = superset_witnesses(nodes, maximals)
    report.replaceable = bool(witnesses)
    report.superset_witnesses = _as_lists(witnesses)

    try:
        result = fractured_report(nodes, fam, maximals, max_maximals)
        report.fractured = result.fractured
        if result.witness is not None:
            report.fractured_witness = _as_lists(result.witness)
    except SearchGuardExceeded as e:
        report.undecided = str(e)

    if truth is not None:
        latents = covering_latents(nodes, truth)
        report.imaginary = not latents
        report.covering_latent = latents[0] if latents else None
    return report


def subset_reports(
    fam: CliqueFamily,
    truth: Optional[MeasurementModel] = None,
    max_maximals: int = 20,
) -> List[SubsetReport]:
    """One report per maximal valid subset of the family."""
    maximals = maximal_valid_subsets(fam)
    return [subset_report(m, fam, maximals, truth, max_maximals) for m in maximals]
