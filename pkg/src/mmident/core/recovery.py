"""
End-to-end identification of a measurement model.

This module provides:
- Bipartite recovery: no-imaginary route and pure-child route
- Marginal latent families built from covers and clique families
- Skeleton learning (Algorithm 1) and orientation (Algorithm 2)
- LatentPdag / RecoveredModel result types
- full_pipeline with stage logging and stage-tagged errors

Recovered latents are ordered by their sorted cover sets.
"""

import time
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from pydantic import BaseModel, Field

from ..config.models import Route
from .errors import CycleError, InconsistentInputError, PipelineStageError
from .graph import Dag, NodeSet
from .logging import get_logger, log_stage_call
from .subsets import (
    check_search_guard,
    is_replaceable,
    maximal_valid_subsets,
    minimum_complete_collection,
)
from .udg import CliqueFamily, Udg, clique_family, clique_key, sort_cliques

logger = get_logger("recovery")

Pair = Tuple[int, int]
PairSet = FrozenSet[Pair]
MarginalLatentFamily = Tuple[PairSet, ...]


def _pair(a: int, b: int) -> Pair:
    return (a, b) if a < b else (b, a)


def marginal_family(entries: Iterable[Iterable[Pair]]) -> MarginalLatentFamily:
    """Deduplicate entries and put them in canonical order."""
    distinct = {frozenset(_pair(a, b) for a, b in entry) for entry in entries}
    return tuple(sorted(distinct, key=lambda e: (len(e), sorted(e))))


class LatentPdag:
    """Partially directed graph over recovered latents."""

    __slots__ = ("_m", "_directed", "_undirected", "_targets")

    def __init__(
        self,
        num_latents: int,
        directed: Iterable[Pair] = (),
        undirected: Iterable[Pair] = (),
        inferred_targets: Iterable[int] = (),
    ):
        self._m = num_latents
        self._directed = frozenset((int(a), int(b)) for a, b in directed)
        self._undirected = frozenset(_pair(int(a), int(b)) for a, b in undirected)
        self._targets = frozenset(inferred_targets)

        for a, b in self._directed | self._undirected:
            if not (0 <= a < num_latents and 0 <= b < num_latents) or a == b:
                raise InconsistentInputError(
                    f"Latent edge {a}-{b} is invalid for m={num_latents}"
                )
        clash = {_pair(a, b) for a, b in self._directed} & self._undirected
        if clash:
            raise InconsistentInputError(
                f"Edges both directed and undirected: {sorted(clash)}"
            )
        try:
            Dag(max(num_latents, 1), self._directed)
        except CycleError as e:
            raise InconsistentInputError(
                f"Directed latent edges are cyclic: {e}"
            ) from e

    @property
    def num_latents(self) -> int:
        return self._m

    @property
    def directed(self) -> FrozenSet[Pair]:
        return self._directed

    @property
    def undirected(self) -> FrozenSet[Pair]:
        return self._undirected

    @property
    def inferred_targets(self) -> FrozenSet[int]:
        return self._targets

    def skeleton(self) -> FrozenSet[Pair]:
        return frozenset(_pair(a, b) for a, b in self._directed) | self._undirected

    def relabel(self, mapping: Dict[int, int]) -> "LatentPdag":
        return LatentPdag(
            self._m,
            [(mapping[a], mapping[b]) for a, b in self._directed],
            [(mapping[a], mapping[b]) for a, b in self._undirected],
            [mapping[t] for t in self._targets],
        )

    def __eq__(self, other: object) -> bool:
        # inferred targets are bookkeeping, not part of the graph
        if not isinstance(other, LatentPdag):
            return False
        return (
            self._m == other._m
            and self._directed == other._directed
            and self._undirected == other._undirected
        )

    def __hash__(self) -> int:
        return hash((self._m, self._directed, self._undirected))

    def __repr__(self) -> str:
        return (
            f"LatentPdag(m={self._m}, directed={sorted(self._directed)},"
            f" undirected={sorted(self._undirected)})"
        )


class RecoveredModel:
    """Recovered covers (one per latent) plus the latent PDAG."""

    __slots__ = ("_covers", "_pdag")

    def __init__(self, covers: Sequence[Iterable[int]], latent_pdag: LatentPdag):
        cover_sets = tuple(frozenset(c) for c in covers)
        if any(not c for c in cover_sets):
            raise InconsistentInputError("Recovered covers must be nonempty")
        if latent_pdag.num_latents != len(cover_sets):
            raise InconsistentInputError(
                f"PDAG has {latent_pdag.num_latents} latents"
                f" but {len(cover_sets)} covers"
            )
        self._covers = cover_sets
        self._pdag = latent_pdag

    @property
    def covers(self) -> Tuple[NodeSet, ...]:
        return self._covers

    @property
    def latent_pdag(self) -> LatentPdag:
        return self._pdag

    @property
    def m(self) -> int:
        return len(self._covers)

    def canonical(self) -> "RecoveredModel":
        """Same model with latents ordered by sorted cover sets."""
        order = sorted(range(self.m), key=lambda i: clique_key(self._covers[i]))
        mapping = {old: new for new, old in enumerate(order)}
        return RecoveredModel(
            [self._covers[i] for i in order], self._pdag.relabel(mapping)
        )

    def to_report(self, route: Optional[str] = None) -> "RecoveredModelReport":
        return RecoveredModelReport(
            covers=[list(clique_key(c)) for c in self._covers],
            directed=sorted(self._pdag.directed),
            undirected=sorted(self._pdag.undirected),
            m=self.m,
            inferred_targets=sorted(self._pdag.inferred_targets),
            route=route,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RecoveredModel):
            return False
        return self._covers == other._covers and self._pdag == other._pdag

    def __hash__(self) -> int:
        return hash((self._covers, self._pdag))

    def __repr__(self) -> str:
        covers = [list(clique_key(c)) for c in self._covers]
        return f"RecoveredModel(covers={covers}, pdag={self._pdag!r})"


class RecoveredModelReport(BaseModel):
    """JSON form of a recovered model."""

    covers: List[List[int]] = Field(description="Observed children per latent")
    directed: List[Tuple[int, int]] = Field(default_factory=list)
    undirected: List[Tuple[int, int]] = Field(default_factory=list)
    m: int = Field(description="Number of recovered latents")
    inferred_targets: List[int] = Field(default_factory=list)
    route: Optional[str] = None


# === BIPARTITE RECOVERY


def recover_bipartite_no_imaginary(
    fam: CliqueFamily, maximals: Optional[Sequence[NodeSet]] = None
) -> Tuple[NodeSet, ...]:
    """Covers = non-replaceable maximal valid subsets."""
    maximals = maximal_valid_subsets(fam) if maximals is None else maximals
    return sort_cliques(x for x in maximals if not is_replaceable(x, maximals))


def recover_bipartite_pure_child(
    fam: CliqueFamily,
    maximals: Optional[Sequence[NodeSet]] = None,
    max_maximals: int = 20,
) -> Tuple[NodeSet, ...]:
    """Covers = the minimum-cardinality complete collection."""
    maximals = maximal_valid_subsets(fam) if maximals is None else maximals
    check_search_guard(maximals, max_maximals, "bipartite_pure_child")
    collection = minimum_complete_collection(maximals, fam)
    if collection is None:
        raise InconsistentInputError(
            "No complete collection exists among the maximal valid subsets",
            stage="bipartite_pure_child",
        )
    return sort_cliques(collection)


# === LATENT STRUCTURE


def latent_marginal_family(
    fam: CliqueFamily, covers: Sequence[Iterable[int]]
) -> MarginalLatentFamily:
    """Per distribution, latent pairs whose cover union fits in no clique."""
    cover_sets = [frozenset(c) for c in covers]
    entries = []
    for _, cliques in fam:
        entry = set()
        for i in range(len(cover_sets)):
            for j in range(i + 1, len(cover_sets)):
                union = cover_sets[i] | cover_sets[j]
                if not any(union <= c for c in cliques):
                    entry.add((i, j))
        entries.append(entry)
    return marginal_family(entries)


def _drop_repeated_pairs(mfam: MarginalLatentFamily) -> List[Set[Pair]]:
    counts: Dict[Pair, int] = {}
    for entry in mfam:
        for pair in entry:
            counts[pair] = counts.get(pair, 0) + 1
    return [{p for p in entry if counts[p] < 2} for entry in mfam]


def algorithm1_skeleton(mfam: MarginalLatentFamily) -> FrozenSet[Pair]:
    """Latent skeleton from a deduplicated marginal latent family."""
    mfam = marginal_family(mfam)
    if len(mfam) <= 1:
        return frozenset()
    edges: Set[Pair] = set()
    for entry in _drop_repeated_pairs(mfam):
        edges |= entry
    return frozenset(edges)


def algorithm2_orient(
    mfam: MarginalLatentFamily, num_latents: Optional[int] = None
) -> LatentPdag:
    """Skeleton plus every orientation the marginal family compels.

    ``num_latents`` defaults to one past the largest latent index the
    family mentions.
    """
    mfam = marginal_family(mfam)
    if num_latents is None:
        mentioned = [i for entry in mfam for pair in entry for i in pair]
        num_latents = max(mentioned) + 1 if mentioned else 1
    if len(mfam) <= 1:
        return LatentPdag(num_latents)

    entries = [e for e in _drop_repeated_pairs(mfam) if e]

    directed: Set[Pair] = set()
    targets: Set[int] = set()
    singletons: List[Pair] = []

    # colliders: every pair of the entry shares the intervened latent
    for entry in entries:
        if len(entry) == 1:
            singletons.append(next(iter(entry)))
            continue
        common = frozenset.intersection(*(frozenset(p) for p in entry))
        if len(common) != 1:
            raise InconsistentInputError(
                f"Entry {sorted(entry)} has no single common latent",
                stage="algorithm2_orient",
            )
        (star,) = common
        targets.add(star)
        for a, b in entry:
            directed.add((b, a) if a == star else (a, b))

    # compelled edges from targets already attributed
    changed = True
    while changed:
        changed = False
        remaining = []
        for a, b in singletons:
            if a in targets:
                directed.add((a, b))
                targets.add(b)
                changed = True
            elif b in targets:
                directed.add((b, a))
                targets.add(a)
                changed = True
            else:
                remaining.append((a, b))
        singletons = remaining

    reversed_pairs = {(a, b) for a, b in directed if (b, a) in directed}
    if reversed_pairs:
        raise InconsistentInputError(
            f"Conflicting orientations for {sorted(reversed_pairs)}",
            stage="algorithm2_orient",
        )

    oriented = {_pair(a, b) for a, b in directed}
    undirected = {p for p in singletons if p not in oriented}
    return LatentPdag(num_latents, directed, undirected, targets)


# === PIPELINE


def _run_stage(stage: str, func, *args, **kwargs):
    started = time.time()
    try:
        result = func(*args, **kwargs)
    except Exception as e:
        logger.debug(f"Stage {stage} failed: {e}")
        raise PipelineStageError(stage, e) from e
    log_stage_call(logger, stage, None, (time.time() - started) * 1000)
    return result


def full_pipeline(
    udgs: Sequence[Udg],
    route: Route = "pure_child",
    max_maximals: int = 20,
) -> RecoveredModel:
    """Unlabeled distribution Udgs -> recovered measurement model."""
    fam = _run_stage("clique_family", clique_family, udgs)
    maximals = _run_stage("maximal_valid_subsets", maximal_valid_subsets, fam)

    if route == "no_imaginary":
        covers = _run_stage(
            "bipartite_no_imaginary", recover_bipartite_no_imaginary, fam, maximals
        )
    elif route == "pure_child":
        covers = _run_stage(
            "bipartite_pure_child",
            recover_bipartite_pure_child,
            fam,
            maximals,
            max_maximals,
        )
    else:
        raise ValueError(f"Unknown route: {route}")

    mfam = _run_stage("latent_marginal_family", latent_marginal_family, fam, covers)
    pdag = _run_stage("algorithm2_orient", algorithm2_orient, mfam, len(covers))

    model = RecoveredModel(covers, pdag).canonical()
    logger.info(
        f"Recovered m={model.m} latents from {len(fam)} distributions"
        f" ({len(pdag.directed)} directed, {len(pdag.undirected)} undirected)"
    )
    return model
