"""
Named example graphs.

Every worked example and paired counterexample used across the test
suite and the CLI (``--fixture NAME``) is built here. Builders take
1-based labels (H1.., X1..) so each definition reads like its drawing;
the resulting models, and the descriptions listed by the CLI, are
0-based like the rest of the package.

Each fixture records the target family it is meant to be read under;
``None`` means the complete family {∅, {H_0}, ..., {H_{m-1}}}.
"""

from typing import (
    Callable,
    Dict,
    Iterable,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from .graph import EMPTY_TARGET, Dag, InterventionTarget, MeasurementModel, target

Fixture = Union[MeasurementModel, Dag]


def _model(
    m: int,
    n: int,
    children: Dict[int, Iterable[int]],
    latent_edges: Sequence[Tuple[int, int]] = (),
) -> MeasurementModel:
    bipartite = [(h - 1, x - 1) for h, xs in children.items() for x in xs]
    latent = [(a - 1, b - 1) for a, b in latent_edges]
    return MeasurementModel(m, n, bipartite, latent)


def _pure(m: int, latent_edges: Sequence[Tuple[int, int]] = ()) -> MeasurementModel:
    return _model(m, m, {h: (h,) for h in range(1, m + 1)}, latent_edges)


def imaginary_example() -> MeasurementModel:
    """{X5,X6} imaginary, {X1,X2} replaceable, H2->H4 isolated."""
    return _model(
        4,
        6,
        {1: (1, 2, 4), 2: (1, 2, 5), 3: (3, 5), 4: (6,)},
        [(2, 4), (4, 3)],
    )


def target_family_a() -> MeasurementModel:
    return _model(1, 2, {1: (1, 2)})


def target_family_b() -> MeasurementModel:
    return _model(2, 2, {1: (1,), 2: (2,)}, [(1, 2)])


def children_overlap_a() -> MeasurementModel:
    return _model(3, 3, {1: (1, 2), 2: (2, 3), 3: (3, 1)}, [(1, 2), (2, 3)])


def children_overlap_b() -> MeasurementModel:
    return _model(1, 3, {1: (1, 2, 3)})


def incomplete_targets_a() -> MeasurementModel:
    return _pure(3, [(1, 2), (2, 3)])


def incomplete_targets_b() -> MeasurementModel:
    return _model(2, 3, {1: (1,), 2: (2, 3)}, [(1, 2)])


def triangle_a() -> Dag:
    """X3 -> X1, X3 -> X2, X1 -> X2."""
    return Dag(3, [(2, 0), (2, 1), (0, 1)])


def triangle_b() -> Dag:
    """Same skeleton as triangle_a with X1 <- X2."""
    return Dag(3, [(2, 0), (2, 1), (1, 0)])


def replaceable() -> MeasurementModel:
    return _model(2, 3, {1: (1, 2), 2: (2, 3)}, [(1, 2)])


def fractured_real() -> MeasurementModel:
    """{X5,X6,X7} is a real child set avoided by a complete collection."""
    return _model(
        5,
        7,
        {1: (1, 5, 6), 2: (2, 5, 6), 3: (3, 5, 7), 4: (4, 6, 7), 5: (5, 6, 7)},
        [(1, 5), (2, 5), (5, 3), (5, 4)],
    )


def pure_imaginary() -> MeasurementModel:
    """Pure children everywhere, yet {X5,X6} is imaginary."""
    return _model(
        4,
        6,
        {1: (1, 5), 2: (2, 6), 3: (3, 5), 4: (4, 6)},
        [(1, 2), (3, 4)],
    )


def non_maximal() -> MeasurementModel:
    """Adding H3 -> H1 leaves every interventional family unchanged."""
    return _pure(4, [(2, 1), (4, 1), (2, 3), (3, 4)])


def maximal() -> MeasurementModel:
    return _pure(4, [(2, 1), (4, 1), (2, 3), (3, 4), (3, 1)])


def replace_real() -> MeasurementModel:
    return _model(
        4,
        5,
        {1: (1, 5), 2: (2,), 3: (3, 5), 4: (4,)},
        [(1, 2), (2, 3), (4, 2)],
    )


def no_fractured() -> MeasurementModel:
    return _model(3, 4, {1: (1, 2), 2: (2, 3), 3: (3, 4)}, [(1, 2), (3, 2)])


class FixtureInfo(NamedTuple):
    build: Callable[[], Fixture]
    description: str
    targets: Optional[List[InterventionTarget]] = None
    partner: Optional[str] = None


FIXTURES: Dict[str, FixtureInfo] = {
    "imaginary_example": FixtureInfo(
        imaginary_example, "Imaginary, replaceable and isolated-edge showcase"
    ),
    "target_family_a": FixtureInfo(
        target_family_a,
        "One latent with two children; matches target_family_b observationally",
        [EMPTY_TARGET],
        "target_family_b",
    ),
    "target_family_b": FixtureInfo(
        target_family_b,
        "Latent chain with pure children",
        [EMPTY_TARGET],
        "target_family_a",
    ),
    "children_overlap_a": FixtureInfo(
        children_overlap_a,
        "Latent chain whose children overlap cyclically",
        partner="children_overlap_b",
    ),
    "children_overlap_b": FixtureInfo(
        children_overlap_b,
        "One latent over three children",
        partner="children_overlap_a",
    ),
    "incomplete_targets_a": FixtureInfo(
        incomplete_targets_a,
        "Three-latent chain, read under {∅, {H1}}",
        [EMPTY_TARGET, target(1)],
        "incomplete_targets_b",
    ),
    "incomplete_targets_b": FixtureInfo(
        incomplete_targets_b,
        "Two latents, read under {∅, {H1}}",
        [EMPTY_TARGET, target(1)],
        "incomplete_targets_a",
    ),
    "triangle_a": FixtureInfo(
        triangle_a, "Triangle DAG, X0 -> X1", partner="triangle_b"
    ),
    "triangle_b": FixtureInfo(
        triangle_b, "Triangle DAG, X1 -> X0", partner="triangle_a"
    ),
    "replaceable": FixtureInfo(replaceable, "{X1} is a replaceable subset"),
    "fractured_real": FixtureInfo(
        fractured_real, "Fractured subset that is a real child set"
    ),
    "pure_imaginary": FixtureInfo(
        pure_imaginary, "Imaginary subset under the pure-child condition"
    ),
    "non_maximal": FixtureInfo(
        non_maximal, "Not maximal: H2 -> H0 can be added", partner="maximal"
    ),
    "maximal": FixtureInfo(
        maximal, "non_maximal with H2 -> H0 added", partner="non_maximal"
    ),
    "replace_real": FixtureInfo(replace_real, "Replaceable subset of a real cover"),
    "no_fractured": FixtureInfo(no_fractured, "Collider without fractured subsets"),
}


def fixture_names() -> List[str]:
    return sorted(FIXTURES)


def _info(name: str) -> FixtureInfo:
    if name not in FIXTURES:
        raise ValueError(f"Fixture '{name}' not found. Available: {fixture_names()}")
    return FIXTURES[name]


def get_fixture(name: str) -> Fixture:
    return _info(name).build()


def get_model(name: str) -> MeasurementModel:
    """Fixture by name, required to be a measurement model."""
    graph = get_fixture(name)
    if not isinstance(graph, MeasurementModel):
        raise ValueError(f"Fixture '{name}' is a DAG, not a measurement model")
    return graph


def get_dag(name: str) -> Dag:
    """Fixture by name as a DAG; measurement models give their latent DAG."""
    graph = get_fixture(name)
    return graph.latent_dag if isinstance(graph, MeasurementModel) else graph


def fixture_targets(name: str) -> Optional[List[InterventionTarget]]:
    return _info(name).targets


def fixture_partner(name: str) -> Optional[str]:
    return _info(name).partner
