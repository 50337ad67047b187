"""
Batch experiments: random models, recovery, SHD against ground truth.

Runs of one cell are independent and execute through joblib. Each run
draws its graph, coefficients and noise from its own seed keys, so the
cell summary does not depend on worker scheduling.
"""

from typing import List, NamedTuple, Optional, Tuple

from joblib import Parallel, delayed

from ..config.models import (
    ExperimentConfig,
    GeneratorConfig,
    IndependenceTestConfig,
    Mode,
    Regime,
    Route,
    SemConfig,
)
from .equivalence import assumptions_hold
from .errors import PipelineStageError
from .graph import MeasurementModel
from .logging import get_logger
from .recovery import (
    LatentPdag,
    RecoveredModel,
    algorithm1_skeleton,
    full_pipeline,
    latent_marginal_family,
    recover_bipartite_no_imaginary,
    recover_bipartite_pure_child,
)
from .simdata import (
    ExperimentRun,
    canonical_model,
    gen_random_mm,
    make_sem,
    sem_sample,
    shd,
)
from .subsets import maximal_valid_subsets
from .udg import Udg, clique_family, oracle_udgs, udg_from_samples

logger = get_logger("experiments")

STATUS_OK = "ok"
STATUS_FALLBACK = "fallback_route"
STATUS_SKELETON = "skeleton_only"


class RunOutcome(NamedTuple):
    shd: int
    status: str
    recovered_latents: int


def route_for(regime: Regime) -> Route:
    """Pure-child graphs use the pure-child route; single-source the other."""
    return "pure_child" if regime == "pure_child" else "no_imaginary"


def draw_model(
    cfg: GeneratorConfig,
    run: int,
    require_assumptions: bool = False,
    max_redraws: int = 50,
) -> MeasurementModel:
    """Draw the run's model, redrawing until assumptions hold if required.

    Attempt 0 is the plain draw for the run, so a graph that already
    satisfies the assumptions is kept either way.
    """
    if not require_assumptions:
        return gen_random_mm(cfg, run)
    for attempt in range(max_redraws):
        model = gen_random_mm(cfg, run, attempt)
        if assumptions_hold(model):
            return model
    logger.warning(
        f"Run {run}: no assumption-satisfying graph in {max_redraws} redraws"
    )
    return model


def sample_udgs(
    model: MeasurementModel,
    samples: int,
    seed: int,
    run: int,
    sem_config: Optional[SemConfig] = None,
    test_config: Optional[IndependenceTestConfig] = None,
    threshold: Optional[float] = None,
) -> List[Udg]:
    """Empirical Udgs over the complete target family."""
    spec = make_sem(model, sem_config, seed, run)
    return [
        udg_from_samples(
            sem_sample(spec, t, samples, seed, run), threshold, test_config
        )
        for t in model.complete_targets()
    ]


def _skeleton_only(
    udgs: List[Udg], route: Route, max_maximals: int
) -> RecoveredModel:
    fam = clique_family(udgs)
    maximals = maximal_valid_subsets(fam)
    if route == "pure_child":
        covers = recover_bipartite_pure_child(fam, maximals, max_maximals)
    else:
        covers = recover_bipartite_no_imaginary(fam, maximals)
    skeleton = algorithm1_skeleton(latent_marginal_family(fam, covers))
    pdag = LatentPdag(len(covers), undirected=skeleton)
    return RecoveredModel(covers, pdag).canonical()


def recover_with_fallbacks(
    udgs: List[Udg], route: Route, max_maximals: int
) -> Tuple[RecoveredModel, str]:
    """Run the pipeline, degrading instead of aborting.

    An undecided or failed pure-child search falls back to the
    no-imaginary route; an inconsistent orientation step falls back to
    the undirected skeleton.
    """
    try:
        return full_pipeline(udgs, route, max_maximals), STATUS_OK
    except PipelineStageError as e:
        if e.stage == "algorithm2_orient":
            return _skeleton_only(udgs, route, max_maximals), STATUS_SKELETON
        if e.stage != "bipartite_pure_child":
            raise
        logger.debug(f"Pure-child route failed ({e}); using no-imaginary route")

    try:
        return full_pipeline(udgs, "no_imaginary", max_maximals), STATUS_FALLBACK
    except PipelineStageError as e:
        if e.stage != "algorithm2_orient":
            raise
        return _skeleton_only(udgs, "no_imaginary", max_maximals), STATUS_SKELETON


def run_once(
    regime: Regime,
    m: int,
    n: int,
    run: int,
    experiment: ExperimentConfig,
    mode: Mode,
    sem_config: Optional[SemConfig] = None,
    test_config: Optional[IndependenceTestConfig] = None,
    samples: Optional[int] = None,
    threshold: Optional[float] = None,
) -> RunOutcome:
    generator = GeneratorConfig(
        m=m,
        n=n,
        regime=regime,
        latent_edge_density=experiment.latent_edge_density,
        bipartite_extra_density=experiment.bipartite_extra_density,
        seed=experiment.seed,
    )
    model = draw_model(
        generator, run, experiment.require_assumptions, experiment.max_redraws
    )

    if mode == "oracle":
        udgs = oracle_udgs(model)
    else:
        sem_config = sem_config or SemConfig()
        count = samples or sem_config.samples
        udgs = sample_udgs(
            model, count, experiment.seed, run, sem_config, test_config, threshold
        )

    recovered, status = recover_with_fallbacks(
        udgs, route_for(regime), experiment.search_guard
    )
    return RunOutcome(shd(recovered, canonical_model(model)), status, recovered.m)


def run_cell(
    regime: Regime,
    m: int,
    n: int,
    experiment: ExperimentConfig,
    mode: Optional[Mode] = None,
    runs: Optional[int] = None,
    sem_config: Optional[SemConfig] = None,
    test_config: Optional[IndependenceTestConfig] = None,
    samples: Optional[int] = None,
    threshold: Optional[float] = None,
) -> ExperimentRun:
    """All runs of one (m, n, regime) cell, merged in run-index order."""
    mode = mode or experiment.mode
    runs = runs or experiment.runs

    outcomes = Parallel(n_jobs=experiment.n_jobs)(
        delayed(run_once)(
            regime,
            m,
            n,
            run,
            experiment,
            mode,
            sem_config,
            test_config,
            samples,
            threshold,
        )
        for run in range(runs)
    )

    if mode == "samples":
        samples = samples or (sem_config or SemConfig()).samples
    else:
        samples = None

    result = ExperimentRun.summarize(
        [o.shd for o in outcomes],
        m=m,
        n=n,
        regime=regime,
        mode=mode,
        seed=experiment.seed,
        samples=samples,
        threshold=threshold,
        statuses=[o.status for o in outcomes],
        recovered_latents=[o.recovered_latents for o in outcomes],
    )
    logger.info(
        f"Cell ({m},{n}) {regime} [{mode}]: SHD {result.mean:.2f}"
        f" ± {result.standard_error:.2f} over {result.runs} runs"
    )
    return result
