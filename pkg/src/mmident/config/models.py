"""
Configuration models for the mmident harness.

This module defines Pydantic models for configuration validation:
- Random measurement-model generation
- Nonlinear SEM sampling
- Independence testing
- Exhaustive-search guards
- Experiment batches
- Logging configuration
- Command parameter models

The models provide:
- Type validation
- Default values
- Field descriptions
- Cross-field checks (feasible generator settings)
"""

from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

Regime = Literal["pure_child", "single_source"]
Route = Literal["no_imaginary", "pure_child"]
Mode = Literal["oracle", "samples"]


class LoggingConfig(BaseModel):
    """Model for logging configuration.

    Defines logging parameters with sensible defaults.
    Supports both file and console logging with
    customizable format and log levels.
    """

    level: str = Field(
        default="INFO", description="Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)"
    )
    format: str = Field(
        default="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        description="Log format string",
    )
    file: Optional[str] = Field(
        default=None, description="Log file path (None for console only)"
    )
    console: bool = Field(default=True, description="Enable console logging")


class GeneratorConfig(BaseModel):
    """Model for random measurement-model generation.

    Both regimes give every latent at least one pure child, so the
    number of observed variables can never be smaller than the number
    of latents.
    """

    m: int = Field(default=2, ge=1, description="Number of latent variables")
    n: int = Field(default=5, ge=1, description="Number of observed variables")
    regime: Regime = Field(
        default="pure_child", description="Graph regime (pure_child, single_source)"
    )
    latent_edge_density: float = Field(
        default=0.5, ge=0.0, le=1.0, description="Probability of each latent edge"
    )
    bipartite_extra_density: float = Field(
        default=0.3,
        ge=0.0,
        le=1.0,
        description="Probability of a latent parent for non-pure observed nodes",
    )
    seed: int = Field(default=0, ge=0, description="Generator seed (64-bit)")

    @model_validator(mode="after")
    def _check_feasible(self) -> "GeneratorConfig":
        if self.n < self.m:
            raise ValueError(
                f"Infeasible generator settings: n={self.n} < m={self.m};"
                " every latent needs a pure child"
            )
        return self


class SemConfig(BaseModel):
    """Model for the quadratic structural equation model.

    Each edge carries f(v) = c * v**2 with |c| drawn uniformly from the
    coefficient range and a random sign. Hard interventions replace the
    targeted node with an independent normal draw.
    """

    coefficient_low: float = Field(
        default=0.5, gt=0.0, description="Lower bound of |c| for edge mechanisms"
    )
    coefficient_high: float = Field(
        default=1.5, gt=0.0, description="Upper bound of |c| for edge mechanisms"
    )
    noise_scale: float = Field(
        default=1.0, gt=0.0, description="Standard deviation of additive noise"
    )
    intervention_mean: float = Field(
        default=2.0, description="Mean of the intervened node's distribution"
    )
    intervention_scale: float = Field(
        default=1.0, gt=0.0, description="Scale of the intervened node's distribution"
    )
    samples: int = Field(
        default=10000, ge=1, description="Samples drawn per interventional distribution"
    )

    @model_validator(mode="after")
    def _check_range(self) -> "SemConfig":
        if self.coefficient_high < self.coefficient_low:
            raise ValueError("coefficient_high must be >= coefficient_low")
        return self


class IndependenceTestConfig(BaseModel):
    """Model for the Chatterjee-based marginal independence test."""

    threshold: Optional[float] = Field(
        default=None,
        description="Fixed cutoff on the symmetrized statistic (None to calibrate)",
    )
    permutations: int = Field(
        default=499, ge=1, description="Permutations used for cutoff calibration"
    )
    level: float = Field(
        default=0.01,
        gt=0.0,
        lt=1.0,
        description="Familywise level: chance of any spurious edge in one Udg",
    )
    min_samples: int = Field(
        default=20, ge=2, description="Minimum sample count per distribution"
    )
    calibration_seed: int = Field(
        default=20240, ge=0, description="Seed of the permutation null"
    )


class SearchConfig(BaseModel):
    """Model for exhaustive-search guards.

    Every exhaustive procedure refuses inputs above these sizes and
    reports the result as undecided instead.
    """

    max_maximals: int = Field(
        default=20,
        ge=1,
        description="Largest maximal-valid-subset pool searched for collections",
    )
    max_exhaustive_nodes: int = Field(
        default=8, ge=1, description="Largest node universe for full d-sep families"
    )
    max_latents_for_latent_additions: int = Field(
        default=5, ge=1, description="Largest latent count for latent-edge additions"
    )


class ExperimentConfig(BaseModel):
    """Model for batch experiments (Table-1 style reports)."""

    runs: int = Field(default=100, ge=1, description="Runs per cell")
    seed: int = Field(default=0, ge=0, description="Root seed of the batch")
    n_jobs: int = Field(default=1, description="Parallel workers (joblib)")
    cells: List[Tuple[int, int]] = Field(
        default_factory=lambda: [(2, 5), (3, 8), (4, 7), (4, 8)],
        description="(m, n) combinations",
    )
    regimes: List[Regime] = Field(
        default_factory=lambda: ["pure_child", "single_source"],
        description="Graph regimes",
    )
    mode: Mode = Field(default="samples", description="oracle or samples")
    latent_edge_density: float = Field(default=0.5, ge=0.0, le=1.0)
    bipartite_extra_density: float = Field(default=0.3, ge=0.0, le=1.0)
    search_guard: int = Field(
        default=48,
        ge=1,
        description="max_maximals used inside experiment runs",
    )
    require_assumptions: bool = Field(
        default=True,
        description="Redraw graphs until the identifiability assumptions hold",
    )
    max_redraws: int = Field(
        default=50,
        ge=1,
        description="Graph redraws per run when assumptions are required",
    )


class Config(BaseModel):
    """Root configuration model.

    Combines all configuration models into a single validated
    configuration object.
    """

    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    generator: GeneratorConfig = Field(default_factory=GeneratorConfig)
    sem: SemConfig = Field(default_factory=SemConfig)
    independence: IndependenceTestConfig = Field(
        default_factory=IndependenceTestConfig
    )
    search: SearchConfig = Field(default_factory=SearchConfig)
    experiment: ExperimentConfig = Field(default_factory=ExperimentConfig)


# Parameter models for command validation
class SimulateParams(BaseModel):
    """Parameters for the simulate command."""

    out_dir: str = Field(description="Directory receiving graph, CSVs and manifest")
    generator: GeneratorConfig = Field(default_factory=GeneratorConfig)
    samples: Optional[int] = Field(
        default=None, ge=1, description="Override of sem.samples"
    )


class RecoverParams(BaseModel):
    """Parameters for the recover command."""

    in_dir: Optional[str] = Field(
        default=None, description="Directory of Udg JSONs or CSV sample files"
    )
    fixture: Optional[str] = Field(
        default=None, description="Named fixture used instead of in_dir"
    )
    mode: Mode = Field(default="oracle", description="oracle (Udg JSON) or samples")
    route: Route = Field(default="pure_child", description="Bipartite recovery route")
    threshold: Optional[float] = Field(
        default=None, description="Fixed independence cutoff for sample mode"
    )
    out: Optional[str] = Field(default=None, description="Output JSON path")

    @model_validator(mode="after")
    def _check_source(self) -> "RecoverParams":
        if not self.in_dir and not self.fixture:
            raise ValueError("Either 'in_dir' or 'fixture' is required")
        return self


class Table1Params(BaseModel):
    """Parameters for the table1 command."""

    runs: int = Field(default=100, ge=10, description="Runs per cell")
    mode: Mode = Field(default="samples", description="oracle or samples")
    out: Optional[str] = Field(default=None, description="Output JSON path")


class EquivParams(BaseModel):
    """Parameters for the equiv command family."""

    action: Literal["iec", "remap-check", "distinguish", "maximal"] = Field(
        description="Equivalence experiment to run"
    )
    graph: Optional[str] = Field(default=None, description="Graph JSON path")
    other: Optional[str] = Field(default=None, description="Second graph JSON path")
    fixture: Optional[str] = Field(default=None, description="Named fixture")
    other_fixture: Optional[str] = Field(
        default=None, description="Second named fixture"
    )
    edge: Optional[Tuple[int, int]] = Field(
        default=None, description="Isolated edge for remap-check"
    )


class SubsetsParams(BaseModel):
    """Parameters for the subsets command."""

    graph: Optional[str] = Field(default=None, description="Graph JSON path")
    in_dir: Optional[str] = Field(default=None, description="Directory of Udg JSONs")
    fixture: Optional[str] = Field(default=None, description="Named fixture")
