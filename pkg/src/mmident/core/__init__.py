"""Core algorithms and infrastructure for mmident."""

from .errors import (
    CycleError,
    GraphError,
    IdentificationError,
    InconsistentInputError,
    PipelineStageError,
    SearchGuardExceeded,
)
from .graph import Dag, MeasurementModel
from .logging import setup_logging
from .manifest import ManifestStore, RunManifest
from .recovery import RecoveredModel, full_pipeline

__all__ = [
    "setup_logging",
    "CycleError",
    "GraphError",
    "IdentificationError",
    "InconsistentInputError",
    "PipelineStageError",
    "SearchGuardExceeded",
    "Dag",
    "MeasurementModel",
    "ManifestStore",
    "RunManifest",
    "RecoveredModel",
    "full_pipeline",
]
