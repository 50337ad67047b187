"""Exception hierarchy for mmident."""

from typing import Any, Dict, Optional, Sequence


class IdentificationError(Exception):
    """Base exception for identification failures.

    Carries the pipeline stage that failed and a free-form details
    mapping that the command layer serializes into its error object.
    """

    def __init__(
        self,
        message: str,
        stage: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message)
        self.stage = stage
        self.details = details or {}


class GraphError(IdentificationError, ValueError):
    """Malformed graph or node arguments."""


class CycleError(GraphError):
    """Edges that would make a graph cyclic."""

    def __init__(self, cycle: Sequence[int], stage: Optional[str] = None):
        self.cycle = list(cycle)
        message = "Edges cause the cycle " + "->".join(map(str, self.cycle))
        super().__init__(message, stage=stage, details={"cycle": self.cycle})


class SearchGuardExceeded(IdentificationError):
    """An exhaustive search was refused; the answer is undecided."""

    def __init__(self, what: str, size: int, limit: int, stage: Optional[str] = None):
        super().__init__(
            f"Undecided: {what} has size {size}, above the search guard {limit}",
            stage=stage,
            details={"what": what, "size": size, "limit": limit},
        )
        self.size = size
        self.limit = limit


class InconsistentInputError(IdentificationError):
    """Algorithm input that violates the algorithm's assumptions."""


class PipelineStageError(IdentificationError):
    """Failure inside a named stage of the recovery pipeline."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(
            f"Stage '{stage}' failed: {cause}",
            stage=stage,
            details={"cause": type(cause).__name__},
        )
        self.cause = cause
