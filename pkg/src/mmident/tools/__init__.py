"""mmident command implementations."""

from .base import CommandOutcome, CommandTool
from .equiv import EquivalenceTool
from .recover import RecoverTool
from .simulate import SimulateTool
from .subsets import SubsetTool
from .table1 import ExperimentTool

__all__ = [
    "CommandOutcome",
    "CommandTool",
    "EquivalenceTool",
    "ExperimentTool",
    "RecoverTool",
    "SimulateTool",
    "SubsetTool",
]
