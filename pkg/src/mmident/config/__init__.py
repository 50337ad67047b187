"""Configuration management for mmident."""

from .loader import load_config
from .models import (
    Config,
    ExperimentConfig,
    GeneratorConfig,
    IndependenceTestConfig,
    LoggingConfig,
    SearchConfig,
    SemConfig,
)

__all__ = [
    "load_config",
    "Config",
    "ExperimentConfig",
    "GeneratorConfig",
    "IndependenceTestConfig",
    "LoggingConfig",
    "SearchConfig",
    "SemConfig",
]
