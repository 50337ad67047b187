"""
Configuration loading utilities for the mmident harness.

This module handles loading and validation of harness configuration:
- JSON configuration file loading
- Environment variable handling
- Configuration validation using Pydantic models
- Error handling for invalid configurations
"""

import json
import os
from typing import Any, Dict, Optional

from .models import Config

CONFIG_ENV_VAR = "MMIDENT_CONFIG"

KNOWN_SECTIONS = {
    "logging",
    "generator",
    "sem",
    "independence",
    "search",
    "experiment",
}


def load_config(config_path: Optional[str] = None) -> Config:
    """Load and validate configuration from a JSON file.

    Performs the following steps:
    1. Determines config path from parameter or environment variable
    2. Falls back to defaults when no path is available
    3. Loads the JSON configuration file
    4. Rejects unknown sections
    5. Converts to a typed Config object using Pydantic

    Args:
        config_path: Path to the JSON configuration file.
                    If not provided, uses the MMIDENT_CONFIG environment variable

    Returns:
        Validated Config object

    Raises:
        ValueError: If the JSON is invalid, the document is not an object,
                 it names unknown sections, or field values are invalid
        FileNotFoundError: If config file doesn't exist
    """
    if not config_path:
        config_path = os.getenv(CONFIG_ENV_VAR)

    if not config_path:
        return Config()

    try:
        with open(config_path, "r", encoding="utf-8") as f:
            config_data = json.load(f)
    except FileNotFoundError:
        raise FileNotFoundError(f"Configuration file not found: {config_path}")
    except json.JSONDecodeError as e:
        raise ValueError(f"Invalid JSON in config file: {e}")
    except Exception as e:
        raise ValueError(f"Failed to load config file: {e}")

    if not isinstance(config_data, dict):
        raise ValueError("Configuration must be a JSON object")

    unknown = sorted(set(config_data) - KNOWN_SECTIONS)
    if unknown:
        raise ValueError(f"Unknown configuration sections: {unknown}")

    try:
        config = Config(**config_data)
    except Exception as e:
        raise ValueError(f"Configuration validation failed: {e}")

    return config


def merge_overrides(config: Config, section: str, overrides: Dict[str, Any]) -> Config:
    """Return a copy of ``config`` with CLI flag values merged into a section.

    Values already present in a loaded configuration file win over flags,
    so only flags for fields the file left at their defaults are applied.
    """
    current = getattr(config, section)
    explicit = current.model_fields_set
    update = {
        key: value
        for key, value in overrides.items()
        if value is not None and key not in explicit
    }
    if not update:
        return config
    merged = current.model_validate({**current.model_dump(), **update})
    return config.model_copy(update={section: merged})


def create_example_config() -> dict:
    """Create an example configuration dictionary.

    Returns:
        Dictionary containing example configuration that can be
        saved as a JSON file for users to customize.
    """
    return {
        "logging": {
            "level": "INFO",
            "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            "file": None,
            "console": True,
        },
        "generator": {
            "m": 2,
            "n": 5,
            "regime": "pure_child",
            "latent_edge_density": 0.5,
            "bipartite_extra_density": 0.3,
            "seed": 0,
        },
        "sem": {
            "coefficient_low": 0.5,
            "coefficient_high": 1.5,
            "noise_scale": 1.0,
            "intervention_mean": 2.0,
            "intervention_scale": 1.0,
            "samples": 10000,
        },
        "independence": {
            "threshold": None,
            "permutations": 499,
            "level": 0.01,
            "min_samples": 20,
            "calibration_seed": 20240,
        },
        "search": {
            "max_maximals": 20,
            "max_exhaustive_nodes": 8,
            "max_latents_for_latent_additions": 5,
        },
        "experiment": {
            "runs": 100,
            "seed": 0,
            "n_jobs": 1,
            "cells": [[2, 5], [3, 8], [4, 7], [4, 8]],
            "regimes": ["pure_child", "single_source"],
            "mode": "samples",
            "latent_edge_density": 0.5,
            "bipartite_extra_density": 0.3,
            "search_guard": 48,
            "require_assumptions": True,
            "max_redraws": 50,
        },
    }
