"""
mmident - identification of latent measurement models from unknown interventions.

This package recovers a latent causal measurement model (which latents
cause which observed variables, and the latent DAG up to unorientable
edges) from unlabeled single-node hard interventions on the latents.

Key features:
- Graph oracle and Chatterjee-based sample front ends
- Maximal valid subset calculus with replaceable, fractured and
  imaginary subset diagnostics
- Bipartite recovery (no-imaginary and pure-child routes) and latent
  skeleton and orientation recovery
- Isolated-edge equivalence experiments
- Seeded simulation and batch SHD experiments

Everything is driven through the ``mmident`` command-line harness or the
``core`` modules directly.
"""

__version__ = "1.0.0"

from .core.graph import Dag, MeasurementModel
from .core.recovery import RecoveredModel, full_pipeline
from .harness import MMIdentHarness

__all__ = [
    "Dag",
    "MeasurementModel",
    "MMIdentHarness",
    "RecoveredModel",
    "full_pipeline",
]
