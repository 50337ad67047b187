"""
Command definitions and descriptions for the mmident CLI.

This module contains the help text for every subcommand registered by
the harness. Descriptions are shown by ``mmident <command> --help``.
"""

SIMULATE_DESC = """
Simulate one random measurement model and its interventional data.

Writes the ground-truth graph (graph.json), one CSV per distinct
interventional distribution over the complete target family, the
matching oracle Udg JSONs, and a manifest. Distribution files carry no
target labels.

Parameters:
- out_dir: Directory receiving the files (must not already hold them)
- m, n, regime, seed: Generator settings
- samples: Samples per distribution

Returns:
- Paths of the written files
"""

RECOVER_DESC = """
Recover a measurement model from unlabeled interventional distributions.

Runs the full pipeline: clique family, maximal valid subsets, bipartite
recovery along the chosen route, latent marginal family, and latent
orientation.

Parameters:
- in_dir: Udg JSONs (oracle mode) or CSV sample files (samples mode)
- fixture: Named example used instead of in_dir (oracle Udgs)
- route: pure_child or no_imaginary
- threshold: Fixed independence cutoff for samples mode

Returns:
- Recovered covers and latent PDAG
- SubsetReport for every maximal valid subset
"""

TABLE1_DESC = """
Batch SHD experiment over random measurement models.

For every (m, n) cell and regime, draws random graphs, recovers them
from oracle Udgs or sampled data, and reports mean SHD with its
standard error.

Parameters:
- runs: Runs per cell (at least 10)
- mode: oracle or samples
- require_assumptions: Redraw graphs until the identifiability
  assumptions hold (default on; --no-require-assumptions draws freely)
- out: Optional JSON output path

Returns:
- One summary per cell and regime
"""

EQUIV_DESC = """
Equivalence experiments under unknown single-node interventions.

Actions:
- iec: isolated-equivalence and Markov-equivalence of two DAGs
- remap-check: reversing an isolated edge is matched by swapping its
  endpoints' targets
- distinguish: a target of the first DAG the second cannot imitate
- maximal: single-edge maximality and assumption diagnostics

Graphs come from --graph/--other JSON files or --fixture/--other-fixture.
"""

SUBSETS_DESC = """
Classify every maximal valid subset of a clique family.

Each subset is reported with its superset witnesses (replaceable), a
fractured certificate or an undecided verdict, and, when ground truth
is available, whether it is imaginary.

Sources: --fixture, --graph (oracle Udgs of a graph JSON) or --in-dir
(Udg JSONs).
"""

FIXTURES_DESC = """
List the named example graphs usable with --fixture.
"""
