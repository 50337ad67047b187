"""
Command-line harness for mmident.

This module binds configuration, logging and the command tools to an
argparse interface, providing:
- Configuration loading (--config or MMIDENT_CONFIG)
- Logging setup
- Subcommand registration and dispatch
- Exit codes 0 / 1 / 2 (ok / input error / internal error)

Values from a configuration file take precedence over command-line
flags; flags fill in whatever the file leaves at its defaults.
"""

import argparse
import sys
from typing import List, Optional, TextIO

from . import __version__
from .config.loader import load_config, merge_overrides
from .config.models import (
    Config,
    EquivParams,
    RecoverParams,
    SimulateParams,
    SubsetsParams,
    Table1Params,
)
from .core.fixtures import FIXTURES, fixture_names
from .core.logging import setup_logging
from .formatting import ReportFormatters
from .tools.base import EXIT_INPUT_ERROR, EXIT_OK, CommandOutcome
from .tools.definitions import (
    EQUIV_DESC,
    FIXTURES_DESC,
    RECOVER_DESC,
    SIMULATE_DESC,
    SUBSETS_DESC,
    TABLE1_DESC,
)
from .tools.equiv import EquivalenceTool
from .tools.recover import RecoverTool
from .tools.simulate import SimulateTool
from .tools.subsets import SubsetTool
from .tools.table1 import ExperimentTool


class _ArgumentParser(argparse.ArgumentParser):
    """Parser that reports usage errors as input errors instead of exiting."""

    def error(self, message: str):
        raise ValueError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="mmident",
        description="Identify latent measurement models from unknown interventions",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="Configuration JSON (or MMIDENT_CONFIG)")
    parser.add_argument(
        "--format", choices=["json", "text"], default="json", help="Output format"
    )
    parser.add_argument("--log-level", help="Override logging.level")

    sub = parser.add_subparsers(dest="command", required=True)

    simulate = sub.add_parser(
        "simulate", help="Simulate data", description=SIMULATE_DESC
    )
    simulate.add_argument("--out-dir", required=True)
    simulate.add_argument("--m", type=int)
    simulate.add_argument("--n", type=int)
    simulate.add_argument("--regime", choices=["pure_child", "single_source"])
    simulate.add_argument("--seed", type=int)
    simulate.add_argument("--samples", type=int)
    simulate.add_argument("--latent-density", type=float)
    simulate.add_argument("--extra-density", type=float)

    recover = sub.add_parser(
        "recover", help="Recover a model", description=RECOVER_DESC
    )
    recover.add_argument("--in-dir")
    recover.add_argument("--fixture", choices=fixture_names())
    recover.add_argument("--mode", choices=["oracle", "samples"], default="oracle")
    recover.add_argument(
        "--route", choices=["pure_child", "no_imaginary"], default="pure_child"
    )
    recover.add_argument("--threshold", type=float)
    recover.add_argument("--out")

    table1 = sub.add_parser("table1", help="SHD batch", description=TABLE1_DESC)
    table1.add_argument("--runs", type=int)
    table1.add_argument("--mode", choices=["oracle", "samples"])
    table1.add_argument("--seed", type=int)
    table1.add_argument("--samples", type=int)
    table1.add_argument("--threshold", type=float)
    table1.add_argument("--n-jobs", type=int)
    table1.add_argument(
        "--require-assumptions",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="Redraw graphs until the identifiability assumptions hold",
    )
    table1.add_argument("--out")

    equiv = sub.add_parser(
        "equiv", help="Equivalence checks", description=EQUIV_DESC
    )
    equiv.add_argument(
        "action", choices=["iec", "remap-check", "distinguish", "maximal"]
    )
    equiv.add_argument("--graph")
    equiv.add_argument("--other")
    equiv.add_argument("--fixture", choices=fixture_names())
    equiv.add_argument("--other-fixture", choices=fixture_names())
    equiv.add_argument("--edge", type=int, nargs=2, metavar=("SOURCE", "TARGET"))

    subsets = sub.add_parser(
        "subsets", help="Subset reports", description=SUBSETS_DESC
    )
    subsets.add_argument("--fixture", choices=fixture_names())
    subsets.add_argument("--graph")
    subsets.add_argument("--in-dir")

    sub.add_parser("fixtures", help="List named fixtures", description=FIXTURES_DESC)

    return parser


class MMIdentHarness:
    """Main harness class for mmident."""

    def __init__(
        self, config_path: Optional[str] = None, log_level: Optional[str] = None
    ):
        """Initialize the harness.

        Args:
            config_path: Path to configuration file
            log_level: Optional override of the configured log level
        """
        self.config = load_config(config_path)
        if log_level:
            self.config = merge_overrides(self.config, "logging", {"level": log_level})
        self.logger = setup_logging(self.config.logging)
        self._init_tools()

    def _init_tools(self) -> None:
        self.simulate_tool = SimulateTool(self.config)
        self.recover_tool = RecoverTool(self.config)
        self.experiment_tool = ExperimentTool(self.config)
        self.equivalence_tool = EquivalenceTool(self.config)
        self.subset_tool = SubsetTool(self.config)

    def _with_config(self, config: Config) -> None:
        self.config = config
        self._init_tools()

    def dispatch(self, args: argparse.Namespace) -> CommandOutcome:
        """Validate one parsed command and run it."""
        fmt = args.format
        self.logger.debug(f"Dispatching {args.command}")

        if args.command == "simulate":
            config = merge_overrides(
                self.config,
                "generator",
                {
                    "m": args.m,
                    "n": args.n,
                    "regime": args.regime,
                    "seed": args.seed,
                    "latent_edge_density": args.latent_density,
                    "bipartite_extra_density": args.extra_density,
                },
            )
            config = merge_overrides(config, "sem", {"samples": args.samples})
            self._with_config(config)
            params = SimulateParams(out_dir=args.out_dir, generator=config.generator)
            return self.simulate_tool.simulate(params, fmt)

        if args.command == "recover":
            params = RecoverParams(
                in_dir=args.in_dir,
                fixture=args.fixture,
                mode=args.mode,
                route=args.route,
                threshold=args.threshold,
                out=args.out,
            )
            return self.recover_tool.recover(params, fmt)

        if args.command == "table1":
            config = merge_overrides(
                self.config,
                "experiment",
                {
                    "runs": args.runs,
                    "mode": args.mode,
                    "seed": args.seed,
                    "n_jobs": args.n_jobs,
                    "require_assumptions": args.require_assumptions,
                },
            )
            config = merge_overrides(config, "sem", {"samples": args.samples})
            config = merge_overrides(
                config, "independence", {"threshold": args.threshold}
            )
            self._with_config(config)
            params = Table1Params(
                runs=config.experiment.runs, mode=config.experiment.mode, out=args.out
            )
            return self.experiment_tool.table1(params, fmt)

        if args.command == "equiv":
            params = EquivParams(
                action=args.action,
                graph=args.graph,
                other=args.other,
                fixture=args.fixture,
                other_fixture=args.other_fixture,
                edge=tuple(args.edge) if args.edge else None,
            )
            return self.equivalence_tool.equiv(params, fmt)

        if args.command == "subsets":
            params = SubsetsParams(
                fixture=args.fixture, graph=args.graph, in_dir=args.in_dir
            )
            return self.subset_tool.subsets(params, fmt)

        if args.command == "fixtures":
            listing = {name: FIXTURES[name].description for name in fixture_names()}
            return CommandOutcome(EXIT_OK, ReportFormatters.format_json(listing))

        raise ValueError(f"Unknown command: {args.command}")


def run(
    argv: Optional[List[str]] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    """Parse ``argv``, run the command, write its output; return the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    command = "mmident"

    try:
        args = build_parser().parse_args(argv)
        command = args.command
        harness = MMIdentHarness(args.config, args.log_level)
        outcome = harness.dispatch(args)
    except (ValueError, FileNotFoundError) as e:
        outcome = CommandOutcome(
            EXIT_INPUT_ERROR,
            "",
            ReportFormatters.format_error(command, type(e).__name__, str(e)),
        )

    if outcome.output:
        stdout.write(outcome.output + "\n")
    if outcome.error:
        stderr.write(outcome.error + "\n")
    return outcome.exit_code
