"""
Template system for mmident report formatting.

This module provides structured templates for rendering reports into
human-readable text. Templates are organized by report type: batch
SHD tables, recovered models, subset classifications, equivalence
experiments, assumption diagnostics and command results.
"""

from typing import Any, Dict, List, Optional, Sequence

from ..core.equivalence import AssumptionReport
from ..core.recovery import RecoveredModelReport
from ..core.simdata import ExperimentRun
from ..core.subsets import SubsetReport


def _xs(indices: Sequence[int]) -> str:
    return "{" + ",".join(f"X{i}" for i in indices) + "}"


def _edge(edge: Sequence[int], arrow: str) -> str:
    return f"H{edge[0]} {arrow} H{edge[1]}"


class ReportTemplates:
    """Template collection for mmident reports.

    Provides static methods that build plain-text output from report
    models, one line list per report.
    """

    @staticmethod
    def table1(runs: List[ExperimentRun]) -> str:
        """Mean SHD ± standard error, one row per (m, n) cell.

        Args:
            runs: Cell summaries, any order

        Returns:
            Table with one column per regime
        """
        if not runs:
            return "No experiment runs"

        regimes = sorted({r.regime for r in runs})
        cells = sorted({(r.m, r.n) for r in runs})
        by_key = {(r.m, r.n, r.regime): r for r in runs}

        mode = runs[0].mode
        header = f"{'(m, n)':<10}" + "".join(f"{regime:>20}" for regime in regimes)
        lines = [f"SHD over {runs[0].runs} runs ({mode})", "", header]
        lines.append("-" * len(header))

        for m, n in cells:
            row = f"{f'({m}, {n})':<10}"
            for regime in regimes:
                run = by_key.get((m, n, regime))
                if run is None:
                    row += f"{'-':>20}"
                else:
                    row += f"{f'{run.mean:.2f} ± {run.standard_error:.2f}':>20}"
            lines.append(row)

        fallbacks = [
            f"  ({r.m}, {r.n}) {r.regime}: {r.status_counts()}"
            for r in sorted(runs, key=lambda r: (r.m, r.n, r.regime))
            if any(s != "ok" for s in r.statuses)
        ]
        if fallbacks:
            lines.extend(["", "Runs with fallbacks"] + fallbacks)

        return "\n".join(lines)

    @staticmethod
    def recovered_model(report: RecoveredModelReport) -> str:
        """Format a recovered measurement model.

        Args:
            report: Recovered model in report form

        Returns:
            Covers, then directed and undirected latent edges
        """
        lines = [f"Recovered model: {report.m} latents"]
        if report.route:
            lines.append(f"  Route: {report.route}")
        lines.append("")

        lines.append("Covers")
        for i, cover in enumerate(report.covers):
            lines.append(f"  H{i}: {_xs(cover)}")

        lines.append("")
        lines.append("Latent edges")
        if not report.directed and not report.undirected:
            lines.append("  (none)")
        for edge in report.directed:
            lines.append(f"  {_edge(edge, '->')}")
        for edge in report.undirected:
            lines.append(f"  {_edge(edge, '--')}  (unorientable)")

        if report.inferred_targets:
            targets = ", ".join(f"H{h}" for h in report.inferred_targets)
            lines.extend(["", f"Inferred targets: {targets}"])

        return "\n".join(lines)

    @staticmethod
    def subset_reports(reports: List[SubsetReport]) -> str:
        if not reports:
            return "No maximal valid subsets"

        lines = [f"Maximal valid subsets ({len(reports)})", ""]
        for report in reports:
            flags = []
            if report.replaceable:
                flags.append("replaceable")
            if report.fractured:
                flags.append("fractured")
            elif report.undecided:
                flags.append("fractured: undecided")
            if report.imaginary:
                flags.append("imaginary")
            elif report.covering_latent is not None:
                flags.append(f"inside H{report.covering_latent}")

            lines.append(f"{_xs(report.subset)}: {', '.join(flags) or 'plain'}")
            if report.superset_witnesses:
                witnesses = " ".join(_xs(w) for w in report.superset_witnesses)
                lines.append(f"  Supersets: {witnesses}")
            if report.fractured_witness:
                witness = " ".join(_xs(w) for w in report.fractured_witness)
                lines.append(f"  Complete collection avoiding it: {witness}")

        return "\n".join(lines)

    @staticmethod
    def assumptions(report: AssumptionReport) -> str:
        def mark(flag: bool) -> str:
            return "yes" if flag else "no"

        lines = [
            "Assumptions",
            f"  Children condition: {mark(report.children_condition)}",
            f"  Subset condition: {mark(report.subset_condition)}",
            f"  Pure children: {mark(report.pure_children)}",
            f"  Single source: {mark(report.single_source)}"
            f" (sources {', '.join(f'H{h}' for h in report.latent_sources)})",
            f"  Maximal: {mark(report.maximal)}",
        ]
        if report.maximality_violation:
            v = report.maximality_violation
            lines.append(
                f"    Violation: {v['kind']} edge {v['source']} -> {v['target']}"
                " keeps every family"
            )
        if not report.latent_additions_checked:
            lines.append("    Latent-edge additions not checked (too many latents)")
        lines.append(f"  Satisfied: {mark(report.satisfied)}")
        return "\n".join(lines)

    @staticmethod
    def equivalence(action: str, result: Dict[str, Any]) -> str:
        """Format an equivalence experiment result.

        Args:
            action: iec, remap-check, distinguish or maximal
            result: Result mapping produced by the equiv command

        Returns:
            Formatted verdict
        """
        lines = [f"Equivalence: {action}", ""]
        for key, value in result.items():
            if key == "assumptions":
                continue
            lines.append(f"  {key.replace('_', ' ').capitalize()}: {value}")

        if "assumptions" in result:
            lines.append("")
            lines.append(
                ReportTemplates.assumptions(AssumptionReport(**result["assumptions"]))
            )
        return "\n".join(lines)

    @staticmethod
    def command_result(
        command: str,
        target: str,
        outputs: Sequence[str],
        details: Optional[str] = None,
    ) -> str:
        lines = [
            f"Command {command} finished",
            f"  Target: {target}",
        ]
        if details:
            lines.append(f"  Details: {details}")
        if outputs:
            lines.append("  Outputs:")
            lines.extend(f"    {path}" for path in outputs)
        return "\n".join(lines)
