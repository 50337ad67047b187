"""
Report formatters for mmident.

This module turns report models into the strings the harness writes:
JSON documents (the default) or the plain-text renderings from
ReportTemplates. It also builds the machine-parsable error object
written to stderr when a command fails.
"""

import json
from typing import Any, Dict, List, Literal, Optional, Sequence

from pydantic import BaseModel

from ..core.recovery import RecoveredModelReport
from ..core.simdata import ExperimentRun
from ..core.subsets import SubsetReport
from .templates import ReportTemplates

OutputFormat = Literal["json", "text"]


def _plain(data: Any) -> Any:
    if isinstance(data, BaseModel):
        return data.model_dump(mode="json")
    if isinstance(data, (list, tuple)):
        return [_plain(item) for item in data]
    if isinstance(data, dict):
        return {key: _plain(value) for key, value in data.items()}
    return data


class ReportFormatters:
    """Formatter collection for mmident reports.

    Every method returns a single string; ``fmt`` selects JSON or text.
    """

    @staticmethod
    def format_json(data: Any) -> str:
        """Serialize models, lists and mappings as indented JSON."""
        return json.dumps(_plain(data), indent=2, ensure_ascii=False)

    @staticmethod
    def format_table1(runs: List[ExperimentRun], fmt: OutputFormat = "json") -> str:
        if fmt == "text":
            return ReportTemplates.table1(runs)
        return ReportFormatters.format_json({"cells": runs})

    @staticmethod
    def format_recovered(
        report: RecoveredModelReport,
        subsets: Optional[List[SubsetReport]] = None,
        fmt: OutputFormat = "json",
    ) -> str:
        """Format a recovery result with its subset diagnostics.

        Args:
            report: Recovered model
            subsets: SubsetReport per maximal valid subset
            fmt: json or text

        Returns:
            Formatted string
        """
        subsets = subsets or []
        if fmt == "text":
            parts = [ReportTemplates.recovered_model(report)]
            if subsets:
                parts.append(ReportTemplates.subset_reports(subsets))
            return "\n\n".join(parts)
        return ReportFormatters.format_json({"model": report, "subsets": subsets})

    @staticmethod
    def format_subsets(reports: List[SubsetReport], fmt: OutputFormat = "json") -> str:
        if fmt == "text":
            return ReportTemplates.subset_reports(reports)
        return ReportFormatters.format_json({"subsets": reports})

    @staticmethod
    def format_equivalence(
        action: str, result: Dict[str, Any], fmt: OutputFormat = "json"
    ) -> str:
        result = _plain(result)
        if fmt == "text":
            return ReportTemplates.equivalence(action, result)
        return ReportFormatters.format_json({"action": action, **result})

    @staticmethod
    def format_command_result(
        command: str,
        target: str,
        outputs: Sequence[str],
        details: Optional[str] = None,
        fmt: OutputFormat = "json",
    ) -> str:
        if fmt == "text":
            return ReportTemplates.command_result(command, target, outputs, details)
        data: Dict[str, Any] = {
            "command": command,
            "target": target,
            "outputs": list(outputs),
            "status": "ok",
        }
        if details:
            data["details"] = details
        return ReportFormatters.format_json(data)

    @staticmethod
    def format_error(
        command: str, error_type: str, message: str, stage: Optional[str] = None
    ) -> str:
        """Single-line JSON error object for stderr.

        Args:
            command: Command that failed
            error_type: Exception class name
            message: User-facing message
            stage: Pipeline stage, when the failure has one

        Returns:
            JSON string {"error": {...}}
        """
        return json.dumps(
            {
                "error": {
                    "command": command,
                    "type": error_type,
                    "message": message,
                    "stage": stage,
                }
            },
            ensure_ascii=False,
        )
