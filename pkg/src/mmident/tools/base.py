"""
Base classes and utilities for mmident commands.

This module provides the foundation for every CLI command, including:
- Base command class with common functionality
- Error handling and exit-code mapping
- Manifest bookkeeping for written outputs
- Logging setup

All command implementations inherit from CommandTool so that they time,
log, and report failures the same way.
"""

import json
import os
import time
from typing import Any, List, NamedTuple, Optional

from .. import __version__
from ..config.models import Config
from ..core.errors import (
    GraphError,
    IdentificationError,
    InconsistentInputError,
    PipelineStageError,
    SearchGuardExceeded,
)
from ..core.logging import get_logger, log_command_call
from ..core.manifest import ManifestStore, RunManifest
from ..formatting import ReportFormatters

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_INTERNAL_ERROR = 2

INPUT_ERRORS = (
    ValueError,
    FileNotFoundError,
    GraphError,
    SearchGuardExceeded,
    InconsistentInputError,
)


class CommandOutcome(NamedTuple):
    """What the harness writes: stdout text, stderr text and the exit code."""

    exit_code: int
    output: str = ""
    error: Optional[str] = None


class CommandTool:
    """Base class for mmident commands.

    This class provides common functionality used by all commands:
    - Access to the validated configuration
    - Standardized logging
    - Error handling with exit codes
    - JSON output and manifest helpers
    - Timing of each command
    """

    def __init__(self, config: Config):
        """Initialize the tool.

        Args:
            config: Validated harness configuration
        """
        self.config = config
        self.logger = get_logger(f"tools.{self.__class__.__name__.lower()}")

    def _handle_error(self, command: str, error: Exception) -> CommandOutcome:
        """Map an exception to an exit code and a JSON error object.

        Pipeline stage failures are reported with the stage name and the
        type of the underlying error, which also decides the exit code.

        Args:
            command: Command that failed
            error: The exception raised while running it

        Returns:
            CommandOutcome with no stdout and the error object for stderr
        """
        stage = None
        cause = error
        if isinstance(error, PipelineStageError):
            stage = error.stage
            cause = error.cause
        elif isinstance(error, IdentificationError):
            stage = error.stage

        exit_code = (
            EXIT_INPUT_ERROR if isinstance(cause, INPUT_ERRORS) else EXIT_INTERNAL_ERROR
        )
        message = str(error)
        if exit_code == EXIT_INTERNAL_ERROR:
            self.logger.exception(f"Internal error in {command}: {message}")

        return CommandOutcome(
            exit_code,
            "",
            ReportFormatters.format_error(
                command, type(cause).__name__, message, stage
            ),
        )

    def _execute_with_logging(
        self, command: str, target: str, func, *args, **kwargs
    ) -> CommandOutcome:
        """Execute a command body with logging and error handling.

        Args:
            command: Command name for logging
            target: What the command runs on
            func: Callable returning the stdout text
            *args: Positional arguments for func
            **kwargs: Keyword arguments for func

        Returns:
            CommandOutcome with the command's output or its error
        """
        start_time = time.time()

        try:
            output = func(*args, **kwargs)
            duration_ms = (time.time() - start_time) * 1000
            log_command_call(self.logger, command, target, True, duration_ms)
            return CommandOutcome(EXIT_OK, output)
        except Exception as e:
            duration_ms = (time.time() - start_time) * 1000
            log_command_call(self.logger, command, target, False, duration_ms, str(e))
            return self._handle_error(command, e)

    def _validate_required_params(self, **params) -> None:
        """Validate that required parameters are provided.

        Args:
            **params: Parameters to validate

        Raises:
            ValueError: If any required parameter is missing
        """
        for name, value in params.items():
            if value is None or (isinstance(value, str) and not value.strip()):
                raise ValueError(f"Parameter '{name}' is required")

    def _write_json(self, path: str, data: Any) -> str:
        """Write ``data`` as indented JSON, creating parent directories."""
        directory = os.path.dirname(path)
        try:
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(path, "w", encoding="utf-8") as f:
                f.write(ReportFormatters.format_json(data))
                f.write("\n")
        except OSError as e:
            raise ValueError(f"Cannot write {path}: {e}") from e
        return path

    def _write_report(
        self,
        command: str,
        path: str,
        data: Any,
        config: Any,
        seed: Optional[int] = None,
    ) -> str:
        """Write one JSON report and record it in its directory's manifest.

        The path is checked against existing manifests before anything
        is written.
        """
        out_dir = os.path.dirname(path) or "."
        ManifestStore(out_dir).check_available([path])
        self._write_json(path, data)
        self._record_manifest(command, out_dir, [path], config, seed)
        return path

    def _record_manifest(
        self,
        command: str,
        out_dir: str,
        outputs: List[str],
        config: Any,
        seed: Optional[int] = None,
    ) -> RunManifest:
        """Append the command's manifest to ``out_dir``."""
        config_json = json.loads(ReportFormatters.format_json(config))
        manifest = RunManifest(
            command=command,
            config=config_json,
            seed=seed,
            version=__version__,
            outputs=outputs,
        )
        return ManifestStore(out_dir).append(manifest)
