"""
Logging configuration for mmident.

This module provides centralized logging setup with support for:
- Multiple log levels
- File and console output
- Structured records for algorithm stages and commands
- Component-specific loggers
"""

import logging
import logging.handlers
import os
import sys
from typing import Optional

from ..config.models import LoggingConfig


def setup_logging(config: LoggingConfig) -> logging.Logger:
    """Setup logging configuration for the harness.

    Args:
        config: LoggingConfig object containing logging settings

    Returns:
        Logger instance for the main application

    Example:
        config = LoggingConfig(level="DEBUG", file="runs/mmident.log")
        logger = setup_logging(config)
        logger.info("Starting table1 batch")
    """
    root_logger = logging.getLogger()
    root_logger.handlers.clear()

    log_level = getattr(logging, config.level.upper(), logging.INFO)
    root_logger.setLevel(log_level)

    formatter = logging.Formatter(config.format, datefmt="%Y-%m-%d %H:%M:%S")

    if config.console:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(log_level)
        console_handler.setFormatter(formatter)
        root_logger.addHandler(console_handler)

    if config.file:
        try:
            log_dir = os.path.dirname(config.file)
            if log_dir and not os.path.exists(log_dir):
                os.makedirs(log_dir, exist_ok=True)

            file_handler = logging.handlers.RotatingFileHandler(
                config.file,
                maxBytes=10 * 1024 * 1024,  # 10MB
                backupCount=5,
                encoding="utf-8",
            )
            file_handler.setLevel(log_level)
            file_handler.setFormatter(formatter)
            root_logger.addHandler(file_handler)
        except Exception as e:
            console_logger = logging.getLogger("mmident.logging")
            console_logger.warning(f"Failed to setup file logging: {e}")

    logger = logging.getLogger("mmident.main")

    _setup_component_loggers(log_level)

    return logger


def _setup_component_loggers(log_level: int) -> None:
    """Setup component-specific loggers with appropriate levels.

    Args:
        log_level: Base log level to use for all components
    """
    component_loggers = [
        "mmident.core",
        "mmident.graph",
        "mmident.udg",
        "mmident.independence",
        "mmident.subsets",
        "mmident.recovery",
        "mmident.equivalence",
        "mmident.simdata",
        "mmident.experiments",
        "mmident.tools",
        "mmident.harness",
    ]

    for logger_name in component_loggers:
        logger = logging.getLogger(logger_name)
        logger.setLevel(log_level)

    # Third-party loggers stay quiet
    external_loggers = ["joblib", "numpy", "networkx"]

    for logger_name in external_loggers:
        logger = logging.getLogger(logger_name)
        logger.setLevel(logging.WARNING)


def get_logger(name: str) -> logging.Logger:
    """Get a logger instance for a specific component.

    Args:
        name: Component name (e.g., "recovery", "tools.recovertool")

    Returns:
        Logger instance for the component
    """
    return logging.getLogger(f"mmident.{name}")


def log_stage_call(
    logger: logging.Logger,
    stage: str,
    detail: Optional[str] = None,
    duration_ms: Optional[float] = None,
) -> None:
    """Log one algorithm stage with structured information.

    Args:
        logger: Logger instance to use
        stage: Stage name (e.g. "clique_family", "algorithm2_orient")
        detail: Short summary of the stage result
        duration_ms: Stage duration in milliseconds

    Example:
        log_stage_call(logger, "maximal_valid_subsets", "7 subsets", 1.8)
    """
    msg_parts = [f"Stage {stage}"]

    if detail:
        msg_parts.append(f"-> {detail}")

    if duration_ms is not None:
        msg_parts.append(f"({duration_ms:.1f}ms)")

    logger.debug(" ".join(msg_parts))


def log_command_call(
    logger: logging.Logger,
    command: str,
    target: str,
    success: bool,
    duration_ms: Optional[float] = None,
    error: Optional[str] = None,
) -> None:
    """Log CLI command executions with structured information.

    Args:
        logger: Logger instance to use
        command: Command name (simulate, recover, ...)
        target: What the command ran on (directory, fixture, cell)
        success: Whether the command succeeded
        duration_ms: Execution duration in milliseconds
        error: Error message if execution failed

    Example:
        log_command_call(logger, "recover", "runs/seed0", True, 420.0)
    """
    status = "SUCCESS" if success else "FAILED"
    msg_parts = [f"Command {command} on {target}: {status}"]

    if duration_ms is not None:
        msg_parts.append(f"({duration_ms:.1f}ms)")

    if error:
        msg_parts.append(f"- {error}")

    message = " ".join(msg_parts)

    if success:
        logger.info(message)
    else:
        logger.error(message)
