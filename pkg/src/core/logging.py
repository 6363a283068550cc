"""
Structured logging configuration with contextual information.
Uses structlog; log lines go to stderr so stdout carries only output records.
"""
import logging
import sys
from typing import Any

import structlog
from structlog.types import EventDict, Processor

from src.core.config import settings


def add_app_context(logger: Any, method_name: str, event_dict: EventDict) -> EventDict:
    """
    Add application context to all log messages.

    Args:
        logger: Logger instance
        method_name: Method name being logged
        event_dict: Event dictionary

    Returns:
        EventDict: Updated event dictionary with context
    """
    event_dict["app"] = settings.app_name
    event_dict["environment"] = settings.environment
    return event_dict


def drop_color_message_key(logger: Any, method_name: str, event_dict: EventDict) -> EventDict:
    """Remove color_message key used by ConsoleRenderer."""
    event_dict.pop("color_message", None)
    return event_dict


def setup_logging(log_level: str | None = None) -> None:
    """
    Configure structured logging based on environment settings.

    Args:
        log_level: Overrides settings.log_level when given (CLI --log-level)
    """
    level_name = (log_level or settings.log_level).upper()

    shared_processors: list[Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        add_app_context,
        structlog.stdlib.PositionalArgumentsFormatter(),
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
    ]

    if settings.log_format == "json":
        processors = shared_processors + [
            structlog.processors.format_exc_info,
            drop_color_message_key,
            structlog.processors.JSONRenderer(sort_keys=True),
        ]
    else:
        processors = shared_processors + [
            structlog.processors.format_exc_info,
            structlog.dev.ConsoleRenderer(colors=False),
        ]

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )

    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=getattr(logging, level_name),
        force=True,
    )


def configure_library_default() -> None:
    """
    Send library log lines to stderr at settings.log_level until setup_logging() runs.

    Leaves an existing structlog configuration untouched.
    """
    if structlog.is_configured():
        return

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            add_app_context,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.JSONRenderer(sort_keys=True),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(
            getattr(logging, settings.log_level.upper())
        ),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """
    Get a configured logger instance.

    Args:
        name: Logger name (typically __name__)

    Returns:
        BoundLogger: Configured logger
    """
    return structlog.get_logger(name)


def log_with_context(**context: Any) -> None:
    """
    Bind context to every subsequent log line of the current run.

    Example:
        >>> log_with_context(run_id="3f2a", command="z4-min")
        >>> logger.info("command_started")
    """
    structlog.contextvars.bind_contextvars(**context)


def clear_log_context() -> None:
    """Drop all context bound by log_with_context."""
    structlog.contextvars.clear_contextvars()


configure_library_default()
