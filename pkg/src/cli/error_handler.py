"""
Error handling for the command-line surface.
Maps exceptions to exit codes and writes a JSON diagnostic to stderr.
"""
import json
import sys
from typing import Any, TextIO

from src.core.exceptions import (
    ArithmeticContractError,
    ConfigurationError,
    HammingSpectraException,
    OracleCapExceededError,
    ParameterRangeError,
    UsageError,
    VerificationError,
)
from src.core.logging import get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _diagnostic(stream: TextIO, error: str, message: str, details: dict[str, Any]) -> None:
    payload = {"error": error, "message": message, "details": details}
    stream.write(json.dumps(payload, sort_keys=True, default=str) + "\n")
    stream.flush()


def handle_cli_error(exc: BaseException, stream: TextIO | None = None) -> int:
    """
    Report an exception raised by a subcommand.

    Args:
        exc: The exception
        stream: Diagnostic stream, stderr by default

    Returns:
        int: Process exit code
    """
    stream = stream or sys.stderr

    if isinstance(exc, UsageError):
        logger.warning("usage_error", error=str(exc), details=exc.details)
        _diagnostic(stream, "usage_error", exc.message, exc.details)
        return EXIT_USAGE

    if isinstance(exc, OracleCapExceededError):
        logger.warning("oracle_cap_exceeded", error=str(exc))
        _diagnostic(stream, "oracle_cap_exceeded", exc.message, exc.details)
        return EXIT_USAGE

    if isinstance(exc, ParameterRangeError):
        logger.warning("range_error", error=str(exc), error_code=exc.error_code)
        _diagnostic(stream, "range_error", exc.message, exc.details)
        return EXIT_USAGE

    if isinstance(exc, ConfigurationError):
        logger.error("configuration_error", error=str(exc))
        _diagnostic(stream, "configuration_error", exc.message, exc.details)
        return EXIT_USAGE

    if isinstance(exc, VerificationError):
        logger.error("verification_failed", error=str(exc))
        _diagnostic(stream, "verification_failed", exc.message, exc.details)
        return EXIT_FAILURE

    if isinstance(exc, ArithmeticContractError):
        logger.error("arithmetic_contract_broken", error=str(exc), error_code=exc.error_code)
        _diagnostic(stream, exc.error_code, exc.message, exc.details)
        return EXIT_FAILURE

    if isinstance(exc, HammingSpectraException):
        logger.error("application_error", error=str(exc), error_code=exc.error_code)
        _diagnostic(stream, exc.error_code, exc.message, exc.details)
        return EXIT_FAILURE

    logger.error("unexpected_error", error=str(exc), exc_info=True)
    _diagnostic(
        stream, "internal_error", "An unexpected error occurred.", {"type": type(exc).__name__}
    )
    return EXIT_FAILURE
