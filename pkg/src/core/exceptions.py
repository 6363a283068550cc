"""
Custom exceptions for hamming-spectra.
Range and domain errors are caller mistakes; arithmetic contract errors are bugs.
"""
from typing import Any


class HammingSpectraException(Exception):
    """Base exception for all custom exceptions."""

    def __init__(
        self,
        message: str,
        *args: Any,
        error_code: str | None = None,
        details: dict[str, Any] | None = None,
    ) -> None:
        """
        Initialize exception.

        Args:
            message: Error message
            *args: Additional arguments
            error_code: Error code for tracking
            details: Additional error details
        """
        super().__init__(message, *args)
        self.message = message
        self.error_code = error_code or self.__class__.__name__
        self.details = details or {}


# Configuration Errors
class ConfigurationError(HammingSpectraException):
    """Raised when configuration is invalid."""
    pass


# Parameter Errors
class ParameterRangeError(HammingSpectraException):
    """Raised when an integer parameter violates an operation's precondition."""
    pass


class DomainError(ParameterRangeError):
    """Raised when a real argument lies outside the function's domain."""
    pass


class OracleCapExceededError(ParameterRangeError):
    """Raised when a brute-force oracle is asked for a length above its cap."""
    pass


# Exact Arithmetic Contract Errors
class ArithmeticContractError(HammingSpectraException):
    """Raised when an exact-arithmetic guarantee does not hold."""
    pass


class InexactDivisionError(ArithmeticContractError):
    """Raised when a division asserted to be exact leaves a remainder."""
    pass


class ResidualImaginaryError(ArithmeticContractError):
    """Raised when a character sum or transform keeps an imaginary part."""
    pass


class NonCodeEnumeratorError(ArithmeticContractError):
    """Raised when a MacWilliams image is not the enumerator of a code."""
    pass


class ClosedFormMismatchError(ArithmeticContractError):
    """Raised when an exhaustive scan disagrees with an applicable closed form."""
    pass


# Verification Errors
class VerificationError(HammingSpectraException):
    """Raised when a verification check fails."""
    pass


# CLI Errors
class UsageError(HammingSpectraException):
    """Raised when a command-line flag is malformed."""
    pass
