"""
Prometheus metrics for monitoring computation cost.
Tracks operation latency, oracle workload and verification outcomes.
"""
from functools import wraps
from time import time
from typing import Any, Callable, TypeVar

from prometheus_client import REGISTRY, Counter, Histogram, Info, write_to_textfile

from src.core.config import settings

# Type variable for decorators
F = TypeVar("F", bound=Callable[..., Any])


# ============================================================================
# PERFORMANCE METRICS
# ============================================================================

operation_duration_seconds = Histogram(
    "spectra_operation_duration_seconds",
    "Duration of library operations in seconds",
    ["operation"],
    buckets=(0.001, 0.01, 0.1, 0.5, 1.0, 5.0, 30.0, 120.0, 600.0),
)

operations_total = Counter(
    "spectra_operations_total",
    "Total library operations",
    ["operation", "status"],  # status: success, error
)


# ============================================================================
# WORKLOAD METRICS
# ============================================================================

oracle_evaluations_total = Counter(
    "spectra_oracle_evaluations_total",
    "Brute-force character sums evaluated",
    ["oracle"],  # oracle: z2, z4, dual
)

types_scanned_total = Counter(
    "spectra_types_scanned_total",
    "Type vectors visited by minimum scans",
    ["family"],  # family: hamming, z4
)


# ============================================================================
# QUALITY METRICS
# ============================================================================

verification_checks_total = Counter(
    "spectra_verification_checks_total",
    "Verification checks executed",
    ["suite", "status"],  # status: pass, fail
)


# ============================================================================
# APPLICATION INFO
# ============================================================================

app_info = Info("app_info", "Application information")
app_info.info({
    "name": settings.app_name,
    "version": settings.app_version,
    "environment": settings.environment,
})


# ============================================================================
# DECORATOR UTILITIES
# ============================================================================

def track_operation(operation: str) -> Callable[[F], F]:
    """
    Decorator to time an operation and count its outcome.

    Args:
        operation: Operation name (e.g., "lambda_min_scan")

    Returns:
        Decorated function

    Example:
        >>> @track_operation("lambda_min_exact")
        >>> def lambda_min_exact(n, j):
        >>>     ...
    """
    def decorator(func: F) -> F:
        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            if not settings.metrics_enabled:
                return func(*args, **kwargs)

            start_time = time()
            status = "success"

            try:
                return func(*args, **kwargs)
            except Exception:
                status = "error"
                raise
            finally:
                operation_duration_seconds.labels(operation=operation).observe(
                    time() - start_time
                )
                operations_total.labels(operation=operation, status=status).inc()

        return wrapper  # type: ignore

    return decorator


def export_metrics(path: str) -> None:
    """
    Write the default registry in text exposition format.

    Args:
        path: Target file (node-exporter textfile collector compatible)
    """
    write_to_textfile(path, REGISTRY)
