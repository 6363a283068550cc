"""
Spectra of the distance-j Hamming graphs H(n, j).

The eigenvalue on the character indexed by a weight-w vector is K_j(w) with multiplicity C(n, w).
"""
import math
from itertools import combinations

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.special import gammaln, logsumexp

from src.core.config import settings
from src.core.exceptions import (
    ClosedFormMismatchError,
    DomainError,
    OracleCapExceededError,
    ParameterRangeError,
    VerificationError,
)
from src.core.logging import get_logger
from src.core.metrics import oracle_evaluations_total, track_operation, types_scanned_total
from src.spectra.combinatorics import binomial
from src.spectra.krawtchouk import krawtchouk_eval, m_coefficient, root_interval

logger = get_logger(__name__)

SQRT2 = math.sqrt(2.0)
LOG2 = math.log(2.0)


class EigenvalueRecord(BaseModel):
    """One eigenvalue of H(n, j) indexed by character weight."""

    model_config = ConfigDict(frozen=True)

    w: int = Field(..., ge=0, description="Weight indexing the eigenvalue")
    value: int = Field(..., description="K_j(w)")
    multiplicity: int = Field(..., ge=1, description="C(n, w)")


class HammingMinResult(BaseModel):
    """Smallest eigenvalue of H(n, j) and where it is attained."""

    model_config = ConfigDict(frozen=True)

    lambda_min: int = Field(..., description="Smallest eigenvalue")
    argmin_w: int = Field(..., ge=0, description="Smallest weight attaining lambda_min")
    scanned: bool = Field(..., description="True if found by exhaustive scan")
    closed_form: str | None = Field(default=None, description="Closed form that was checked")


def _check_degree(n: int, j: int) -> None:
    if not 1 <= j <= n:
        raise ParameterRangeError(
            f"H(n, j) needs 1 <= j <= n, got n={n}, j={j}",
            details={"n": n, "j": j},
        )


def spectrum(n: int, j: int) -> list[EigenvalueRecord]:
    """
    All n + 1 eigenvalues of H(n, j).

    Args:
        n: Length
        j: Distance, 1 <= j <= n

    Returns:
        list[EigenvalueRecord]: One record per weight w = 0..n

    Raises:
        ParameterRangeError: If j lies outside [1, n]
    """
    _check_degree(n, j)
    return [
        EigenvalueRecord(w=w, value=krawtchouk_eval(n, j, w), multiplicity=binomial(n, w))
        for w in range(n + 1)
    ]


def closed_form_minimum(n: int, j: int) -> tuple[str, int] | None:
    """Known smallest eigenvalue of H(n, j) when a closed form applies."""
    if j % 2:
        return "odd_j", -binomial(n, j)
    if j == 2:
        return "j_equals_2", -(n // 2)
    if 2 * j > n:
        return "even_j_above_half", krawtchouk_eval(n, j, 1)
    if 2 * j == n:
        return "even_j_at_half", krawtchouk_eval(n, j, 2)
    return None


@track_operation("lambda_min_exact")
def lambda_min_exact(n: int, j: int) -> HammingMinResult:
    """
    Exact smallest eigenvalue of H(n, j) by scanning every weight.

    Args:
        n: Length
        j: Distance, 1 <= j <= n

    Returns:
        HammingMinResult: Minimum with the smallest attaining weight

    Raises:
        ParameterRangeError: If j lies outside [1, n]
        ClosedFormMismatchError: If the scan disagrees with an applicable closed form
    """
    _check_degree(n, j)
    best_w, best = 0, krawtchouk_eval(n, j, 0)
    for w in range(1, n + 1):
        value = krawtchouk_eval(n, j, w)
        if value < best:
            best_w, best = w, value
    types_scanned_total.labels(family="hamming").inc(n + 1)

    known = closed_form_minimum(n, j)
    name = None
    if known is not None:
        name, expected = known
        if expected != best:
            logger.error("closed_form_mismatch", n=n, j=j, closed_form=name, scan=best)
            raise ClosedFormMismatchError(
                f"Scan minimum {best} of H({n},{j}) disagrees with {name} value {expected}",
                details={"n": n, "j": j, "closed_form": name, "scan": best, "expected": expected},
            )

    logger.debug("lambda_min_scanned", n=n, j=j, lambda_min=best, argmin_w=best_w)
    return HammingMinResult(lambda_min=best, argmin_w=best_w, scanned=True, closed_form=name)


def lambda_min_j4_closed(n: int) -> tuple[float, HammingMinResult]:
    """
    Smallest eigenvalue of H(n, 4) from the continuous minimiser x0 = (n - sqrt(3n - 4)) / 2.

    Args:
        n: Length, at least 9

    Returns:
        tuple: Envelope -n^2/4 + 3n/4 - 2/3 and min(K_4(floor x0), K_4(ceil x0))

    Raises:
        ParameterRangeError: If n < 9
        ClosedFormMismatchError: If the result differs from the exhaustive scan
    """
    if n < 9:
        raise ParameterRangeError(f"lambda_min_j4_closed needs n >= 9, got {n}", details={"n": n})
    envelope = -n * n / 4 + 3 * n / 4 - 2 / 3
    x0 = (n - math.sqrt(3 * n - 4)) / 2
    candidates = sorted({math.floor(x0), math.ceil(x0)})
    value, w = min((krawtchouk_eval(n, 4, w), w) for w in candidates)
    result = HammingMinResult(lambda_min=value, argmin_w=w, scanned=False, closed_form="j_equals_4")

    scanned = lambda_min_exact(n, 4)
    if scanned.lambda_min != value:
        raise ClosedFormMismatchError(
            f"K_4 near x0 gives {value}, scan gives {scanned.lambda_min} at n={n}",
            details={"n": n, "x0": x0, "closed": value, "scan": scanned.lambda_min},
        )
    return envelope, result


def char_sum_oracle(n: int, j: int, w: int, spot_check: bool = False) -> int:
    """
    Brute-force eigenvalue sum of (-1)^{w.v} over all weight-j vectors v.

    The character is the representative 1^w 0^{n-w}.

    Args:
        n: Length, at most settings.z2_oracle_cap
        j: Distance
        w: Character weight
        spot_check: Also evaluate a random weight-w representative and compare

    Returns:
        int: The eigenvalue, equal to K_j(w)

    Raises:
        OracleCapExceededError: If n exceeds the cap
        ParameterRangeError: If j or w lies outside [0, n]
        VerificationError: If the random representative gives a different sum
    """
    if n > settings.z2_oracle_cap:
        raise OracleCapExceededError(
            f"H(n, j) oracle is capped at n={settings.z2_oracle_cap}, got n={n}",
            details={"n": n, "cap": settings.z2_oracle_cap},
        )
    for name, value in (("j", j), ("w", w)):
        if not 0 <= value <= n:
            raise ParameterRangeError(
                f"{name} must lie in [0, {n}], got {value}", details={name: value, "n": n}
            )

    support = frozenset(range(w))
    total = _character_sum(n, j, support)
    oracle_evaluations_total.labels(oracle="z2").inc()

    if spot_check:
        rng = np.random.default_rng(settings.random_seed)
        other = frozenset(int(k) for k in rng.choice(n, size=w, replace=False))
        other_total = _character_sum(n, j, other)
        if other_total != total:
            raise VerificationError(
                f"Character sum depends on the representative at n={n}, j={j}, w={w}",
                details={"first": total, "second": other_total},
            )
    return total


def _character_sum(n: int, j: int, support: frozenset[int]) -> int:
    total = 0
    for positions in combinations(range(n), j):
        meet = sum(1 for k in positions if k in support)
        total += -1 if meet % 2 else 1
    return total


def krawtchouk_duality_holds(n: int) -> bool:
    """Check C(n, i) K_j(i) = C(n, j) K_i(j) for every 0 <= i, j <= n."""
    return all(
        binomial(n, i) * krawtchouk_eval(n, j, i) == binomial(n, j) * krawtchouk_eval(n, i, j)
        for i in range(n + 1)
        for j in range(n + 1)
    )


def trivial_bound(n: int, j: int) -> int:
    """|lambda_min| never exceeds the degree C(n, j)."""
    return binomial(n, j)


def _exp_or_inf(log_value: float) -> float:
    try:
        return math.exp(log_value)
    except OverflowError:
        logger.warning("bound_overflow", log_value=log_value)
        return math.inf


def lb_bound_fixed_j(n: int, j: int) -> float:
    """
    Envelope sum_k |L_{2k}(j)| r1^{j-2k} of |q_j| over the root interval.

    Below settings.log_space_threshold the integer numerators are summed directly;
    above it the sum is taken in log-space.

    Args:
        n: Length
        j: Even degree with 4 <= j < n/2

    Returns:
        float: Upper bound on |lambda_min(H(n, j))|

    Raises:
        ParameterRangeError: Unless j is even with 4 <= j < n/2
    """
    _, r1 = root_interval(n, j)
    numerators = [abs(m_coefficient(n, j, 2 * k)) for k in range(j // 2 + 1)]

    if j <= settings.log_space_threshold:
        total = sum(float(m) * r1 ** (j - 2 * k) for k, m in enumerate(numerators))
        return total / math.factorial(j)

    log_terms = [
        math.log(m) + (j - 2 * k) * math.log(r1) for k, m in enumerate(numerators) if m
    ]
    return _exp_or_inf(float(logsumexp(log_terms) - gammaln(j + 1)))


def _theta_degree(n: int, alpha: float) -> int:
    if alpha <= 0.0:
        raise DomainError(f"alpha must be positive, got {alpha}", details={"alpha": alpha})
    if alpha >= 1.0 / 3.0:
        raise ParameterRangeError(
            f"The linear-degree bound needs alpha < 1/3, got {alpha}",
            details={"alpha": alpha},
        )
    return 2 * round(alpha * n / 2)


def lb_bound_theta_log2(n: int, alpha: float) -> float:
    """
    log2 of (2 C n)^j / j! * ((1 + sqrt2)^{j+1} - (1 - sqrt2)^{j+1}) / (2^{j+1} sqrt2).

    C = sqrt(alpha (1 - alpha)) and j is alpha n rounded to the nearest even integer.
    """
    j = _theta_degree(n, alpha)
    c_alpha = math.sqrt(alpha * (1.0 - alpha))
    ratio = (1.0 - SQRT2) / (1.0 + SQRT2)
    log_fib = (j + 1) * math.log(1.0 + SQRT2) + math.log1p(-(ratio ** (j + 1)))
    log_value = (
        j * math.log(2.0 * c_alpha * n)
        - float(gammaln(j + 1))
        + log_fib
        - (j + 1) * LOG2
        - 0.5 * LOG2
    )
    return log_value / LOG2


def lb_bound_theta(n: int, alpha: float) -> float:
    """
    Bound on |lambda_min(H(n, alpha n))| for degree linear in n.

    Args:
        n: Length
        alpha: Degree ratio, 0 < alpha < 1/3

    Returns:
        float: The pre-limit expression (math.inf if it overflows a double)

    Raises:
        DomainError: If alpha <= 0
        ParameterRangeError: If alpha >= 1/3
    """
    return _exp_or_inf(lb_bound_theta_log2(n, alpha) * LOG2)


def lower_bound_rate_exponent(alpha: float) -> float:
    """alpha log2(e (1 + sqrt2) sqrt((1 - alpha) / alpha)), the growth rate of lb_bound_theta."""
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}", details={"alpha": alpha})
    return alpha * math.log2(math.e * (1.0 + SQRT2) * math.sqrt((1.0 - alpha) / alpha))
