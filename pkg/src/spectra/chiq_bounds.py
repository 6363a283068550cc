"""
Bounds on the quantum chromatic number chi_q of H(n, j) and G(r, s).

The spectral bound chi_q(G) >= 1 - lambda_max / lambda_min of a regular graph is
evaluated exactly; the asymptotic formulas are reported as floats.
"""
import math
from collections.abc import Iterable
from fractions import Fraction
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from sympy import factorint

from src.core.config import settings
from src.core.exceptions import DomainError, ParameterRangeError
from src.core.logging import get_logger
from src.core.metrics import track_operation
from src.spectra.combinatorics import binary_entropy, binomial
from src.spectra.hamming_spectrum import lambda_min_exact, lb_bound_fixed_j, lb_bound_theta
from src.spectra.z4_spectrum import lambda_max, lambda_min_scan

logger = get_logger(__name__)

# e(1 + sqrt2) ~ 6.5633; the "6.563" quoted for the lower-bound rate is this constant rounded.
GROWTH_BASE = math.e * (1.0 + math.sqrt(2.0))


class GraphId(BaseModel):
    """Family and parameters of a bounded graph."""

    model_config = ConfigDict(frozen=True)

    family: Literal["hamming", "z4"] = Field(..., description="Graph family")
    n: int = Field(..., description="Length")
    j: int | None = Field(default=None, description="Distance of H(n, j)")
    r: int | None = Field(default=None, description="r of G(r, s)")
    s: int | None = Field(default=None, description="s of G(r, s)")


class BoundReport(BaseModel):
    """Spectral lower bound and known upper bounds for one graph."""

    model_config = ConfigDict(frozen=True)

    graph_id: GraphId
    lambda_max: int = Field(..., description="Degree of the graph")
    lambda_min: int = Field(..., description="Exact smallest eigenvalue")
    spectral_lb: int = Field(..., description="ceil(1 - lambda_max / lambda_min)")
    upper_bounds: list[tuple[str, float]] = Field(default_factory=list)
    asymptotic_lower_bounds: list[tuple[str, float]] = Field(default_factory=list)
    known_lower_bounds: list[tuple[str, float]] = Field(default_factory=list)
    equality: bool = Field(default=False, description="Spectral bound meets an upper bound")
    notes: list[str] = Field(default_factory=list)


class LURow(BaseModel):
    """One row of the lower/upper exponential base comparison."""

    model_config = ConfigDict(frozen=True)

    alpha: float
    l: float = Field(..., description="Lower-bound base, tabulated convention")  # noqa: E741
    u: float = Field(..., description="Upper-bound base")
    l_displayed: float = Field(..., description="Lower-bound base with sqrt((1-alpha)/alpha)")
    region_holds: bool = Field(..., description="Lower-bound exponent beats the trivial one")


def spectral_lower_bound(lambda_max: int, lambda_min: int) -> int:
    """
    ceil(1 - lambda_max / lambda_min) by exact rational arithmetic.

    Args:
        lambda_max: Degree, positive
        lambda_min: Smallest eigenvalue, negative

    Returns:
        int: Lower bound on chi_q

    Raises:
        ParameterRangeError: Unless lambda_min < 0 < lambda_max
    """
    if not lambda_min < 0 < lambda_max:
        raise ParameterRangeError(
            f"Spectral bound needs lambda_min < 0 < lambda_max, got {lambda_min}, {lambda_max}",
            details={"lambda_max": lambda_max, "lambda_min": lambda_min},
        )
    return math.ceil(1 - Fraction(lambda_max, lambda_min))


def hamming_known_lower_bound(n: int, j: int) -> list[tuple[str, float]]:
    """Previously known lower bounds: 2j/(2j - n) for j > n/2, n for j = n/2 with 4 | n."""
    bounds: list[tuple[str, float]] = []
    if j % 2 == 0 and 2 * j > n:
        bounds.append(("2j/(2j-n)", 2 * j / (2 * j - n)))
    if 2 * j == n and n % 4 == 0:
        bounds.append(("n", float(n)))
    return bounds


def _is_prime_power(n: int) -> bool:
    return n > 1 and len(factorint(n)) == 1


def hamming_chiq_ub(n: int, j: int) -> list[tuple[str, float]]:
    """
    Every applicable known upper bound on chi_q(H(n, j)).

    The exponential branch is reported as its log2 rate per coordinate; the o(n) term is dropped.

    Args:
        n: Length
        j: Even distance, 1 <= j <= n

    Returns:
        list: (formula name, value) pairs
    """
    if not 1 <= j <= n:
        raise ParameterRangeError(
            f"H(n, j) needs 1 <= j <= n, got n={n}, j={j}", details={"n": n, "j": j}
        )
    if j % 2:
        return [("bipartite", 2.0)]

    bounds: list[tuple[str, float]] = []
    if 2 * j >= n:
        bounds.append(("2j", float(2 * j)))
    else:
        if (n - 2 * j) ** 2 < n:
            bounds.append(("2C(n,2)", float(2 * binomial(n, 2))))
        alpha = j / n
        rate = binary_entropy(0.5 - math.sqrt(alpha * (1.0 - alpha)))
        bounds.append(("log2_rate_per_n", rate))
    if j == 2:
        power_of_two = n >= 8 and n & (n - 1) == 0
        if power_of_two or (n % 4 == 3 and _is_prime_power(n)):
            bounds.append(("n+1", float(n + 1)))
    return bounds


@track_operation("hamming_chiq_lb")
def hamming_chiq_lb(n: int, j: int) -> BoundReport:
    """
    Exact spectral lower bound on chi_q(H(n, j)).

    For even 4 <= j < n/2 the report also carries C(n, j) / bound for both bound evaluators.

    Args:
        n: Length
        j: Distance, 1 <= j <= n

    Returns:
        BoundReport: Report for H(n, j)
    """
    minimum = lambda_min_exact(n, j)
    degree = binomial(n, j)
    lower = spectral_lower_bound(degree, minimum.lambda_min)
    notes = [f"lambda_min attained at w={minimum.argmin_w}"]

    asymptotic: list[tuple[str, float]] = []
    if j % 2 == 0 and 4 <= j and 2 * j < n:
        asymptotic.append(("C(n,j)/lb_bound_fixed_j", degree / lb_bound_fixed_j(n, j)))
        if 3 * j < n:
            asymptotic.append(("C(n,j)/lb_bound_theta", degree / lb_bound_theta(n, j / n)))
        notes.append("chi_q >= 1 + C(n,j)/bound whenever |lambda_min| <= bound")

    upper = hamming_chiq_ub(n, j)
    equality = any(value == lower for _, value in upper)
    if j % 2:
        notes.append("odd j: H(n, j) is bipartite")

    return BoundReport(
        graph_id=GraphId(family="hamming", n=n, j=j),
        lambda_max=degree,
        lambda_min=minimum.lambda_min,
        spectral_lb=lower,
        upper_bounds=upper,
        asymptotic_lower_bounds=asymptotic,
        known_lower_bounds=hamming_known_lower_bound(n, j),
        equality=equality,
        notes=notes,
    )


@track_operation("z4_chiq")
def z4_chiq(r: int, s: int) -> BoundReport:
    """
    Spectral lower bound on chi_q(G(r, s)) against the upper bound n.

    G(r, s) is a subgraph of the orthogonality graph O(n, 4), so chi_q <= n = 2(r + s).

    Raises:
        ParameterRangeError: If n < 4
    """
    n = 2 * (r + s)
    if n < 4 or r < 0 or s < 0:
        raise ParameterRangeError(
            f"z4_chiq needs r, s >= 0 and n = 2(r+s) >= 4, got r={r}, s={s}",
            details={"r": r, "s": s},
        )
    result = lambda_min_scan(r, s)
    degree = lambda_max(r, s)
    lower = spectral_lower_bound(degree, result.lambda_min)
    notes = ["upper bound from the subgraph relation G(r,s) <= O(n,4)"]
    if r % 2:
        notes.append("odd r: the formula regime is not covered by the boundary analysis")
    if lower == n:
        logger.info("z4_chiq_determined", r=r, s=s, chi_q=n)
    return BoundReport(
        graph_id=GraphId(family="z4", n=n, r=r, s=s),
        lambda_max=degree,
        lambda_min=result.lambda_min,
        spectral_lb=lower,
        upper_bounds=[("n", float(n))],
        equality=lower == n,
        notes=notes,
    )


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 0.5:
        raise DomainError(f"alpha must lie in (0, 1/2), got {alpha}", details={"alpha": alpha})


def l_alpha(alpha: float) -> float:
    """2^{h(alpha)} / (e(1 + sqrt2) sqrt((1 - alpha) / alpha))^alpha."""
    _check_alpha(alpha)
    return 2.0 ** binary_entropy(alpha) / (
        GROWTH_BASE * math.sqrt((1.0 - alpha) / alpha)
    ) ** alpha


def l_alpha_tabulated(alpha: float) -> float:
    """2^{h(alpha)} / (e(1 + sqrt2) sqrt(alpha (1 - alpha)))^alpha, as the published grid uses."""
    _check_alpha(alpha)
    return 2.0 ** binary_entropy(alpha) / (GROWTH_BASE * math.sqrt(alpha * (1.0 - alpha))) ** alpha


def u_alpha(alpha: float) -> float:
    """2^{h(1/2 - sqrt(alpha (1 - alpha)))}."""
    _check_alpha(alpha)
    return 2.0 ** binary_entropy(0.5 - math.sqrt(alpha * (1.0 - alpha)))


def region_alpha_holds(alpha: float) -> bool:
    """
    Strict inequality alpha log2(e(1 + sqrt2) sqrt((1 - alpha)/alpha)) < h(alpha).

    Raises:
        DomainError: Outside 0 < alpha < 1/2
    """
    _check_alpha(alpha)
    exponent = alpha * math.log2(GROWTH_BASE * math.sqrt((1.0 - alpha) / alpha))
    return exponent < binary_entropy(alpha)


def lu_table(alphas: Iterable[float] | None = None) -> list[LURow]:
    """
    Lower and upper exponential bases over a grid of alpha.

    Values are rounded half-to-even to settings.table_decimals.

    Args:
        alphas: Grid; defaults to settings.default_alphas (0.01..0.17)

    Returns:
        list[LURow]: One row per alpha, in input order

    Raises:
        DomainError: If some alpha lies outside (0, 1/2)
    """
    grid = list(settings.default_alphas if alphas is None else alphas)
    for alpha in grid:
        _check_alpha(alpha)

    decimals = settings.table_decimals
    raw = np.array(
        [[l_alpha_tabulated(a), u_alpha(a), l_alpha(a)] for a in grid], dtype=np.float64
    ).reshape(len(grid), 3)
    rounded = np.round(raw, decimals)
    return [
        LURow(
            alpha=alpha,
            l=float(row[0]),
            u=float(row[1]),
            l_displayed=float(row[2]),
            region_holds=region_alpha_holds(alpha),
        )
        for alpha, row in zip(grid, rounded)
    ]
