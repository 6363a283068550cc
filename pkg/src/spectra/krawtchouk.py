"""
Krawtchouk polynomials of the binary Hamming scheme and the q_j polynomials.

q_j is the degree-j polynomial with q_j(A_1) = A_j for the distance matrices of H(n, 1).
It satisfies x q_j = c_{j+1} q_{j+1} + b_{j-1} q_{j-1} and q_j(n - 2w) = K_j(w).
"""
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from pydantic import BaseModel, ConfigDict, Field

from src.core.exceptions import DomainError, InexactDivisionError, ParameterRangeError
from src.core.logging import get_logger
from src.spectra.combinatorics import binomial, factorial

logger = get_logger(__name__)

Rational = Fraction | int


@dataclass(frozen=True, slots=True)
class ExactPoly:
    """Univariate polynomial with exact rational coefficients; index is the degree."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coeffs = [Fraction(c) for c in self.coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs) or (Fraction(0),))

    @classmethod
    def constant(cls, value: Rational) -> "ExactPoly":
        return cls((Fraction(value),))

    @classmethod
    def monomial(cls, degree: int, value: Rational = 1) -> "ExactPoly":
        return cls(tuple([Fraction(0)] * degree + [Fraction(value)]))

    @property
    def degree(self) -> int:
        """Degree of the polynomial; the zero polynomial reports -1."""
        if self.is_zero():
            return -1
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return len(self.coefficients) == 1 and self.coefficients[0] == 0

    def coefficient(self, power: int) -> Fraction:
        if 0 <= power < len(self.coefficients):
            return self.coefficients[power]
        return Fraction(0)

    def leading_coefficient(self) -> Fraction:
        return self.coefficients[-1]

    def __add__(self, other: "ExactPoly") -> "ExactPoly":
        size = max(len(self.coefficients), len(other.coefficients))
        return ExactPoly(tuple(self.coefficient(k) + other.coefficient(k) for k in range(size)))

    def __sub__(self, other: "ExactPoly") -> "ExactPoly":
        return self + other.scale(-1)

    def __mul__(self, other: "ExactPoly") -> "ExactPoly":
        product = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for k, b in enumerate(other.coefficients):
                product[i + k] += a * b
        return ExactPoly(tuple(product))

    def scale(self, factor: Rational) -> "ExactPoly":
        return ExactPoly(tuple(c * factor for c in self.coefficients))

    def shift_degree(self) -> "ExactPoly":
        """Multiply by x."""
        return ExactPoly((Fraction(0), *self.coefficients))

    def evaluate(self, x: Rational) -> Fraction:
        """Horner evaluation at an exact argument."""
        value = Fraction(0)
        for c in reversed(self.coefficients):
            value = value * x + c
        return value

    def evaluate_int(self, x: int) -> int:
        """Evaluate at an integer where the value is known to be integral."""
        value = self.evaluate(x)
        if value.denominator != 1:
            raise InexactDivisionError(
                f"Polynomial value at {x} is not an integer: {value}",
                details={"x": x, "value": str(value)},
            )
        return value.numerator

    def compose_linear(self, a: Rational, b: Rational) -> "ExactPoly":
        """Return p(a x + b)."""
        inner = ExactPoly((Fraction(b), Fraction(a)))
        result = ExactPoly.constant(0)
        for c in reversed(self.coefficients):
            result = result * inner + ExactPoly.constant(c)
        return result


class IntersectionNumbers(BaseModel):
    """Intersection numbers c_i, a_i, b_i of H(n, 1)."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0, description="Length of the Hamming space")

    def c(self, i: int) -> int:
        return i

    def a(self, i: int) -> int:
        return 0

    def b(self, i: int) -> int:
        return self.n - i


def _check_index(name: str, value: int, n: int) -> None:
    if not 0 <= value <= n:
        raise ParameterRangeError(
            f"{name} must lie in [0, {n}], got {value}",
            details={name: value, "n": n},
        )


def krawtchouk_eval(n: int, j: int, x: int) -> int:
    """
    Exact K_j(x) = sum_i (-1)^i C(x, i) C(n - x, j - i).

    Args:
        n: Length
        j: Degree, 0 <= j <= n
        x: Argument, 0 <= x <= n

    Returns:
        int: K_j(x)

    Raises:
        ParameterRangeError: If j or x lies outside [0, n]
    """
    _check_index("j", j, n)
    _check_index("x", x, n)
    return sum(
        (-1) ** i * binomial(x, i) * binomial(n - x, j - i)
        for i in range(max(0, j - (n - x)), min(j, x) + 1)
    )


def krawtchouk_column(n: int, j: int) -> list[int]:
    """Values K_j(0), ..., K_j(n)."""
    _check_index("j", j, n)
    return [krawtchouk_eval(n, j, x) for x in range(n + 1)]


@lru_cache(maxsize=128)
def _q_polys(n: int, j_max: int) -> tuple[ExactPoly, ...]:
    numbers = IntersectionNumbers(n=n)
    polys = [ExactPoly.constant(1)]
    if j_max >= 1:
        polys.append(ExactPoly.monomial(1))
    for j in range(1, j_max):
        step = polys[j].shift_degree() - polys[j - 1].scale(numbers.b(j - 1))
        polys.append(step.scale(Fraction(1, numbers.c(j + 1))))
    return tuple(polys)


def q_polys_by_recursion(n: int, j_max: int) -> list[ExactPoly]:
    """
    Build q_0, ..., q_{j_max} from the three-term recursion.

    Args:
        n: Length
        j_max: Highest degree, 0 <= j_max <= n

    Returns:
        list[ExactPoly]: q_j at index j, each of degree j

    Raises:
        ParameterRangeError: If j_max lies outside [0, n]
    """
    _check_index("j_max", j_max, n)
    return list(_q_polys(n, j_max))


def krawtchouk_poly(n: int, j: int) -> ExactPoly:
    """K_j as a polynomial in x, obtained as q_j(n - 2x)."""
    _check_index("j", j, n)
    return _q_polys(n, j)[j].compose_linear(-2, n)


def two_separated_sets(k: int, j: int) -> Iterator[tuple[int, ...]]:
    """
    Yield every k-subset of {0, ..., j-2} whose consecutive elements differ by at least 2.

    Subsets come out in lexicographic order; there are C(j - k, k) of them.

    Args:
        k: Subset size
        j: Degree whose index set is {0, ..., j-2}

    Raises:
        ParameterRangeError: If k or j is negative
    """
    if k < 0 or j < 0:
        raise ParameterRangeError(
            f"two_separated_sets needs k >= 0 and j >= 0, got k={k}, j={j}",
            details={"k": k, "j": j},
        )
    top = j - 2

    def choose(u: int, remaining: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        if u + 2 * (remaining - 1) > top:
            return
        for rest in choose(u + 2, remaining - 1):
            yield (u, *rest)
        yield from choose(u + 1, remaining)

    yield from choose(0, k)


def separated_product(n: int, subset: Sequence[int]) -> int:
    """R(I) = prod over u in I of b_u c_{u+1} = (n - u)(u + 1)."""
    return math.prod((n - u) * (u + 1) for u in subset)


@lru_cache(maxsize=4096)
def _m_coefficients(n: int, j: int) -> tuple[int, ...]:
    # Sum of R(I) over 2-separated k-subsets of {0..u}, for all k, swept over u.
    half = j // 2
    before_prev = [1] + [0] * half
    prev = [1] + [0] * half
    for u in range(j - 1):
        weight = (n - u) * (u + 1)
        current = list(prev)
        for k in range(1, half + 1):
            current[k] += weight * before_prev[k - 1]
        before_prev, prev = prev, current
    coefficients = []
    for i in range(j + 1):
        if i % 2:
            coefficients.append(0)
        else:
            coefficients.append((-1) ** (i // 2) * prev[i // 2])
    return tuple(coefficients)


def m_coefficient(n: int, j: int, i: int) -> int:
    """
    Integer numerator M_i(j) = j! L_i(j) of the closed-form q_j coefficients.

    Args:
        n: Length
        j: Degree, 0 <= j <= n
        i: Offset from the leading term, 0 <= i <= j

    Returns:
        int: 0 for odd i, otherwise (-1)^{i/2} times the sum of R(I) over 2-separated sets
    """
    _check_index("j", j, n)
    _check_index("i", i, j)
    return _m_coefficients(n, j)[i]


def m_coefficient_by_enumeration(n: int, j: int, i: int) -> int:
    """M_i(j) summed literally over two_separated_sets(i/2, j)."""
    _check_index("j", j, n)
    _check_index("i", i, j)
    if i % 2:
        return 0
    total = sum(separated_product(n, subset) for subset in two_separated_sets(i // 2, j))
    return (-1) ** (i // 2) * total


def m_diagonal(n: int, j: int) -> int:
    """M_j(j): (-1)^{j/2} prod_{k < j/2} b_{2k} c_{2k+1} for even j, 0 for odd j."""
    _check_index("j", j, n)
    if j % 2:
        return 0
    numbers = IntersectionNumbers(n=n)
    return (-1) ** (j // 2) * math.prod(
        numbers.b(2 * k) * numbers.c(2 * k + 1) for k in range(j // 2)
    )


def q_coeff_closed_form(n: int, j: int, i: int) -> Fraction:
    """
    Closed-form coefficient L_i(j) of x^{j-i} in q_j(x).

    Args:
        n: Length
        j: Degree, 0 <= j <= n
        i: Offset from the leading term, 0 <= i <= j

    Returns:
        Fraction: M_i(j) / j!

    Raises:
        ParameterRangeError: Outside 0 <= i <= j <= n
    """
    return Fraction(m_coefficient(n, j, i), factorial(j))


def q_coeff_from_recursion(n: int, j: int, i: int) -> Fraction:
    """Coefficient of x^{j-i} read off the recursion-built q_j."""
    _check_index("j", j, n)
    _check_index("i", i, j)
    return _q_polys(n, j)[j].coefficient(j - i)


def root_interval(n: int, j: int) -> tuple[float, float]:
    """
    Symmetric bound [-r1, r1] containing every root of q_j.

    r1 = sqrt((j-1)(n-j+2)) + sqrt((j-2)(n-j+3)).

    Raises:
        ParameterRangeError: Unless j is even with 4 <= j < n/2
    """
    if j % 2 or j < 4 or 2 * j >= n:
        raise ParameterRangeError(
            f"root_interval needs even j with 4 <= j < n/2, got n={n}, j={j}",
            details={"n": n, "j": j},
        )
    r1 = math.sqrt((j - 1) * (n - j + 2)) + math.sqrt((j - 2) * (n - j + 3))
    return -r1, r1


def root_bracket_scan(n: int, j: int) -> tuple[int, int]:
    """
    Diagnostic bracket (lo, hi) around the largest root of q_j.

    Scans K_j(w) = q_j(n - 2w) upward from w = 0 and reports the first sign change
    as x-values of matching parity. Not part of any bound.
    """
    _check_index("j", j, n)
    if j == 0:
        raise ParameterRangeError("q_0 has no roots", details={"n": n, "j": j})
    previous = krawtchouk_eval(n, j, 0)
    for w in range(1, n + 1):
        value = krawtchouk_eval(n, j, w)
        if value == 0:
            return n - 2 * w, n - 2 * w
        if (value > 0) != (previous > 0):
            return n - 2 * w, n - 2 * (w - 1)
        previous = value
    raise ParameterRangeError(f"No sign change of K_{j} on [0, {n}]", details={"n": n, "j": j})


def theta_root_radius(n: int, alpha: float) -> float:
    """Cruder root radius 2 sqrt(alpha(1 - alpha)) n used when j grows linearly in n."""
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}", details={"alpha": alpha})
    return 2.0 * math.sqrt(alpha * (1.0 - alpha)) * n


def fibonacci_f(n: int, x: Rational) -> Fraction:
    """
    Exact f_n(x) = sum_{k <= n/2} C(n - k, k) x^k.

    Raises:
        ParameterRangeError: If n is negative
    """
    if n < 0:
        raise ParameterRangeError(f"n must be non-negative, got {n}", details={"n": n})
    x = Fraction(x)
    return sum((binomial(n - k, k) * x**k for k in range(n // 2 + 1)), Fraction(0))


def fibonacci_f_closed(n: int, x: float) -> float:
    """
    Closed form ((1 + s)^{n+1} - (1 - s)^{n+1}) / (2^{n+1} s) with s = sqrt(1 + 4x).

    Raises:
        DomainError: If 1 + 4x <= 0
    """
    if n < 0:
        raise ParameterRangeError(f"n must be non-negative, got {n}", details={"n": n})
    if 1.0 + 4.0 * x <= 0.0:
        raise DomainError(f"Closed form needs 1 + 4x > 0, got x={x}", details={"x": x})
    s = math.sqrt(1.0 + 4.0 * x)
    return ((1.0 + s) ** (n + 1) - (1.0 - s) ** (n + 1)) / (2.0 ** (n + 1) * s)


def fibonacci_F(n: int, x: Rational) -> Fraction:  # noqa: N802
    """Fibonacci polynomial F_n(x): F_0 = 0, F_1 = 1, F_{n+1} = x F_n + F_{n-1}."""
    if n < 0:
        raise ParameterRangeError(f"n must be non-negative, got {n}", details={"n": n})
    x = Fraction(x)
    previous, current = Fraction(0), Fraction(1)
    if n == 0:
        return previous
    for _ in range(n - 1):
        previous, current = current, x * current + previous
    return current
