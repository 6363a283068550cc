"""
Complete weight enumerators of single-generator codes over Z_p and their MacWilliams transforms.

Enumerators are sparse maps from exponent tuples (a type) to Gaussian-integer coefficients;
p = 2 runs through the same Gaussian kernel with zero imaginary parts.
"""
import math
from collections import defaultdict
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.core.exceptions import (
    InexactDivisionError,
    NonCodeEnumeratorError,
    OracleCapExceededError,
    ParameterRangeError,
    ResidualImaginaryError,
)
from src.core.logging import get_logger
from src.core.metrics import oracle_evaluations_total, track_operation
from src.spectra.combinatorics import (
    TypeVector,
    binomial,
    iter_compositions,
    multinomial,
    multinomial_of,
)

logger = get_logger(__name__)

TRANSFORM_ALPHABETS = (2, 4)
BRUTEFORCE_SPACE_CAP = 1 << 20

Exponent = tuple[int, ...]
# Gaussian integers as (re, im) inside the expansion kernels.
_Pair = tuple[int, int]
_Sparse = dict[Exponent, _Pair]


@dataclass(frozen=True, slots=True)
class GaussianInt:
    """Exact element re + im*i of Z[i]."""

    re: int
    im: int = 0

    def __add__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other: "GaussianInt | int") -> "GaussianInt":
        if isinstance(other, int):
            return GaussianInt(self.re * other, self.im * other)
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def exact_div(self, divisor: int) -> "GaussianInt":
        """Divide both parts by an integer that must divide them."""
        if self.re % divisor or self.im % divisor:
            raise InexactDivisionError(
                f"{self} is not divisible by {divisor}",
                details={"re": self.re, "im": self.im, "divisor": divisor},
            )
        return GaussianInt(self.re // divisor, self.im // divisor)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZETA4 = GaussianInt(0, 1)


def zeta_power(p: int, k: int) -> GaussianInt:
    """zeta_p^k for p in {2, 4}."""
    if p == 2:
        return GaussianInt(-1 if k % 2 else 1)
    if p == 4:
        return (GaussianInt(1), ZETA4, GaussianInt(-1), GaussianInt(0, -1))[k % 4]
    raise ParameterRangeError(f"Roots of unity are only needed for p in {TRANSFORM_ALPHABETS}")


class WeightEnumerator(BaseModel):
    """Complete weight enumerator sum_t A[t] x_0^{t_0} ... x_{p-1}^{t_{p-1}}."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    p: int = Field(..., description="Alphabet size")
    n: int = Field(..., ge=0, description="Code length")
    terms: dict[Exponent, GaussianInt] = Field(
        default_factory=dict, description="Exponent tuple -> coefficient"
    )

    @classmethod
    def from_counts(cls, p: int, n: int, counts: Mapping[Exponent, int]) -> "WeightEnumerator":
        return cls(
            p=p,
            n=n,
            terms={tuple(e): GaussianInt(c) for e, c in sorted(counts.items()) if c},
        )

    def coefficient(self, t: TypeVector | Exponent) -> GaussianInt:
        key = t.parts if isinstance(t, TypeVector) else tuple(t)
        return self.terms.get(key, GaussianInt(0))

    def total_mass(self) -> GaussianInt:
        total = GaussianInt(0)
        for value in self.terms.values():
            total = total + value
        return total

    def integer_terms(self) -> dict[Exponent, int]:
        """Coefficients as integers; raises if any coefficient keeps an imaginary part."""
        result = {}
        for exponent, value in self.terms.items():
            if not value.is_real():
                raise ResidualImaginaryError(
                    f"Coefficient of {exponent} is not real: {value}",
                    details={"exponent": list(exponent), "value": str(value)},
                )
            result[exponent] = value.re
        return result

    def is_code_enumerator(self) -> bool:
        return all(v.is_real() and v.re >= 0 for v in self.terms.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightEnumerator):
            return NotImplemented
        return self.p == other.p and self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.p, self.n, tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))))


def _check_type(p: int, t: TypeVector) -> None:
    if t.p != p:
        raise ParameterRangeError(
            f"Type {t} is over Z_{t.p}, expected Z_{p}", details={"p": p, "type": list(t.parts)}
        )


def code_size(p: int, t: TypeVector) -> int:
    """|<v>_p| = p / gcd(p, symbols present in v) for v of type t."""
    _check_type(p, t)
    g = p
    for symbol, count in enumerate(t.parts):
        if symbol and count:
            g = math.gcd(g, symbol)
    return p // g


def cwe_single_generator(p: int, t: TypeVector) -> WeightEnumerator:
    """
    Complete weight enumerator of the code <v>_p = {a v : a in Z_p} for v of type t.

    Args:
        p: Alphabet size (2, 3 or 4)
        t: Type of the generator

    Returns:
        WeightEnumerator: One contribution per distinct codeword multiple a v
    """
    _check_type(p, t)
    counts: dict[Exponent, int] = defaultdict(int)
    for a in range(code_size(p, t)):
        image = [0] * p
        for symbol, count in enumerate(t.parts):
            image[(a * symbol) % p] += count
        counts[tuple(image)] += 1
    return WeightEnumerator.from_counts(p, t.n, counts)


def _pair_mul(a: _Pair, b: _Pair) -> _Pair:
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def _sparse_mul(left: _Sparse, right: _Sparse) -> _Sparse:
    result: dict[Exponent, list[int]] = {}
    for e1, c1 in left.items():
        for e2, c2 in right.items():
            key = tuple(x + y for x, y in zip(e1, e2))
            re, im = _pair_mul(c1, c2)
            slot = result.setdefault(key, [0, 0])
            slot[0] += re
            slot[1] += im
    return {k: (v[0], v[1]) for k, v in result.items() if v[0] or v[1]}


@lru_cache(maxsize=1024)
def _character_form_power(p: int, a: int, e: int) -> tuple[tuple[Exponent, _Pair], ...]:
    """(sum_b zeta^{a b} x_b)^e expanded by the multinomial theorem."""
    terms = []
    for k in iter_compositions(p, e):
        phase = zeta_power(p, a * sum(b * kb for b, kb in enumerate(k)))
        coeff = multinomial_of(k)
        terms.append((k, (phase.re * coeff, phase.im * coeff)))
    return tuple(terms)


def _substitute(p: int, exponent: Exponent) -> _Sparse:
    result: _Sparse = {tuple([0] * p): (1, 0)}
    for a, e in enumerate(exponent):
        if e:
            result = _sparse_mul(result, dict(_character_form_power(p, a, e)))
    return result


@track_operation("macwilliams")
def macwilliams(p: int, enumerator: WeightEnumerator, code_size: int) -> WeightEnumerator:
    """
    Enumerator of the dual code through the MacWilliams identity.

    Each x_a is replaced by sum_b zeta_p^{a b} x_b and the result divided by |C|.

    Args:
        p: Alphabet size, 2 or 4
        enumerator: Complete weight enumerator of a code C
        code_size: |C|

    Returns:
        WeightEnumerator: Enumerator of the dual code

    Raises:
        ParameterRangeError: If p is not 2 or 4
        ResidualImaginaryError: If a coefficient keeps an imaginary part
        InexactDivisionError: If |C| does not divide a coefficient
        NonCodeEnumeratorError: If a coefficient is negative
    """
    if p not in TRANSFORM_ALPHABETS or enumerator.p != p:
        raise ParameterRangeError(
            f"MacWilliams transform is implemented for p in {TRANSFORM_ALPHABETS}",
            details={"p": p, "enumerator_p": enumerator.p},
        )
    if code_size <= 0:
        raise ParameterRangeError(f"Code size must be positive, got {code_size}")

    accumulated: dict[Exponent, list[int]] = defaultdict(lambda: [0, 0])
    for exponent, coefficient in enumerator.terms.items():
        for key, (re, im) in _substitute(p, exponent).items():
            slot = accumulated[key]
            slot[0] += coefficient.re * re - coefficient.im * im
            slot[1] += coefficient.re * im + coefficient.im * re

    terms: dict[Exponent, GaussianInt] = {}
    for key in sorted(accumulated):
        re, im = accumulated[key]
        if im:
            raise ResidualImaginaryError(
                f"MacWilliams image keeps imaginary part at {key}: the input is not a code",
                details={"exponent": list(key), "im": im},
            )
        if re % code_size:
            raise InexactDivisionError(
                f"Coefficient {re} at {key} is not divisible by |C| = {code_size}",
                details={"exponent": list(key), "value": re, "code_size": code_size},
            )
        value = re // code_size
        if value < 0:
            raise NonCodeEnumeratorError(
                f"MacWilliams image has negative coefficient {value} at {key}",
                details={"exponent": list(key), "value": value},
            )
        if value:
            terms[key] = GaussianInt(value)

    logger.debug("macwilliams_transformed", p=p, n=enumerator.n, terms=len(terms))
    return WeightEnumerator(p=p, n=enumerator.n, terms=terms)


def dual_enumerator(p: int, t: TypeVector) -> WeightEnumerator:
    """Enumerator of <v>_p^perp for v of type t."""
    return macwilliams(p, cwe_single_generator(p, t), code_size(p, t))


def _row_splits(total: int, capacity: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Compositions of total into len(capacity) parts bounded by capacity."""
    if len(capacity) == 1:
        if total <= capacity[0]:
            yield (total,)
        return
    for first in range(min(total, capacity[0]) + 1):
        for rest in _row_splits(total - first, capacity[1:]):
            yield (first, *rest)


def dual_coeff(p: int, s: TypeVector, t: TypeVector) -> int:
    """
    Number of vectors of type t orthogonal (mod p) to a fixed vector of type s.

    Positions are grouped by the symbol m of the fixed vector; a p x p contingency table N
    with row sums s and column sums t records how many positions pair m with k. Each table
    contributes prod_m multinomial(s_m; N[m, :]) when sum m k N[m][k] = 0 mod p.

    Args:
        p: Alphabet size (2, 3 or 4)
        s: Type of the fixed vector
        t: Type of the counted vectors

    Returns:
        int: A_{s-perp}[t]
    """
    _check_type(p, s)
    _check_type(p, t)
    if s.n != t.n:
        raise ParameterRangeError(
            f"Types must have equal length, got {s.n} and {t.n}",
            details={"s": list(s.parts), "t": list(t.parts)},
        )

    def rows(m: int, remaining: tuple[int, ...], phase: int) -> int:
        if m == p:
            return 1 if phase % p == 0 and not any(remaining) else 0
        total = 0
        for split in _row_splits(s[m], remaining):
            left = tuple(r - x for r, x in zip(remaining, split))
            shift = m * sum(k * x for k, x in enumerate(split))
            total += multinomial_of(split) * rows(m + 1, left, phase + shift)
        return total

    return rows(0, t.parts, 0)


def _rs_weights(r: int, s: int, t: TypeVector) -> int:
    if r < 0 or s < 0 or r + s == 0:
        raise ParameterRangeError(
            f"G(r, s) needs r, s >= 0 not both 0, got r={r}, s={s}", details={"r": r, "s": s}
        )
    _check_type(4, t)
    n = 2 * (r + s)
    if t.n != n:
        raise ParameterRangeError(
            f"Type {t} has length {t.n}, expected n = 2(r+s) = {n}",
            details={"r": r, "s": s, "type": list(t.parts)},
        )
    return n


@lru_cache(maxsize=256)
def rs_dual_enumerator(r: int, s: int) -> WeightEnumerator:
    """Z_4 enumerator of <b>^perp for b of type (r, s, r, s)."""
    return dual_enumerator(4, TypeVector.of(r, s, r, s))


@lru_cache(maxsize=256)
def binary_dual_enumerator(r: int, s: int) -> WeightEnumerator:
    """Binary enumerator of <b mod 2>^perp, the reduction having type (2r, 2s)."""
    return dual_enumerator(2, TypeVector.of(2 * r, 2 * s))


def _exact_quotient(numerator: int, denominator: int, what: str) -> int:
    quotient, remainder = divmod(numerator, denominator)
    if remainder:
        raise InexactDivisionError(
            f"{what}: {numerator} is not divisible by {denominator}",
            details={"numerator": numerator, "denominator": denominator},
        )
    return quotient


def beta(r: int, s: int, t: TypeVector) -> int:
    """
    |S(v, 0)| + |S(v, 2)| for v of type t, where S is the generating set of G(r, s).

    b . v is even iff (b mod 2) . (v mod 2) is; counting binary reductions gives
    C(n; r,s,r,s) / C(n, t0+t2) times the [t0+t2, t1+t3] coefficient of the binary dual
    enumerator of type (2r, 2s).

    Args:
        r: Number of 0s (and of 2s) in a generator
        s: Number of 1s (and of 3s) in a generator
        t: Type of v over Z_4 with n = 2(r+s)

    Returns:
        int: beta(v)
    """
    n = _rs_weights(r, s, t)
    even = t[0] + t[2]
    coefficient = binary_dual_enumerator(r, s).coefficient((even, n - even)).re
    return _exact_quotient(
        multinomial(TypeVector.of(r, s, r, s)) * coefficient, binomial(n, even), "beta"
    )


def s0_count(r: int, s: int, t: TypeVector) -> int:
    """
    |S(v, 0)|: generators b of type (r, s, r, s) with b . v = 0 in Z_4.

    By the duality lemma this is C(n; r,s,r,s) A_{(r,s,r,s)-perp}[t] / C(n; t).

    Args:
        r: Number of 0s (and of 2s) in a generator
        s: Number of 1s (and of 3s) in a generator
        t: Type of v over Z_4 with n = 2(r+s)

    Returns:
        int: |S(v, 0)|
    """
    _rs_weights(r, s, t)
    coefficient = rs_dual_enumerator(r, s).coefficient(t).re
    return _exact_quotient(
        multinomial(TypeVector.of(r, s, r, s)) * coefficient, multinomial(t), "s0_count"
    )


def _space_matrix(p: int, n: int) -> np.ndarray:
    if p**n > BRUTEFORCE_SPACE_CAP:
        raise OracleCapExceededError(
            f"Enumerating Z_{p}^{n} exceeds the brute-force cap of {BRUTEFORCE_SPACE_CAP} vectors",
            details={"p": p, "n": n, "cap": BRUTEFORCE_SPACE_CAP},
        )
    return np.array(list(product(range(p), repeat=n)), dtype=np.int64).reshape(p**n, n)


def representative(t: TypeVector) -> np.ndarray:
    """Sorted representative 0^{t0} 1^{t1} ... of a type."""
    return np.repeat(np.arange(t.p, dtype=np.int64), t.parts)


def dual_coeff_bruteforce(p: int, s: TypeVector) -> dict[Exponent, int]:
    """
    Tally, by type, the vectors of Z_p^n orthogonal to the representative of s.

    Args:
        p: Alphabet size
        s: Type of the fixed vector

    Returns:
        dict: Type tuple -> count

    Raises:
        OracleCapExceededError: If p^n exceeds the brute-force cap
    """
    _check_type(p, s)
    space = _space_matrix(p, s.n)
    orthogonal = space[(space @ representative(s)) % p == 0]
    types = np.stack([(orthogonal == k).sum(axis=1) for k in range(p)], axis=1)
    keys, counts = np.unique(types, axis=0, return_counts=True)
    oracle_evaluations_total.labels(oracle="dual").inc()
    return {tuple(int(x) for x in key): int(c) for key, c in zip(keys, counts)}


def dual_enumerator_bruteforce(p: int, t: TypeVector) -> WeightEnumerator:
    """Enumerator of <v>_p^perp obtained by scanning all of Z_p^n."""
    return WeightEnumerator.from_counts(p, t.n, dual_coeff_bruteforce(p, t))
