"""
Exact combinatorial primitives and type-vector enumeration.

All counting is done with Python integers; floats only appear in the entropy helpers.
"""
import math
import threading
from collections.abc import Iterator, Sequence

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.special import entr

from src.core.config import settings
from src.core.exceptions import DomainError, ParameterRangeError

SUPPORTED_ALPHABETS = (2, 3, 4)


class TypeVector(BaseModel):
    """Symbol occurrence counts (t_0, ..., t_{p-1}) of a vector over Z_p."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(..., description="Alphabet size")
    parts: tuple[int, ...] = Field(..., description="Occurrence count of each symbol")

    @model_validator(mode="after")
    def check_parts(self) -> "TypeVector":
        if self.p not in SUPPORTED_ALPHABETS:
            raise ParameterRangeError(
                f"Alphabet size must be one of {SUPPORTED_ALPHABETS}, got {self.p}",
                details={"p": self.p},
            )
        if len(self.parts) != self.p:
            raise ParameterRangeError(
                f"Type over Z_{self.p} needs {self.p} parts, got {len(self.parts)}",
                details={"parts": list(self.parts)},
            )
        if any(part < 0 for part in self.parts):
            raise ParameterRangeError(
                "Type parts must be non-negative",
                details={"parts": list(self.parts)},
            )
        return self

    @classmethod
    def of(cls, *parts: int) -> "TypeVector":
        """Build a type whose alphabet size is the number of parts."""
        return cls(p=len(parts), parts=tuple(parts))

    @classmethod
    def of_vector(cls, p: int, vector: Sequence[int]) -> "TypeVector":
        """Type of a concrete vector over Z_p."""
        counts = [0] * p
        for symbol in vector:
            counts[symbol % p] += 1
        return cls(p=p, parts=tuple(counts))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __getitem__(self, index: int) -> int:
        return self.parts[index]

    def __str__(self) -> str:
        return ",".join(str(part) for part in self.parts)


class FactorialCache:
    """
    Read-mostly factorial table shared by all multinomial evaluations.

    Values up to the configured cap are memoised; larger arguments fall back to math.factorial.
    Growth happens under a lock, reads do not take it.
    """

    def __init__(self, cap: int) -> None:
        self._cap = cap
        self._table: list[int] = [1]
        self._lock = threading.Lock()

    def _grow(self, upto: int) -> None:
        with self._lock:
            table = list(self._table)
            for k in range(len(table), upto + 1):
                table.append(table[-1] * k)
            self._table = table

    def __call__(self, n: int) -> int:
        if n < 0:
            raise ParameterRangeError(f"Factorial of negative integer {n}")
        if n > self._cap:
            return math.factorial(n)
        table = self._table
        if n >= len(table):
            self._grow(n)
            table = self._table
        return table[n]


# Global instance
factorial = FactorialCache(settings.factorial_cache_cap)


def binomial(n: int, k: int) -> int:
    """C(n, k), zero when k < 0 or k > n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial_of(parts: Sequence[int]) -> int:
    """n! / prod(t_i!) for a plain tuple of parts."""
    result = factorial(sum(parts))
    for part in parts:
        result //= factorial(part)
    return result


def multinomial(t: TypeVector) -> int:
    """
    Number of vectors of type t.

    Args:
        t: Type vector

    Returns:
        int: n! / (t_0! ... t_{p-1}!)
    """
    return multinomial_of(t.parts)


def iter_compositions(p: int, n: int) -> Iterator[tuple[int, ...]]:
    """Non-negative ordered partitions of n into p parts, lexicographic, as plain tuples."""
    if p == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in iter_compositions(p - 1, n - first):
            yield (first, *rest)


def enumerate_types(p: int, n: int) -> Iterator[TypeVector]:
    """
    Lazily yield every type of length n over Z_p in lexicographic order.

    Args:
        p: Alphabet size
        n: Vector length

    Yields:
        TypeVector: Each of the C(n+p-1, p-1) types exactly once

    Raises:
        ParameterRangeError: If p < 2 or n < 0
    """
    if p < 2 or n < 0:
        raise ParameterRangeError(
            f"enumerate_types needs p >= 2 and n >= 0, got p={p}, n={n}",
            details={"p": p, "n": n},
        )
    for parts in iter_compositions(p, n):
        yield TypeVector(p=p, parts=parts)


def binary_entropy(x: float) -> float:
    """
    Binary entropy h(x) = -x log2 x - (1-x) log2(1-x).

    Args:
        x: Probability in [0, 1]

    Returns:
        float: h(x), with h(0) = h(1) = 0

    Raises:
        DomainError: If x lies outside [0, 1]
    """
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"Binary entropy is defined on [0, 1], got {x}", details={"x": x})
    return float((entr(x) + entr(1.0 - x)) / math.log(2.0))


def binary_entropy_array(xs: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """Vectorised binary entropy over an array of probabilities."""
    values = np.asarray(xs, dtype=np.float64)
    if np.any((values < 0.0) | (values > 1.0)):
        raise DomainError("Binary entropy is defined on [0, 1]", details={"x": values.tolist()})
    return np.asarray((entr(values) + entr(1.0 - values)) / np.log(2.0), dtype=np.float64)
