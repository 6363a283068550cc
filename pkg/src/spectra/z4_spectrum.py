"""
Eigenvalues of G(r, s) = Cay(Z_4^n, (r, s, r, s)) with n = 2(r + s).

The generating set S holds every vector with r zeros, s ones, r twos and s threes.
The eigenvalue of the character indexed by v depends only on the type of v.
"""
from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations, islice

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.core.config import settings
from src.core.exceptions import (
    InexactDivisionError,
    OracleCapExceededError,
    ParameterRangeError,
    ResidualImaginaryError,
)
from src.core.logging import get_logger
from src.core.metrics import oracle_evaluations_total, track_operation, types_scanned_total
from src.spectra.combinatorics import (
    TypeVector,
    binomial,
    enumerate_types,
    iter_compositions,
    multinomial_of,
)
from src.spectra.krawtchouk import krawtchouk_eval

logger = get_logger(__name__)

Parts = tuple[int, int, int, int]


class Z4EigenvalueRecord(BaseModel):
    """Eigenvalue of G(r, s) on the characters of one type."""

    model_config = ConfigDict(frozen=True)

    t: TypeVector = Field(..., description="Type of the character index v")
    value: int = Field(..., description="|S(v,0)| - |S(v,2)|")
    multiplicity: int = Field(..., ge=1, description="Number of vectors of type t")


class Z4MinResult(BaseModel):
    """Smallest eigenvalue of G(r, s)."""

    model_config = ConfigDict(frozen=True)

    lambda_min: int = Field(..., description="Smallest eigenvalue")
    argmin_types: list[TypeVector] = Field(..., description="Canonical types attaining it")
    matches_formula: bool = Field(..., description="lambda_min == -C(n; r,s,r,s)/(n-1)")


def _length(r: int, s: int) -> int:
    if r < 0 or s < 0 or r + s == 0:
        raise ParameterRangeError(
            f"G(r, s) needs r, s >= 0 not both 0, got r={r}, s={s}",
            details={"r": r, "s": s},
        )
    return 2 * (r + s)


def _parts(r: int, s: int, t: TypeVector | Sequence[int]) -> Parts:
    n = _length(r, s)
    parts = t.parts if isinstance(t, TypeVector) else tuple(t)
    if len(parts) != 4 or any(x < 0 for x in parts) or sum(parts) != n:
        raise ParameterRangeError(
            f"Type {list(parts)} is not a Z_4 type of length n = 2(r+s) = {n}",
            details={"r": r, "s": s, "type": list(parts)},
        )
    return parts[0], parts[1], parts[2], parts[3]


def lambda_max(r: int, s: int) -> int:
    """Degree of G(r, s), the eigenvalue at v = 0."""
    _length(r, s)
    return multinomial_of((r, s, r, s))


def _coefficient(r: int, s: int, parts: Parts) -> int:
    t0, t1, t2, t3 = parts
    if (t0 + t2) % 2:
        return 0
    a = (t0 + t2) // 2
    total = 0
    for k in range(max(0, a - s), min(r, a) + 1):
        l = a - k  # noqa: E741
        xz = krawtchouk_eval(2 * a, t2, 2 * l)
        yw = krawtchouk_eval(t1 + t3, t3, 2 * (s - l))
        total += (-1) ** (r - k) * binomial(r, k) * binomial(s, l) * xz * yw
    return total


def rs_polynomial_coeff(r: int, s: int, t: TypeVector | Sequence[int]) -> int:
    """
    Coefficient of x^t0 y^t1 z^t2 w^t3 in ((x+z)^2 - (y+w)^2)^r ((x-z)^2 + (y-w)^2)^s.

    Expands in the aggregates x+z, y+w, x-z, y-w; each bivariate block
    (u+v)^{N-q}(u-v)^q contributes its v^b coefficient K_b(q) of length N.
    """
    return _coefficient(r, s, _parts(r, s, t))


def _eigenvalue(r: int, s: int, parts: Parts) -> int:
    numerator = multinomial_of((r, s, r, s)) * _coefficient(r, s, parts)
    value, remainder = divmod(numerator, multinomial_of(parts))
    if remainder:
        raise InexactDivisionError(
            f"Eigenvalue of G({r},{s}) at type {parts} is not an integer",
            details={"r": r, "s": s, "type": list(parts), "numerator": numerator},
        )
    return value


def eigenvalue_by_type(r: int, s: int, t: TypeVector | Sequence[int]) -> int:
    """
    Exact eigenvalue of G(r, s) on characters of type t.

    lambda(t) = C(n; r,s,r,s) / C(n; t) * rs_polynomial_coeff(r, s, t).

    Args:
        r: Number of 0s (and of 2s) in a generator
        s: Number of 1s (and of 3s) in a generator
        t: Type over Z_4 with n = 2(r + s)

    Returns:
        int: The eigenvalue

    Raises:
        ParameterRangeError: On an invalid (r, s, t)
        InexactDivisionError: If C(n; t) does not divide the numerator
    """
    return _eigenvalue(r, s, _parts(r, s, t))


def iter_generators(r: int, s: int) -> Iterator[tuple[int, ...]]:
    """
    Stream every vector of type (r, s, r, s).

    Chooses 2r positions for the even symbols and splits them r/r into 0s and 2s,
    then splits the remaining 2s positions s/s into 1s and 3s.
    """
    n = _length(r, s)
    for even in combinations(range(n), 2 * r):
        chosen = set(even)
        odd = [k for k in range(n) if k not in chosen]
        for twos in combinations(even, r):
            for threes in combinations(odd, s):
                vector = [1] * n
                for k in even:
                    vector[k] = 0
                for k in twos:
                    vector[k] = 2
                for k in threes:
                    vector[k] = 3
                yield tuple(vector)


def _generator_chunks(r: int, s: int, size: int) -> Iterator[np.ndarray]:
    stream = iter_generators(r, s)
    while chunk := list(islice(stream, size)):
        yield np.asarray(chunk, dtype=np.int32)


def s_partition_counts(r: int, s: int, vectors: np.ndarray) -> np.ndarray:
    """
    |S(v, a)| for a = 0..3 and every row v of vectors.

    Args:
        r: Number of 0s (and of 2s) in a generator
        s: Number of 1s (and of 3s) in a generator
        vectors: Array of shape (m, n) over Z_4

    Returns:
        np.ndarray: Integer array of shape (m, 4)

    Raises:
        OracleCapExceededError: If n exceeds settings.z4_oracle_cap
    """
    n = _length(r, s)
    if n > settings.z4_oracle_cap:
        raise OracleCapExceededError(
            f"Z_4 oracle is capped at n={settings.z4_oracle_cap}, got n={n}",
            details={"n": n, "cap": settings.z4_oracle_cap},
        )
    batch = np.atleast_2d(np.asarray(vectors, dtype=np.int32)) % 4
    if batch.shape[1] != n:
        raise ParameterRangeError(
            f"Vectors must have length {n}, got {batch.shape[1]}",
            details={"n": n, "length": int(batch.shape[1])},
        )
    counts = np.zeros((batch.shape[0], 4), dtype=np.int64)
    for chunk in _generator_chunks(r, s, settings.oracle_chunk_size):
        dots = (chunk @ batch.T) % 4
        for a in range(4):
            counts[:, a] += (dots == a).sum(axis=0)
    oracle_evaluations_total.labels(oracle="z4").inc(batch.shape[0])
    return counts


def eigenvalue_bruteforce_batch(r: int, s: int, vectors: np.ndarray) -> list[int]:
    """Character sums over S for every row of vectors; imaginary parts must vanish."""
    counts = s_partition_counts(r, s, vectors)
    imaginary = counts[:, 1] - counts[:, 3]
    if np.any(imaginary):
        row = int(np.flatnonzero(imaginary)[0])
        raise ResidualImaginaryError(
            f"Character sum of G({r},{s}) has imaginary part {int(imaginary[row])}",
            details={"r": r, "s": s, "row": row},
        )
    return [int(x) for x in counts[:, 0] - counts[:, 2]]


def eigenvalue_bruteforce(r: int, s: int, v: Sequence[int]) -> int:
    """
    Eigenvalue of G(r, s) at v as the character sum over all generators.

    Args:
        r: Number of 0s (and of 2s) in a generator
        s: Number of 1s (and of 3s) in a generator
        v: Vector over Z_4 of length n = 2(r + s)

    Returns:
        int: Real part of sum_b zeta_4^{v.b}

    Raises:
        OracleCapExceededError: If n exceeds settings.z4_oracle_cap
        ResidualImaginaryError: If the sum is not real
    """
    return eigenvalue_bruteforce_batch(r, s, np.asarray([v]))[0]


def z4_spectrum(r: int, s: int) -> list[Z4EigenvalueRecord]:
    """Eigenvalue records for every type, in lexicographic type order."""
    n = _length(r, s)
    return [
        Z4EigenvalueRecord(
            t=t, value=_eigenvalue(r, s, t.parts), multiplicity=multinomial_of(t.parts)
        )
        for t in enumerate_types(4, n)
    ]


def orbit(t: TypeVector | Sequence[int], r: int) -> list[Parts]:
    """
    Types sharing the eigenvalue of t: closure under t0<->t2, t1<->t3
    and, for even r, the cyclic shift (t0,t1,t2,t3) -> (t3,t0,t1,t2).
    """
    parts = tuple(t.parts if isinstance(t, TypeVector) else t)
    seen = {parts}
    frontier = [parts]
    while frontier:
        a, b, c, d = frontier.pop()
        images = [(c, b, a, d), (a, d, c, b)]
        if r % 2 == 0:
            images.append((d, a, b, c))
        for image in images:
            if image not in seen:
                seen.add(image)
                frontier.append(image)
    return sorted(seen)  # type: ignore[arg-type]


def canonical_type(t: TypeVector | Sequence[int], r: int) -> Parts:
    """Lexicographically smallest member of the orbit of t."""
    return orbit(t, r)[0]


def _scan_shard(r: int, s: int, shard: list[Parts]) -> tuple[int, list[Parts]]:
    best: int | None = None
    attaining: list[Parts] = []
    for parts in shard:
        value = _eigenvalue(r, s, parts)
        if best is None or value < best:
            best, attaining = value, [parts]
        elif value == best:
            attaining.append(parts)
    assert best is not None
    return best, attaining


@track_operation("lambda_min_scan")
def lambda_min_scan(r: int, s: int) -> Z4MinResult:
    """
    Exact smallest eigenvalue of G(r, s) over canonical type representatives.

    Shards the representatives across settings.effective_workers() processes;
    the exact min-reduce makes the result independent of sharding.

    Args:
        r: Number of 0s (and of 2s) in a generator
        s: Number of 1s (and of 3s) in a generator

    Returns:
        Z4MinResult: Minimum, sorted canonical argmin types and the formula check
    """
    n = _length(r, s)
    representatives = [
        parts for parts in iter_compositions(4, n) if canonical_type(parts, r) == parts
    ]
    workers = min(settings.effective_workers(), len(representatives))

    if workers <= 1:
        results = [_scan_shard(r, s, representatives)]
    else:
        shards = [representatives[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_shard, [r] * workers, [s] * workers, shards))

    best = min(value for value, _ in results)
    argmin = sorted(parts for value, group in results if value == best for parts in group)
    types_scanned_total.labels(family="z4").inc(len(representatives))

    matches = n >= 3 and best == smallest_ev_formula(r, s)
    logger.debug(
        "lambda_min_scanned",
        r=r,
        s=s,
        lambda_min=best,
        representatives=len(representatives),
        workers=workers,
    )
    return Z4MinResult(
        lambda_min=best,
        argmin_types=[TypeVector(p=4, parts=parts) for parts in argmin],
        matches_formula=matches,
    )


def smallest_ev_formula(r: int, s: int) -> int:
    """
    -C(n; r,s,r,s) / (n - 1), the eigenvalue at type (0, 1, n-2, 1).

    Raises:
        ParameterRangeError: If n < 3
        InexactDivisionError: If n - 1 does not divide the degree
    """
    n = _length(r, s)
    if n < 3:
        raise ParameterRangeError(f"smallest_ev_formula needs n >= 3, got n={n}", details={"n": n})
    value, remainder = divmod(lambda_max(r, s), n - 1)
    if remainder:
        raise InexactDivisionError(
            f"n - 1 = {n - 1} does not divide C(n; {r},{s},{r},{s})",
            details={"r": r, "s": s},
        )
    return -value


def boundary_eigenvalue(r: int, s: int, t1: int, t3: int) -> int:
    """
    Eigenvalue at type (0, t1, 0, t3): (-1)^r C(n; r,s,r,s) / C(n, 2s) * K_{2s}(t3).

    Args:
        r: Number of 0s (and of 2s) in a generator
        s: Number of 1s (and of 3s) in a generator
        t1: Number of 1s in v
        t3: Number of 3s in v, with t1 + t3 = n

    Returns:
        int: The eigenvalue
    """
    n = _length(r, s)
    if t1 < 0 or t3 < 0 or t1 + t3 != n:
        raise ParameterRangeError(
            f"Boundary type needs t1 + t3 = n = {n}, got t1={t1}, t3={t3}",
            details={"n": n, "t1": t1, "t3": t3},
        )
    scale = lambda_max(r, s) // binomial(n, 2 * s)
    return (-1) ** r * scale * krawtchouk_eval(n, 2 * s, t3)


def boundary_minimum(r: int, s: int) -> int:
    """
    Minimum eigenvalue over types with t0 + t2 = 0 or t1 + t3 = 0.

    Types (a, 0, b, 0) shift to (0, b, 0, a) under v -> v + 1, scaling the eigenvalue by (-1)^r.
    """
    n = _length(r, s)
    sign = (-1) ** r
    values = []
    for t1 in range(n + 1):
        value = boundary_eigenvalue(r, s, t1, n - t1)
        values.append(value)
        values.append(sign * value)
    return min(values)


def interior_bound_check(r: int, s: int) -> bool:
    """
    Check |lambda(t)| <= C(n; r,s,r,s) / (n - 1) for every type with t0+t2 != 0 and t1+t3 != 0.

    Compared as |coefficient| * (n - 1) <= C(n; t), without division.

    Raises:
        ParameterRangeError: If n < 10
    """
    n = _length(r, s)
    if n < 10:
        raise ParameterRangeError(
            f"The interior bound is only claimed for n >= 10, got n={n}", details={"n": n}
        )
    for parts in iter_compositions(4, n):
        if parts[0] + parts[2] == 0 or parts[1] + parts[3] == 0:
            continue
        if abs(_coefficient(r, s, parts)) * (n - 1) > multinomial_of(parts):
            logger.debug("interior_bound_violated", r=r, s=s, type=list(parts))
            return False
    return True
