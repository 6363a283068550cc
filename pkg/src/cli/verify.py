"""
Verification harness: every identity and lemma checked against an independent oracle.

The quick level keeps brute-force oracles at n <= 8; the full level runs the acceptance ranges.
"""
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from itertools import product
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field

from src.core.exceptions import HammingSpectraException
from src.core.logging import get_logger
from src.core.metrics import verification_checks_total
from src.spectra.chiq_bounds import (
    l_alpha,
    lu_table,
    region_alpha_holds,
    z4_chiq,
)
from src.spectra.combinatorics import (
    TypeVector,
    binomial,
    enumerate_types,
    iter_compositions,
    multinomial,
    multinomial_of,
)
from src.spectra.hamming_spectrum import (
    char_sum_oracle,
    krawtchouk_duality_holds,
    lambda_min_exact,
    lambda_min_j4_closed,
    lb_bound_fixed_j,
    lb_bound_theta,
)
from src.spectra.krawtchouk import (
    krawtchouk_eval,
    m_coefficient,
    m_coefficient_by_enumeration,
    q_coeff_closed_form,
    q_coeff_from_recursion,
    q_polys_by_recursion,
)
from src.spectra.weight_enum import (
    beta,
    code_size,
    cwe_single_generator,
    dual_coeff,
    dual_coeff_bruteforce,
    dual_enumerator,
    dual_enumerator_bruteforce,
    macwilliams,
    representative,
    s0_count,
)
from src.spectra.z4_spectrum import (
    boundary_eigenvalue,
    boundary_minimum,
    eigenvalue_by_type,
    eigenvalue_bruteforce_batch,
    interior_bound_check,
    lambda_min_scan,
    s_partition_counts,
    smallest_ev_formula,
)

logger = get_logger(__name__)

Level = Literal["quick", "full"]

# Published lower/upper exponential bases for alpha = 0.01..0.17.
REFERENCE_LU_TABLE: dict[float, tuple[float, float]] = {
    0.01: (1.062, 1.961),
    0.02: (1.105, 1.922),
    0.03: (1.140, 1.885),
    0.04: (1.171, 1.848),
    0.05: (1.198, 1.813),
    0.06: (1.222, 1.778),
    0.07: (1.243, 1.745),
    0.08: (1.262, 1.712),
    0.09: (1.279, 1.680),
    0.10: (1.293, 1.649),
    0.11: (1.307, 1.619),
    0.12: (1.318, 1.590),
    0.13: (1.328, 1.562),
    0.14: (1.336, 1.534),
    0.15: (1.343, 1.507),
    0.16: (1.349, 1.481),
    0.17: (1.353, 1.456),
}
TABLE_TOLERANCE = 1e-3


class CheckResult(BaseModel):
    """Outcome of one verification check."""

    suite: str = Field(..., description="quick or full")
    name: str = Field(..., description="Check identifier")
    passed: bool
    detail: str = Field(default="")


Outcome = tuple[bool, str]


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[[bool], Outcome]


def _first_failure(cases: Iterator[tuple[bool, str]], done: str) -> Outcome:
    for ok, where in cases:
        if not ok:
            return False, where
    return True, done


def _z4_pairs(n: int) -> list[tuple[int, int]]:
    return [(r, n // 2 - r) for r in range(n // 2 + 1)]


def check_type_partition(full: bool) -> Outcome:
    top = 16 if full else 8
    cases = (
        (sum(multinomial_of(t) for t in iter_compositions(p, n)) == p**n, f"p={p}, n={n}")
        for p in (2, 3, 4)
        for n in range(top + 1)
    )
    return _first_failure(cases, f"sum of multinomials is p^n for n <= {top}")


def check_substitution_identity(full: bool) -> Outcome:
    top = 30 if full else 12

    def cases() -> Iterator[tuple[bool, str]]:
        for n in range(top + 1):
            polys = q_polys_by_recursion(n, n)
            for j, w in product(range(n + 1), repeat=2):
                yield polys[j].evaluate_int(n - 2 * w) == krawtchouk_eval(n, j, w), f"{n},{j},{w}"

    return _first_failure(cases(), f"q_j(n-2w) = K_j(w) for n <= {top}")


def check_coefficient_theorem(full: bool) -> Outcome:
    lengths, top = ((31, 40, 61), 30) if full else ((13, 20), 12)

    def cases() -> Iterator[tuple[bool, str]]:
        for n in lengths:
            for j in range(top + 1):
                for i in range(j + 1):
                    ok = q_coeff_closed_form(n, j, i) == q_coeff_from_recursion(n, j, i)
                    yield ok, f"n={n}, j={j}, i={i}"
        for j in range(min(top, 16) + 1):
            for i in range(0, j + 1, 2):
                yield m_coefficient(20, j, i) == m_coefficient_by_enumeration(20, j, i), f"M j={j}"

    return _first_failure(cases(), f"closed form matches recursion for j <= {top}")


def check_krawtchouk_identities(full: bool) -> Outcome:
    top = 30 if full else 12

    def cases() -> Iterator[tuple[bool, str]]:
        for n in range(1, top + 1):
            yield krawtchouk_duality_holds(n), f"duality n={n}"
            for j in range(n + 1):
                column = [krawtchouk_eval(n, j, x) for x in range(n + 1)]
                symmetric = all(column[x] == (-1) ** j * column[n - x] for x in range(n + 1))
                yield symmetric, f"symmetry n={n}, j={j}"
                if j >= 1 and n <= 20:
                    row_sum = sum(binomial(n, w) * column[w] for w in range(n + 1))
                    yield row_sum == 0, f"orthogonality n={n}, j={j}"

    return _first_failure(cases(), f"symmetry, duality and orthogonality for n <= {top}")


def check_hamming_oracle(full: bool) -> Outcome:
    top = 12 if full else 8
    cases = (
        (char_sum_oracle(n, j, w) == krawtchouk_eval(n, j, w), f"n={n}, j={j}, w={w}")
        for n in range(1, top + 1)
        for j in range(n + 1)
        for w in range(n + 1)
    )
    return _first_failure(cases, f"character sums equal K_j(w) for n <= {top}")


def check_closed_form_regimes(full: bool) -> Outcome:
    top = 28 if full else 16

    def cases() -> Iterator[tuple[bool, str]]:
        for n in range(8, top + 1, 2):
            for j in range(n // 2 + n // 2 % 2, n - 1, 2):
                expected = krawtchouk_eval(n, j, 1 if 2 * j > n else 2)
                yield lambda_min_exact(n, j).lambda_min == expected, f"even n={n}, j={j}"
        for n in range(3, top + 1):
            # j = n is excluded: K_n(w) = (-1)^w already reaches -1 at w = 1
            for j in range(1, n, 2):
                result = lambda_min_exact(n, j)
                ok = result.lambda_min == -binomial(n, j) and result.argmin_w == n
                yield ok, f"odd j n={n}, j={j}"
        for n in range(4, 41):
            yield lambda_min_exact(n, 2).lambda_min == -(n // 2), f"j=2 n={n}"
        for n in range(9, 41):
            envelope, closed = lambda_min_j4_closed(n)
            yield closed.lambda_min >= envelope, f"j=4 envelope n={n}"

    return _first_failure(cases(), "scans agree with every applicable closed form")


def check_bound_domination(full: bool) -> Outcome:
    def cases() -> Iterator[tuple[bool, str]]:
        for n in range(9, 25):
            for j in range(4, (n + 1) // 2, 2):
                if 2 * j >= n:
                    continue
                magnitude = abs(lambda_min_exact(n, j).lambda_min)
                yield lb_bound_fixed_j(n, j) >= magnitude, f"fixed j n={n}, j={j}"
                if 3 * j < n:
                    yield lb_bound_theta(n, j / n) >= magnitude, f"theta n={n}, j={j}"

    return _first_failure(cases(), "both evaluators dominate |lambda_min| for n <= 24")


def check_macwilliams(full: bool) -> Outcome:
    limits = {2: 10, 4: 6} if full else {2: 6, 4: 4}

    def cases() -> Iterator[tuple[bool, str]]:
        for p, top in limits.items():
            for n in range(1, top + 1):
                for t in enumerate_types(p, n):
                    dual = dual_enumerator(p, t)
                    yield dual == dual_enumerator_bruteforce(p, t), f"transform p={p}, t={t}"
                    back = macwilliams(p, dual, p**n // code_size(p, t))
                    yield back == cwe_single_generator(p, t), f"involution p={p}, t={t}"

    return _first_failure(cases(), f"MacWilliams images match direct enumeration {limits}")


def check_duality_lemma(full: bool) -> Outcome:
    top = 8 if full else 4

    def cases() -> Iterator[tuple[bool, str]]:
        for p in (2, 3, 4):
            for n in range(top + 1):
                types = list(enumerate_types(p, n))
                for s in types:
                    table = dual_coeff_bruteforce(p, s) if n <= 6 else None
                    for t in types:
                        forward = dual_coeff(p, s, t)
                        if table is not None:
                            yield forward == table.get(t.parts, 0), f"count p={p}, s={s}, t={t}"
                        backward = dual_coeff(p, t, s)
                        ok = multinomial(s) * forward == multinomial(t) * backward
                        yield ok, f"lemma p={p}, s={s}, t={t}"

    return _first_failure(cases(), f"duality lemma for p in (2,3,4), n <= {top}")


def check_z4_oracle(full: bool) -> Outcome:
    lengths = (4, 6, 8, 12) if full else (4, 6, 8)

    def cases() -> Iterator[tuple[bool, str]]:
        for n in lengths:
            types = list(enumerate_types(4, n))
            batch = np.stack([representative(t) for t in types])
            for r, s in _z4_pairs(n):
                brute = eigenvalue_bruteforce_batch(r, s, batch)
                for t, value in zip(types, brute):
                    yield value == eigenvalue_by_type(r, s, t), f"r={r}, s={s}, t={t}"

    return _first_failure(cases(), f"character sums equal the type formula for n in {lengths}")


def check_z4_identities(full: bool) -> Outcome:
    top = 8 if full else 4

    def cases() -> Iterator[tuple[bool, str]]:
        for total in range(1, top + 1):
            n = 2 * total
            for r, s in _z4_pairs(n):
                degree = multinomial_of((r, s, r, s))
                values = {t: eigenvalue_by_type(r, s, t) for t in iter_compositions(4, n)}
                trace = sum(multinomial_of(t) * v for t, v in values.items())
                yield trace == 0, f"trace r={r}, s={s}"
                if total <= 6:
                    moment = sum(multinomial_of(t) * v * v for t, v in values.items())
                    yield moment == 4**n * degree, f"second moment r={r}, s={s}"
                for (a, b, c, d), v in values.items():
                    yield values[(c, b, a, d)] == v, f"swap02 r={r}, s={s}"
                    yield values[(a, d, c, b)] == v, f"swap13 r={r}, s={s}"
                    yield values[(d, a, b, c)] == (-1) ** r * v, f"shift r={r}, s={s}"

    return _first_failure(cases(), f"trace, moment and symmetries for r+s <= {top}")


def check_decomposition(full: bool) -> Outcome:
    def cases() -> Iterator[tuple[bool, str]]:
        for n in (4, 6, 8):
            types = list(enumerate_types(4, n))
            batch = np.stack([representative(t) for t in types])
            for r, s in _z4_pairs(n):
                counts = s_partition_counts(r, s, batch)
                for t, row in zip(types, counts):
                    s0, b = s0_count(r, s, t), beta(r, s, t)
                    yield s0 == int(row[0]), f"s0 r={r}, s={s}, t={t}"
                    yield b == int(row[0] + row[2]), f"beta r={r}, s={s}, t={t}"
                    yield b >= s0 >= 0, f"order r={r}, s={s}, t={t}"
                    yield eigenvalue_by_type(r, s, t) == 2 * s0 - b, f"2s0-beta r={r}, s={s}, t={t}"

    return _first_failure(cases(), "lambda = 2|S(v,0)| - beta(v) for n <= 8")


def check_z4_lemmas(full: bool) -> Outcome:
    boundary_top = 8 if full else 5
    interior = range(10, 17, 2) if full else (10,)

    def cases() -> Iterator[tuple[bool, str]]:
        for total in range(2, 11):
            n = 2 * total
            for r, s in _z4_pairs(n):
                ok = smallest_ev_formula(r, s) == eigenvalue_by_type(r, s, (0, 1, n - 2, 1))
                yield ok, f"formula r={r}, s={s}"
        for total in range(1, boundary_top + 1):
            n = 2 * total
            for r, s in _z4_pairs(n):
                for t1 in range(n + 1):
                    ok = boundary_eigenvalue(r, s, t1, n - t1) == eigenvalue_by_type(
                        r, s, (0, t1, 0, n - t1)
                    )
                    yield ok, f"boundary r={r}, s={s}, t1={t1}"
        for n in interior:
            for r, s in _z4_pairs(n):
                yield interior_bound_check(r, s), f"interior r={r}, s={s}"
                structural = min(smallest_ev_formula(r, s), boundary_minimum(r, s))
                yield lambda_min_scan(r, s).lambda_min == structural, f"structural r={r}, s={s}"

    return _first_failure(cases(), "formula, boundary, interior and structural-minimum lemmas")


def check_headline(full: bool) -> Outcome:
    result = lambda_min_scan(4, 2)
    if result.lambda_min != -18900 or not result.matches_formula:
        return False, f"G(4,2) minimum {result.lambda_min}"
    if TypeVector.of(0, 1, 10, 1) not in result.argmin_types:
        return False, "(0,1,10,1) missing from argmin types"
    report = z4_chiq(4, 2)
    if not (report.spectral_lb == 12 and report.equality):
        return False, f"z4_chiq(4,2) lower bound {report.spectral_lb}"
    if full and not lambda_min_scan(6, 2).matches_formula:
        return False, "G(6,2) minimum differs from the formula"
    return True, "lambda_min(G(4,2)) = -18900 and chi_q bounds meet at 12"


def check_region_and_table(full: bool) -> Outcome:
    if not region_alpha_holds(0.17) or region_alpha_holds(0.185):
        return False, "region predicate at 0.17 / 0.185"
    for k in range(1, 300):
        alpha = k / 1000
        if (l_alpha(alpha) > 1.0) != region_alpha_holds(alpha):
            return False, f"l(alpha) > 1 disagrees with the region predicate at {alpha}"
    for row in lu_table(sorted(REFERENCE_LU_TABLE)):
        expected_l, expected_u = REFERENCE_LU_TABLE[row.alpha]
        if abs(row.l - expected_l) > TABLE_TOLERANCE or abs(row.u - expected_u) > TABLE_TOLERANCE:
            return False, f"table row {row.alpha}: l={row.l}, u={row.u}"
        if not row.l < row.u:
            return False, f"l >= u at {row.alpha}"
    return True, "region predicate and all 17 table rows reproduced"


CHECKS: tuple[Check, ...] = (
    Check("type_partition", check_type_partition),
    Check("substitution_identity", check_substitution_identity),
    Check("coefficient_theorem", check_coefficient_theorem),
    Check("krawtchouk_identities", check_krawtchouk_identities),
    Check("hamming_oracle", check_hamming_oracle),
    Check("closed_form_regimes", check_closed_form_regimes),
    Check("bound_domination", check_bound_domination),
    Check("macwilliams", check_macwilliams),
    Check("duality_lemma", check_duality_lemma),
    Check("z4_oracle", check_z4_oracle),
    Check("z4_identities", check_z4_identities),
    Check("decomposition", check_decomposition),
    Check("z4_lemmas", check_z4_lemmas),
    Check("headline_instance", check_headline),
    Check("region_and_table", check_region_and_table),
)


def run_checks(level: Level = "quick") -> Iterator[CheckResult]:
    """
    Run every check at the given level, in a fixed order.

    Args:
        level: "quick" (n <= 8 oracles) or "full" (acceptance-scale ranges)

    Yields:
        CheckResult: One result per check
    """
    full = level == "full"
    for check in CHECKS:
        logger.info("verification_check_started", check=check.name, level=level)
        try:
            passed, detail = check.run(full)
        except HammingSpectraException as e:
            passed, detail = False, f"{e.error_code}: {e.message}"
        status = "pass" if passed else "fail"
        verification_checks_total.labels(suite=level, status=status).inc()
        if not passed:
            logger.error("verification_check_failed", check=check.name, detail=detail)
        yield CheckResult(suite=level, name=check.name, passed=passed, detail=detail)
