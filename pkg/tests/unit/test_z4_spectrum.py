"""
Unit tests for eigenvalues of G(r, s) = Cay(Z_4^n, (r, s, r, s)).
"""
import numpy as np
import pytest
import sympy

from src.core.config import settings
from src.core.exceptions import OracleCapExceededError, ParameterRangeError
from src.spectra.combinatorics import TypeVector, enumerate_types
from src.spectra.weight_enum import representative
from src.spectra.z4_spectrum import (
    boundary_eigenvalue,
    boundary_minimum,
    canonical_type,
    eigenvalue_bruteforce,
    eigenvalue_bruteforce_batch,
    eigenvalue_by_type,
    interior_bound_check,
    iter_generators,
    lambda_max,
    lambda_min_scan,
    orbit,
    rs_polynomial_coeff,
    s_partition_counts,
    smallest_ev_formula,
    z4_spectrum,
)

X, Y, Z, W = sympy.symbols("x y z w")


def sympy_rs_poly(r: int, s: int) -> sympy.Poly:
    """((x+z)^2 - (y+w)^2)^r ((x-z)^2 + (y-w)^2)^s expanded by sympy."""
    expr = ((X + Z) ** 2 - (Y + W) ** 2) ** r * ((X - Z) ** 2 + (Y - W) ** 2) ** s
    return sympy.Poly(sympy.expand(expr), X, Y, Z, W)


class TestEigenvalueByType:
    """Test suite for the type formula."""

    def test_headline_instance(self) -> None:
        """Test G(4, 2): degree 207900, eigenvalue -18900 at (0, 1, 10, 1)."""
        assert lambda_max(4, 2) == 207900
        assert eigenvalue_by_type(4, 2, (0, 1, 10, 1)) == -18900
        assert smallest_ev_formula(4, 2) == -18900

    def test_zero_character_is_degree(self) -> None:
        """Test the all-zero type gives lambda_max."""
        assert eigenvalue_by_type(2, 1, TypeVector.of(6, 0, 0, 0)) == lambda_max(2, 1)

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_all_threes(self, r: int) -> None:
        """Test lambda(0, 0, 0, n) = (-1)^r lambda_max."""
        n = 2 * (r + 1)
        assert eigenvalue_by_type(r, 1, (0, 0, 0, n)) == (-1) ** r * lambda_max(r, 1)

    @pytest.mark.parametrize("r, s", [(1, 1), (2, 0), (0, 2), (2, 1), (1, 2)])
    def test_coefficient_matches_sympy(self, r: int, s: int) -> None:
        """Test the aggregate convolution against symbolic expansion."""
        poly = sympy_rs_poly(r, s)
        for t in enumerate_types(4, 2 * (r + s)):
            t0, t1, t2, t3 = t.parts
            expected = poly.coeff_monomial(X**t0 * Y**t1 * Z**t2 * W**t3)
            assert rs_polynomial_coeff(r, s, t) == int(expected)

    def test_trace_vanishes(self) -> None:
        """Test sum of multiplicity times eigenvalue is zero."""
        for r, s in [(1, 1), (2, 1), (0, 3)]:
            assert sum(rec.multiplicity * rec.value for rec in z4_spectrum(r, s)) == 0

    def test_spectrum_size(self) -> None:
        """Test one record per type."""
        assert len(z4_spectrum(1, 1)) == 35

    def test_invalid_parameters(self) -> None:
        """Test r = s = 0 and wrong type lengths are rejected."""
        with pytest.raises(ParameterRangeError, match="not both 0"):
            lambda_max(0, 0)
        with pytest.raises(ParameterRangeError, match="length n = 2"):
            eigenvalue_by_type(1, 1, (1, 1, 1, 0))


class TestBruteForce:
    """Test suite for the character-sum oracle."""

    def test_generators(self) -> None:
        """Test every generator has type (r, s, r, s) and none repeats."""
        generators = list(iter_generators(1, 1))
        assert len(generators) == lambda_max(1, 1) == 24
        assert len(set(generators)) == 24
        assert all(TypeVector.of_vector(4, g).parts == (1, 1, 1, 1) for g in generators)

    @pytest.mark.parametrize("r, s", [(1, 1), (2, 0), (0, 2), (2, 1), (1, 2), (3, 0)])
    def test_matches_type_formula(self, r: int, s: int) -> None:
        """Test brute-force sums equal the type formula on representatives."""
        types = list(enumerate_types(4, 2 * (r + s)))
        batch = np.stack([representative(t) for t in types])
        brute = eigenvalue_bruteforce_batch(r, s, batch)
        assert brute == [eigenvalue_by_type(r, s, t) for t in types]

    def test_single_vector(self) -> None:
        """Test the single-vector entry point."""
        assert eigenvalue_bruteforce(1, 1, [0, 1, 2, 3]) == eigenvalue_by_type(1, 1, (1, 1, 1, 1))

    def test_partition_counts_sum_to_degree(self) -> None:
        """Test |S(v, 0..3)| partition S."""
        counts = s_partition_counts(2, 1, np.array([[0, 1, 2, 3, 1, 1]]))
        assert counts.sum() == lambda_max(2, 1)

    def test_cap(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test lengths above the cap are refused."""
        monkeypatch.setattr(settings, "z4_oracle_cap", 4)
        with pytest.raises(OracleCapExceededError, match="capped at n=4"):
            eigenvalue_bruteforce(2, 1, [0] * 6)


class TestSymmetry:
    """Test suite for type orbits."""

    def test_orbit_odd_r(self) -> None:
        """Test odd r only swaps 0/2 and 1/3."""
        assert orbit((1, 0, 0, 3), 1) == [(0, 0, 1, 3), (0, 3, 1, 0), (1, 0, 0, 3), (1, 3, 0, 0)]

    def test_canonical_even_r(self) -> None:
        """Test the cyclic shift joins the orbit for even r."""
        assert canonical_type((10, 1, 0, 1), 4) == (0, 1, 10, 1)
        assert canonical_type(TypeVector.of(1, 0, 1, 10), 4) == (0, 1, 10, 1)

    def test_orbit_shares_eigenvalue(self) -> None:
        """Test every orbit member has the canonical eigenvalue."""
        for t in enumerate_types(4, 6):
            value = eigenvalue_by_type(2, 1, t)
            assert all(eigenvalue_by_type(2, 1, u) == value for u in orbit(t, 2))


class TestLambdaMinScan:
    """Test suite for the minimum scan and its lemmas."""

    def test_headline(self) -> None:
        """Test lambda_min(G(4, 2)) = -18900 at (0, 1, 10, 1)."""
        result = lambda_min_scan(4, 2)
        assert result.lambda_min == -18900
        assert result.matches_formula
        assert TypeVector.of(0, 1, 10, 1) in result.argmin_types

    def test_argmin_sorted(self) -> None:
        """Test argmin types come out sorted."""
        parts = [t.parts for t in lambda_min_scan(3, 2).argmin_types]
        assert parts == sorted(parts)

    def test_sharding_does_not_change_result(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test a multi-worker scan returns the single-worker result."""
        single = lambda_min_scan(2, 1)
        monkeypatch.setattr(settings, "threads", 2)
        assert lambda_min_scan(2, 1) == single

    def test_structural_minimum(self) -> None:
        """Test the scan minimum is min(formula, boundary minimum) for n = 10, 12."""
        for r, s in [(1, 4), (2, 3), (3, 2), (4, 2), (2, 4)]:
            expected = min(smallest_ev_formula(r, s), boundary_minimum(r, s))
            assert lambda_min_scan(r, s).lambda_min == expected

    def test_formula_needs_n3(self) -> None:
        """Test the formula is refused below n = 3."""
        with pytest.raises(ParameterRangeError, match="n >= 3"):
            smallest_ev_formula(1, 0)

    def test_boundary_eigenvalue(self) -> None:
        """Test the Krawtchouk form on types (0, t1, 0, t3)."""
        for r, s in [(1, 1), (2, 1), (1, 3)]:
            n = 2 * (r + s)
            for t1 in range(n + 1):
                assert boundary_eigenvalue(r, s, t1, n - t1) == eigenvalue_by_type(
                    r, s, (0, t1, 0, n - t1)
                )

    def test_boundary_shift(self) -> None:
        """Test (a, 0, b, 0) carries (-1)^r times the (0, b, 0, a) eigenvalue."""
        r, s = 3, 1
        n = 2 * (r + s)
        for a in range(n + 1):
            assert eigenvalue_by_type(r, s, (a, 0, n - a, 0)) == -boundary_eigenvalue(
                r, s, n - a, a
            )

    def test_interior_bound(self) -> None:
        """Test the interior estimate at n = 10."""
        assert all(interior_bound_check(r, 5 - r) for r in range(6))

    def test_interior_bound_needs_n10(self) -> None:
        """Test n < 10 is refused."""
        with pytest.raises(ParameterRangeError, match="n >= 10"):
            interior_bound_check(2, 2)
