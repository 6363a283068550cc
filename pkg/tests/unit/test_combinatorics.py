"""
Unit tests for combinatorial primitives.
"""
import itertools
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from src.core.exceptions import DomainError, ParameterRangeError
from src.spectra.combinatorics import (
    FactorialCache,
    TypeVector,
    binary_entropy,
    binary_entropy_array,
    binomial,
    enumerate_types,
    iter_compositions,
    multinomial,
    multinomial_of,
)


class TestTypeVector:
    """Test suite for TypeVector."""

    def test_of_infers_alphabet(self) -> None:
        """Test the alphabet size follows the number of parts."""
        t = TypeVector.of(1, 2, 3)
        assert t.p == 3
        assert t.n == 6
        assert t[2] == 3
        assert str(t) == "1,2,3"

    def test_of_vector_counts_symbols(self) -> None:
        """Test type of a concrete vector."""
        assert TypeVector.of_vector(4, [0, 3, 3, 1, 2, 3]).parts == (1, 1, 1, 3)

    def test_unsupported_alphabet(self) -> None:
        """Test alphabets outside 2..4 are rejected."""
        with pytest.raises(ParameterRangeError, match="Alphabet size"):
            TypeVector(p=5, parts=(1, 1, 1, 1, 1))

    def test_wrong_number_of_parts(self) -> None:
        """Test part count must equal p."""
        with pytest.raises(ParameterRangeError, match="needs 4 parts"):
            TypeVector(p=4, parts=(1, 1))

    def test_negative_part(self) -> None:
        """Test negative counts are rejected."""
        with pytest.raises(ParameterRangeError, match="non-negative"):
            TypeVector.of(2, -1)

    def test_equality_and_hash(self) -> None:
        """Test types are frozen values."""
        assert TypeVector.of(0, 1, 10, 1) == TypeVector(p=4, parts=(0, 1, 10, 1))
        assert len({TypeVector.of(1, 1), TypeVector.of(1, 1)}) == 1


class TestCounting:
    """Test suite for binomials, multinomials and factorials."""

    @pytest.mark.parametrize("n", [0, 1, 7, 30, 59, 60])
    def test_binomial_symmetry(self, n: int) -> None:
        """Test C(n, k) = C(n, n - k)."""
        for k in range(n + 1):
            assert binomial(n, k) == binomial(n, n - k)

    def test_binomial_out_of_range(self) -> None:
        """Test C(n, k) vanishes outside 0 <= k <= n."""
        assert binomial(5, -1) == 0
        assert binomial(5, 6) == 0
        assert binomial(5, 2) == 10

    def test_multinomial(self) -> None:
        """Test multinomial of a type."""
        assert multinomial(TypeVector.of(2, 1, 1)) == 12
        assert multinomial(TypeVector.of(4, 2, 4, 2)) == 207900

    @pytest.mark.parametrize("parts", [(2, 1, 1), (4, 2, 4, 2), (0, 5, 3), (6, 0)])
    def test_multinomial_permutation_invariant(self, parts: tuple[int, ...]) -> None:
        """Test permuting the parts of a type leaves its multinomial unchanged."""
        expected = multinomial(TypeVector.of(*parts))
        for permuted in set(itertools.permutations(parts)):
            assert multinomial(TypeVector.of(*permuted)) == expected

    @pytest.mark.parametrize("p", [2, 3, 4])
    def test_types_partition_the_space(self, p: int) -> None:
        """Test the multinomials over all types sum to p^n."""
        for n in range(9):
            assert sum(multinomial_of(t) for t in iter_compositions(p, n)) == p**n

    def test_factorial_cache_matches_math(self) -> None:
        """Test cached and fallback factorials agree with math.factorial."""
        cache = FactorialCache(cap=20)
        assert cache(5) == 120
        assert cache(20) == math.factorial(20)
        assert cache(300) == math.factorial(300)

    def test_factorial_cache_concurrent_readers(self) -> None:
        """Test threads reading across the growth boundary all see correct values."""
        cache = FactorialCache(cap=200)
        arguments = [k for _ in range(8) for k in range(0, 220, 3)]

        with ThreadPoolExecutor(max_workers=8) as pool:
            values = list(pool.map(cache, arguments))

        assert values == [math.factorial(k) for k in arguments]

    def test_factorial_negative(self) -> None:
        """Test factorial rejects negative arguments."""
        with pytest.raises(ParameterRangeError):
            FactorialCache(cap=20)(-1)


class TestEnumerateTypes:
    """Test suite for type enumeration."""

    def test_count_and_order(self) -> None:
        """Test C(n+p-1, p-1) types in lexicographic order."""
        types = list(enumerate_types(4, 3))
        assert len(types) == binomial(6, 3)
        assert types[0].parts == (0, 0, 0, 3)
        assert types[-1].parts == (3, 0, 0, 0)
        assert [t.parts for t in types] == sorted(t.parts for t in types)

    def test_length_zero(self) -> None:
        """Test the empty vector has exactly one type."""
        assert [t.parts for t in enumerate_types(2, 0)] == [(0, 0)]

    def test_invalid_alphabet(self) -> None:
        """Test p < 2 is rejected."""
        with pytest.raises(ParameterRangeError, match="p >= 2"):
            list(enumerate_types(1, 3))


class TestBinaryEntropy:
    """Test suite for binary entropy."""

    def test_endpoints_and_midpoint(self) -> None:
        """Test h(0) = h(1) = 0 and h(1/2) = 1."""
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0
        assert binary_entropy(0.5) == pytest.approx(1.0)

    def test_outside_domain(self) -> None:
        """Test probabilities outside [0, 1] are rejected."""
        with pytest.raises(DomainError, match=r"\[0, 1\]"):
            binary_entropy(1.1)

    def test_array_matches_scalar(self) -> None:
        """Test the vectorised form agrees with the scalar one."""
        xs = [0.1, 0.25, 0.5]
        expected = np.array([binary_entropy(x) for x in xs])
        np.testing.assert_allclose(binary_entropy_array(xs), expected)
