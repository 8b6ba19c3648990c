"""Tests for Walsh functions, the Dirichlet kernel and the Lebesgue function."""

import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import GuardError
from src.exact import DyadicRational
from src.lebesgue import lebesgue_fine
from src.walsh import (
    DyadicPoint,
    check_index,
    digit_word,
    dirichlet_kernel,
    dirichlet_profile,
    lebesgue_function,
    parity_sums,
    wal,
)

SAMPLE_POINTS = [
    DyadicRational(0),
    DyadicRational(1, 1),
    DyadicRational(1, 2),
    DyadicRational(3, 2),
    DyadicRational(5, 3),
    DyadicRational(11, 5),
    DyadicRational(77, 7),
    DyadicRational(1023, 10),
]

points = st.builds(
    lambda exp, num: DyadicRational(num % (1 << exp), exp),
    st.integers(min_value=0, max_value=20),
    st.integers(min_value=0, max_value=1 << 20),
)


def test_digit_word_reverses_binary_digits():
    # 0.101 in binary
    assert digit_word(DyadicRational(5, 3), 3) == 0b101
    # 0.011 in binary: x_2 = x_3 = 1
    assert digit_word(DyadicRational(3, 3), 3) == 0b110
    # truncated to the first two digits
    assert digit_word(DyadicRational(3, 3), 2) == 0b10


def test_point_must_lie_in_unit_interval():
    with pytest.raises(ValueError):
        DyadicPoint(DyadicRational(1))
    with pytest.raises(ValueError):
        DyadicPoint(DyadicRational(-1, 2))


def test_index_range():
    assert check_index(0) == 0
    with pytest.raises(ValueError):
        check_index(-1)
    with pytest.raises(ValueError):
        check_index(1 << 64)


class TestWal:
    def test_wal_zero_is_one(self):
        for x in SAMPLE_POINTS:
            assert wal(0, x) == 1

    def test_first_rademacher_function(self):
        assert wal(1, Fraction(1, 2)) == -1
        assert wal(1, Fraction(1, 4)) == 1

    def test_products_of_digits(self):
        assert wal(2, Fraction(1, 4)) == -1
        assert wal(3, Fraction(3, 4)) == 1
        assert wal(3, Fraction(1, 4)) == -1

    @given(st.integers(min_value=0, max_value=(1 << 20) - 1), points)
    def test_values_are_signs(self, k, x):
        assert wal(k, x) in (-1, 1)

    @settings(max_examples=1000)
    @given(
        st.integers(min_value=0, max_value=(1 << 16) - 1),
        st.integers(min_value=0, max_value=(1 << 16) - 1),
        points,
    )
    def test_product_is_wal_of_xor(self, k, l, x):
        assert wal(k, x) * wal(l, x) == wal(k ^ l, x)

    def test_product_is_wal_of_xor_on_random_sample(self):
        rng = random.Random(16)
        for _ in range(20_000):
            k, l = rng.randrange(1 << 16), rng.randrange(1 << 16)
            exp = rng.randrange(0, 24)
            x = DyadicRational(rng.randrange(1 << exp), exp)
            assert wal(k, x) * wal(l, x) == wal(k ^ l, x), (k, l, x)


class TestDirichletKernel:
    @given(st.integers(min_value=1, max_value=300), points)
    def test_diagonal_is_n(self, n, x):
        assert dirichlet_kernel(n, x, x) == n

    def test_power_of_two_is_indicator_of_matching_digits(self):
        assert dirichlet_kernel(4, Fraction(0), Fraction(1, 8)) == 4
        assert dirichlet_kernel(4, Fraction(0), Fraction(1, 4)) == 0

    @settings(max_examples=300)
    @given(st.integers(min_value=1, max_value=500), points, points)
    def test_symmetric(self, n, x, u):
        assert dirichlet_kernel(n, x, u) == dirichlet_kernel(n, u, x)

    @pytest.mark.parametrize("n", [1, 2, 5, 13, 22, 64, 100])
    def test_constant_on_grid_cells(self, n):
        width = n.bit_length()
        for x in SAMPLE_POINTS:
            profile = dirichlet_profile(n, x)
            for m in range(1 << width):
                # two interior points of [m/2^width, (m+1)/2^width)
                left = DyadicRational(4 * m + 1, width + 2)
                right = DyadicRational(4 * m + 3, width + 2)
                assert dirichlet_kernel(n, x, left) == profile[m]
                assert dirichlet_kernel(n, x, right) == profile[m]

    def test_rejects_empty_kernel(self):
        with pytest.raises(ValueError):
            dirichlet_kernel(0, 0, 0)

    def test_profile_matches_direct_sum(self):
        n, x = 13, DyadicRational(5, 4)
        profile = dirichlet_profile(n, x)
        assert len(profile) == 16
        for m in range(16):
            assert profile[m] == dirichlet_kernel(n, x, DyadicRational(m, 4))


def test_parity_sums():
    rows = np.array([0, 1], dtype=np.int64)
    cols = np.array([0, 1], dtype=np.int64)
    assert parity_sums(rows, cols).tolist() == [2, 0]


class TestLebesgueFunction:
    def test_small_values(self):
        assert lebesgue_function(1, 0) == 1
        assert lebesgue_function(3, Fraction(1, 4)) == DyadicRational(3, 1)
        assert lebesgue_function(5, Fraction(3, 8)) == DyadicRational(7, 2)

    @pytest.mark.parametrize("m", range(0, 9))
    def test_powers_of_two(self, m):
        assert lebesgue_function(1 << m, Fraction(1, 4)) == 1

    @pytest.mark.parametrize("n", [2, 3, 6, 7, 11, 13, 21, 27, 63, 100])
    def test_independent_of_x(self, n):
        values = {lebesgue_function(n, x) for x in SAMPLE_POINTS}
        assert values == {lebesgue_fine(n)}

    @settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=1, max_value=200), points)
    def test_equals_closed_form(self, n, x):
        assert lebesgue_function(n, x) == lebesgue_fine(n)

    def test_guard(self):
        with pytest.raises(GuardError):
            lebesgue_function(5, 0, max_n=4)

    @pytest.mark.slow
    def test_independent_of_x_up_to_256(self):
        for n in range(1, 257):
            expected = lebesgue_fine(n)
            for x in SAMPLE_POINTS:
                assert lebesgue_function(n, x) == expected, (n, x)
