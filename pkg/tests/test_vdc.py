"""Tests for the van der Corput sequence and its star discrepancy."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import GuardError
from src.exact import DyadicRational
from src.lebesgue import lebesgue_fine
from src.vdc import (
    bit_reverse_index,
    d_n,
    d_n_via_l1,
    d_n_via_l1_blocks,
    d_n_via_l1_points,
    nonnegativity_check,
    nonnegativity_sweep,
    prefix_blocks,
    star_discrepancy,
    star_discrepancy_sweep,
    vdc_point,
    vdc_prefix,
    walsh_sum_discrepancy,
)


def _first_points(n):
    return sorted(vdc_point(k) for k in range(n))


class TestPoints:
    def test_examples(self):
        assert vdc_point(0) == 0
        assert vdc_point(1) == DyadicRational(1, 1)
        assert vdc_point(5) == DyadicRational(5, 3)
        assert vdc_point(6) == DyadicRational(3, 3)

    def test_denominator_exponent_bounded_by_bit_length(self):
        for k in range(1, 1 << 10):
            assert vdc_point(k).exp <= k.bit_length()

    def test_injective(self):
        assert len({vdc_point(k) for k in range(1 << 12)}) == 1 << 12

    @pytest.mark.slow
    def test_injective_up_to_2_20(self):
        assert len({vdc_point(k) for k in range(1 << 20)}) == 1 << 20

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            vdc_point(-1)

    def test_prefix(self):
        prefix = vdc_prefix(7)
        assert prefix.n == 7
        assert set(prefix.points) == {Fraction(k, 8) for k in (0, 4, 2, 6, 1, 5, 3)}
        assert all(0 <= y < 1 for y in prefix.points)


class TestBitReverse:
    def test_examples(self):
        assert bit_reverse_index(1, 3) == 4
        assert bit_reverse_index(5, 3) == 5
        assert bit_reverse_index(6, 3) == 3

    def test_involution(self):
        for m in range(1 << 10):
            assert bit_reverse_index(bit_reverse_index(m, 10), 10) == m

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            bit_reverse_index(8, 3)
        with pytest.raises(ValueError):
            bit_reverse_index(-1, 3)


class TestPrefixBlocks:
    def test_three(self):
        blocks = prefix_blocks(3)
        assert [(b.i, b.size, b.offset, b.step) for b in blocks] == [
            (1, 2, 0, DyadicRational(1, 1)),
            (2, 1, DyadicRational(1, 2), 1),
        ]

    def test_power_of_two_is_one_grid(self):
        (block,) = prefix_blocks(16)
        assert block.points() == [DyadicRational(k, 4) for k in range(16)]

    def test_seven(self):
        blocks = prefix_blocks(7)
        assert [b.size for b in blocks] == [4, 2, 1]
        assert [b.offset for b in blocks] == [0, DyadicRational(1, 3), DyadicRational(3, 3)]
        union = sorted(y for b in blocks for y in b.points())
        assert union == _first_points(7)

    def test_union_is_the_prefix(self):
        for n in range(1, 257):
            union = sorted(y for b in prefix_blocks(n) for y in b.points())
            assert union == _first_points(n), n

    @pytest.mark.slow
    def test_union_is_the_prefix_up_to_4096(self):
        for n in range(1, 4097):
            union = sorted(y for b in prefix_blocks(n) for y in b.points())
            assert union == _first_points(n), n

    def test_closed_form_point_sum(self):
        for n in (1, 3, 7, 100, 1000):
            for block in prefix_blocks(n):
                total = DyadicRational(0)
                for y in block.points():
                    total += y
                assert block.point_sum() == total


class TestStarDiscrepancy:
    def test_examples(self):
        assert star_discrepancy(1) == 1
        assert star_discrepancy(3) == Fraction(1, 2)
        assert star_discrepancy(5) == Fraction(7, 20)

    @pytest.mark.parametrize("m", range(0, 15))
    def test_powers_of_two(self, m):
        assert star_discrepancy(1 << m) == Fraction(1, 1 << m)
        assert d_n(1 << m) == 1

    def test_d_n(self):
        assert d_n(3) == DyadicRational(3, 1)
        assert d_n(5) == DyadicRational(7, 2)

    def test_bounds(self):
        for n in range(1, 513):
            value = star_discrepancy(n)
            assert 0 < value <= 1

    def test_guard(self):
        with pytest.raises(GuardError):
            star_discrepancy(10, max_n=8)
        with pytest.raises(ValueError):
            star_discrepancy(0)

    def test_sweep_matches_pointwise(self):
        assert star_discrepancy_sweep(200) == [star_discrepancy(n) for n in range(1, 201)]


class TestL1Identity:
    def test_examples(self):
        assert d_n_via_l1(1) == 1
        assert d_n_via_l1(2) == 1
        assert d_n_via_l1(3) == DyadicRational(3, 1)

    def test_paths_agree(self):
        for n in range(1, 1025):
            assert d_n_via_l1_points(n) == d_n_via_l1_blocks(n), n

    def test_falls_back_to_blocks_above_sort_guard(self):
        n = (1 << 40) + 12345
        assert d_n_via_l1(n, max_n=1 << 10) == lebesgue_fine(n)

    @settings(max_examples=500)
    @given(st.integers(min_value=1, max_value=(1 << 62) - 1))
    def test_block_form_equals_closed_form(self, n):
        assert d_n_via_l1_blocks(n) == lebesgue_fine(n)


class TestWalshSum:
    def test_examples(self):
        assert walsh_sum_discrepancy(1) == 1
        assert walsh_sum_discrepancy(3) == Fraction(1, 2)

    @pytest.mark.parametrize("m", range(0, 9))
    def test_powers_of_two(self, m):
        assert walsh_sum_discrepancy(1 << m) == Fraction(1, 1 << m)

    def test_guard(self):
        with pytest.raises(GuardError):
            walsh_sum_discrepancy(1025)


class TestAgreement:
    def test_four_routes_up_to_128(self):
        for n in range(1, 129):
            expected = lebesgue_fine(n)
            assert d_n(n) == expected
            assert d_n_via_l1(n) == expected
            assert n * walsh_sum_discrepancy(n) == expected.to_fraction()

    def test_three_routes_up_to_1024(self):
        for n in range(1, 1025):
            expected = lebesgue_fine(n)
            assert d_n(n) == expected
            assert d_n_via_l1(n) == expected

    @pytest.mark.slow
    def test_three_routes_up_to_4096(self):
        for n in range(1, 4097):
            expected = lebesgue_fine(n)
            assert d_n(n) == expected, n
            assert d_n_via_l1(n) == expected, n

    @pytest.mark.slow
    def test_walsh_sum_up_to_1024(self):
        for n in range(1, 1025):
            assert n * walsh_sum_discrepancy(n) == lebesgue_fine(n).to_fraction(), n


class TestNonnegativity:
    def test_examples(self):
        assert nonnegativity_check(3).ok
        assert nonnegativity_check(16).ok

    def test_sweep(self):
        report = nonnegativity_sweep(512)
        assert report.ok
        assert report.checked == 512
        assert report.range == (1, 512)

    @pytest.mark.slow
    def test_sweep_up_to_4096(self):
        report = nonnegativity_sweep(4096)
        assert report.ok, report.first_failure()
