"""Exact dyadic arithmetic against a Fraction oracle."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gradedrel import DyadicValue, centered_cover_level, floor_log2
from gradedrel.errors import StructuralInputError


def dyadics(max_num=1000, exp_range=40):
    # values are numerator / 2**exponent, nonnegative by construction
    return st.builds(
        DyadicValue,
        st.integers(min_value=0, max_value=max_num),
        st.integers(min_value=-exp_range, max_value=exp_range),
    )


class TestCanonicalForm:
    def test_zero_normalizes_exponent(self):
        assert DyadicValue(0, 17) == DyadicValue.zero()
        assert DyadicValue(0, 17).exponent == 0

    def test_even_numerator_folds_into_exponent(self):
        assert DyadicValue(12, 3) == DyadicValue(3, 1)  # 12/8 == 3/2

    def test_rejects_negative(self):
        with pytest.raises(StructuralInputError):
            DyadicValue(-1, 3)

    @given(dyadics())
    def test_numerator_odd_or_zero(self, d):
        assert d.numerator == 0 or d.numerator % 2 == 1

    @given(dyadics(), dyadics())
    def test_equal_iff_same_fraction(self, a, b):
        assert (a == b) == (a.as_fraction() == b.as_fraction())


class TestArithmetic:
    @given(dyadics(), dyadics())
    def test_add_matches_fractions(self, a, b):
        assert (a + b).as_fraction() == a.as_fraction() + b.as_fraction()

    @given(dyadics(), st.integers(min_value=-30, max_value=30))
    def test_times_pow2_matches_fractions(self, a, k):
        assert a.times_pow2(k).as_fraction() == a.as_fraction() * Fraction(2) ** k

    @given(dyadics(), dyadics())
    def test_order_matches_fractions(self, a, b):
        assert (a < b) == (a.as_fraction() < b.as_fraction())
        assert (a <= b) == (a.as_fraction() <= b.as_fraction())
        assert (a > b) == (a.as_fraction() > b.as_fraction())
        assert (a >= b) == (a.as_fraction() >= b.as_fraction())

    def test_pow2(self):
        assert DyadicValue.pow2(0) == DyadicValue.one()
        assert DyadicValue.pow2(-5).as_fraction() == Fraction(1, 32)
        assert DyadicValue.pow2(3).as_fraction() == 8

    def test_str_forms(self):
        assert str(DyadicValue.pow2(-5)) == "1/32"
        assert str(DyadicValue.pow2(3)) == "8"
        assert str(DyadicValue.zero()) == "0"
        assert str(DyadicValue(17, 5)) == "17/32"


class TestFloorLog2:
    @given(
        st.integers(min_value=1, max_value=10**9),
        st.integers(min_value=1, max_value=10**9),
    )
    def test_matches_brute_force(self, p, q):
        v = Fraction(p, q)
        k = floor_log2(v)
        assert Fraction(2) ** k <= v < Fraction(2) ** (k + 1)

    def test_rejects_nonpositive(self):
        with pytest.raises(StructuralInputError):
            floor_log2(Fraction(0))
        with pytest.raises(StructuralInputError):
            floor_log2(Fraction(-3, 7))

    def test_exact_powers(self):
        assert floor_log2(Fraction(1, 8)) == -3
        assert floor_log2(Fraction(8)) == 3
        assert floor_log2(Fraction(1)) == 0


class TestCenteredCoverLevel:
    @given(st.integers(min_value=1, max_value=10**6), st.integers(min_value=1, max_value=10**6))
    def test_defining_inequalities(self, p, q):
        w = Fraction(p, q)
        m = centered_cover_level(w)
        # half the width fits under 2^-m, which still sits below the width
        assert w / 2 <= Fraction(2) ** (-m)
        assert Fraction(2) ** (-m) < w

    def test_exact_power_width(self):
        # width exactly 2^k needs one extra level
        assert centered_cover_level(Fraction(1, 4)) == 3
        assert centered_cover_level(Fraction(1)) == 1
        assert centered_cover_level(Fraction(2)) == 0

    def test_generic_width(self):
        assert centered_cover_level(Fraction(3, 8)) == 2
        assert centered_cover_level(Fraction(3)) == -1
