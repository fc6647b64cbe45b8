from fractions import Fraction

import pytest

from adicspace.intervals import RatInterval, is_exact_zero, is_nonnegative


def test_point_and_width():
    p = RatInterval.point(Fraction(3, 7))
    assert p.lo == p.hi == Fraction(3, 7)
    assert p.width == 0
    assert RatInterval(1, 2).width == 1


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        RatInterval(Fraction(1), Fraction(0))


def test_arithmetic_endpoints():
    a = RatInterval(Fraction(1, 3), Fraction(1, 2))
    b = RatInterval(Fraction(-1), Fraction(2))
    assert (a + b) == RatInterval(Fraction(-2, 3), Fraction(5, 2))
    assert (a - b) == RatInterval(Fraction(1, 3) - 2, Fraction(1, 2) + 1)
    assert (a * b) == RatInterval(Fraction(-1, 2), Fraction(1))
    assert (b / a) == RatInterval(Fraction(-3), Fraction(6))


def test_mixed_scalar_coercion():
    a = RatInterval(Fraction(1, 4), Fraction(1, 2))
    assert 1 + a == RatInterval(Fraction(5, 4), Fraction(3, 2))
    assert Fraction(2) * a == RatInterval(Fraction(1, 2), Fraction(1))
    assert 1 - a == RatInterval(Fraction(1, 2), Fraction(3, 4))
    assert 1 / a == RatInterval(2, 4)


def test_division_through_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        RatInterval(1, 2) / RatInterval(-1, 1)


def test_abs_three_cases():
    assert abs(RatInterval(1, 2)) == RatInterval(1, 2)
    assert abs(RatInterval(-2, -1)) == RatInterval(1, 2)
    assert abs(RatInterval(-1, 3)) == RatInterval(0, 3)


def test_containment_and_strictness():
    a = RatInterval(Fraction(1, 9), Fraction(1, 7))
    assert a.contains(Fraction(1, 8))
    assert a.strictly_inside(Fraction(1, 10), Fraction(1, 6))
    assert not a.strictly_inside(Fraction(1, 9), Fraction(1, 6))


def test_zero_and_sign_predicates():
    assert is_exact_zero(RatInterval(0, 0))
    assert not is_exact_zero(RatInterval(0, 1))
    assert is_exact_zero(Fraction(0))
    assert is_nonnegative(RatInterval(0, 2))
    assert not is_nonnegative(RatInterval(-1, 2))
