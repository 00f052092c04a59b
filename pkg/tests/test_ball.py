from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zetasums.numerics import Ball, Precision
from zetasums.numerics.ball import bits_for_digits

BITS = 80
fracs = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)
nonzero = fracs.filter(lambda q: abs(q) > Fraction(1, 100))
small_ints = st.integers(min_value=-10**6, max_value=10**6).filter(bool)


def ball(q):
    return Ball.from_fraction(q, BITS)


@given(fracs)
def test_from_fraction_encloses(q):
    assert ball(q).contains(q)


@given(fracs, fracs)
def test_add_sub_enclose(a, b):
    assert (ball(a) + ball(b)).contains(a + b)
    assert (ball(a) - ball(b)).contains(a - b)
    assert (ball(a) + b).contains(a + b)
    assert (b - ball(a)).contains(b - a)


@given(fracs, fracs)
def test_mul_encloses(a, b):
    assert (ball(a) * ball(b)).contains(a * b)
    assert (ball(a) * b).contains(a * b)


@given(fracs, small_ints)
def test_int_ops_enclose(a, n):
    assert ball(a).mul_int(n).contains(a * n)
    assert ball(a).div_int(n).contains(a / n)


@given(fracs, nonzero)
def test_division_encloses(a, b):
    assert (ball(a) / ball(b)).contains(a / b)
    assert ball(b).reciprocal().contains(1 / b)


@given(fracs, st.integers(min_value=10, max_value=200))
def test_rescale_encloses(a, p):
    assert ball(a).rescale(p).contains(a)


@given(fracs, st.fractions(min_value=0, max_value=1))
def test_widen_grows_radius(a, extra):
    b = ball(a).widen(extra)
    assert b.radius >= extra
    assert b.contains(a + extra) and b.contains(a - extra)


@given(fracs)
def test_refinement_stays_inside_coarse(a):
    coarse, fine = Ball.from_fraction(a, 20, Fraction(1, 10**4)), Ball.from_fraction(a, 90)
    assert fine.overlaps(coarse)
    assert coarse.contains(fine.mid_fraction)


def test_exact_and_zero():
    assert Ball.exact(3, 10).radius == 0
    assert Ball.zero(10).contains_zero()


def test_reciprocal_of_zero_ball_raises():
    with pytest.raises(ZeroDivisionError):
        Ball.from_fraction(0, 10, Fraction(1, 4)).reciprocal()
    with pytest.raises(ZeroDivisionError):
        ball(1).div_int(0)


def test_negative_radius_rejected():
    with pytest.raises(ValueError):
        Ball(0, -1, 3)
    with pytest.raises(ValueError):
        ball(1).widen(-1)


def test_formatting():
    b = ball(Fraction(-1, 3))
    assert b.to_decimal(5) == "-0.33333"
    assert ball(Fraction(12345, 1)).to_sig(3) == "1.23e+4"
    assert ball(Fraction(999999, 10**7)).to_sig(3) == "1.00e-1"
    assert ball(0).to_sig(4) == "0"


def test_precision():
    p = Precision(20)
    assert p.working_digits == 30
    assert p.target() == Fraction(1, 10**20)
    assert p.bits == bits_for_digits(30)
    assert p.with_guard(4).working_digits == 24
    with pytest.raises(ValueError):
        Precision(0)
    with pytest.raises(ValueError):
        Precision(5, -1)


def test_abs_and_inside():
    b = ball(Fraction(-5, 2))
    assert abs(b).contains(Fraction(5, 2))
    assert ball(1).inside(Ball.from_fraction(1, BITS, Fraction(1, 10)))
