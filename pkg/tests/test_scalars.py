import cmath
import math

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from bethekit.errors import DivisionByZero, ExactModeUnsupported, ModeMismatch, NearPole
from bethekit.scalars import (
    EXACT,
    FLOAT,
    Scalar,
    Tolerance,
    checked_div,
    coerce,
    sinh_value,
)


def test_exact_field_ops():
    a = Scalar.exact(3, 4)
    b = Scalar.exact(-2, 5)
    assert (a + b).value == mpq(7, 20)
    assert (a - b).value == mpq(23, 20)
    assert (a * b).value == mpq(-3, 10)
    assert (a / b).value == mpq(-15, 8)
    assert (-a).value == mpq(-3, 4)
    assert abs(-a) == mpq(3, 4)
    assert a.conj() is a


def test_float_ops():
    a = Scalar.of(1 + 2j, FLOAT)
    b = Scalar.of(0.5 - 1j, FLOAT)
    assert (a * b).value == (1 + 2j) * (0.5 - 1j)
    assert a.conj().value == 1 - 2j
    assert abs(b) == abs(0.5 - 1j)


def test_mode_mixing_rejected():
    with pytest.raises(ModeMismatch):
        Scalar.exact(1) + Scalar.of(1.0, FLOAT)
    with pytest.raises(ModeMismatch):
        coerce(Scalar.of(1.0, FLOAT), EXACT)


def test_exact_division_by_zero():
    with pytest.raises(DivisionByZero):
        Scalar.exact(1) / Scalar.exact(0)
    with pytest.raises(DivisionByZero):
        checked_div(mpq(1), mpq(0), EXACT)


def test_float_near_pole():
    with pytest.raises(NearPole):
        checked_div(1.0 + 0j, 0j, FLOAT)
    with pytest.raises(NearPole):
        Scalar.of(1.0, FLOAT) / Scalar.of(1e-320, FLOAT)
    # just above the default threshold divides fine
    assert checked_div(1.0 + 0j, 1e-200 + 0j, FLOAT) == 1e200


def test_coerce_exact_literals():
    assert coerce("3/4", EXACT) == mpq(3, 4)
    assert coerce("-7", EXACT) == mpq(-7)
    assert coerce("0.5", EXACT) == mpq(1, 2)
    assert coerce(2, EXACT) == mpq(2)
    with pytest.raises(ExactModeUnsupported):
        coerce(0.5, EXACT)
    with pytest.raises(ExactModeUnsupported):
        coerce(1 + 1j, EXACT)


def test_coerce_float_literals():
    assert coerce("1/2", FLOAT) == 0.5 + 0j
    assert coerce(mpq(1, 4), FLOAT) == 0.25 + 0j
    assert coerce(1 - 2j, FLOAT) == 1 - 2j


def test_sinh_refuses_exact():
    with pytest.raises(ExactModeUnsupported):
        sinh_value(mpq(1))
    with pytest.raises(ExactModeUnsupported):
        Scalar.exact(1).sinh()


def test_sinh_known_value():
    # sinh(i pi / 2) = i
    z = sinh_value(1j * math.pi / 2)
    assert abs(z - 1j) < 1e-15
    assert Scalar.of(0.3, FLOAT).sinh().value == cmath.sinh(0.3)


def test_tolerance_validation():
    with pytest.raises(ValueError):
        Tolerance(absolute=-1e-9)
    with pytest.raises(ValueError):
        Tolerance(relative=float("nan"))
    with pytest.raises(ValueError):
        Tolerance(absolute=float("inf"))
    tol = Tolerance(absolute=1e-10, relative=1e-8)
    assert tol.ok(5e-11)
    assert tol.ok(5e-7, scale=100.0)
    assert not tol.ok(5e-7)


_small = st.integers(min_value=-30, max_value=30)
_den = st.integers(min_value=1, max_value=12)


@settings(max_examples=60, deadline=None)
@given(_small, _den, _small, _den)
def test_float_mode_tracks_exact_mode(pa, qa, pb, qb):
    """The two arithmetic backends agree on rational inputs."""
    a, b = mpq(pa, qa), mpq(pb, qb)
    fa, fb = complex(coerce(a, FLOAT)), complex(coerce(b, FLOAT))
    for exact, approx in (
        (a + b, fa + fb),
        (a - b, fa - fb),
        (a * b, fa * fb),
    ):
        assert abs(complex(coerce(exact, FLOAT)) - approx) <= 1e-14 * (1 + abs(approx))
    if b != 0:
        exact = checked_div(a, b, EXACT)
        approx = checked_div(fa, fb, FLOAT)
        assert abs(complex(coerce(exact, FLOAT)) - approx) <= 1e-14 * (1 + abs(approx))
