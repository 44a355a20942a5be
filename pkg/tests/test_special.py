import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from foxwright.errors import PoleError
from foxwright.special import digamma, gamma, log_gamma, rgamma, rising_factorial

EULER = 0.5772156649015329


def test_log_gamma_one():
    assert log_gamma(1) == 0


def test_log_gamma_half():
    assert log_gamma(0.5) == pytest.approx(0.5723649429247001, abs=1e-15)


def test_log_gamma_frozen_value():
    # mpmath loggamma(3+4i) at 40 digits
    assert abs(log_gamma(3 + 4j) - complex(-1.756626784603784110530604, 4.742664438034657928194889)) < 1e-14


def test_log_gamma_reflection():
    z = 3 + 4j
    lhs = cmath.exp(log_gamma(z) + log_gamma(1 - z))
    rhs = math.pi / cmath.sin(math.pi * z)
    assert abs(lhs - rhs) / abs(rhs) < 1e-13


@pytest.mark.parametrize("z,expected", [
    (5, 24.0),
    (0.5, math.sqrt(math.pi)),
    (-0.5, -2 * math.sqrt(math.pi)),
])
def test_gamma_values(z, expected):
    assert gamma(z) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("z,expected", [
    (1, -EULER),
    (2, 1 - EULER),
    (0.5, -EULER - 2 * math.log(2)),
])
def test_digamma_values(z, expected):
    assert digamma(z) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("fn", [gamma, log_gamma, digamma])
@pytest.mark.parametrize("z", [0, -1, -7, -3 + 1e-14])
def test_poles_raise(fn, z):
    with pytest.raises(PoleError):
        fn(z)


def test_rgamma_vanishes_at_poles():
    assert rgamma(-3) == 0
    assert rgamma(4) == pytest.approx(1 / 6)


@pytest.mark.parametrize("a,n,expected", [(1, 3, 6), (0.7, 0, 1), (0.5, 2, 0.75), (-2, 3, 0)])
def test_rising_factorial(a, n, expected):
    assert rising_factorial(a, n) == pytest.approx(expected)


def test_rising_factorial_exact_int():
    assert rising_factorial(3, 4) == 360
    assert isinstance(rising_factorial(3, 4), int)


def test_rising_factorial_negative_n():
    with pytest.raises(ValueError):
        rising_factorial(1.0, -1)


@given(st.complex_numbers(min_magnitude=0.1, max_magnitude=20, allow_nan=False, allow_infinity=False)
       .filter(lambda z: z.real > 0.05))
def test_gamma_recurrence(z):
    assert abs(gamma(z + 1) - z * gamma(z)) <= 1e-12 * abs(gamma(z + 1))


@given(st.floats(min_value=0.05, max_value=30))
def test_digamma_recurrence(x):
    assert digamma(x + 1) == pytest.approx(digamma(x) + 1 / x, rel=1e-12, abs=1e-12)
