import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from foxwright.kernels import (
    FormalSeries,
    bell_complete,
    bernoulli_numbers,
    bernoulli_polynomial,
    bernoulli_values,
    l_from_q,
    nair_determinant,
    noncentral_stirling_carlitz,
    noncentral_stirling_first,
    norlund_polynomial,
    norlund_values,
    stirling_row,
)

fractions = st.fractions(min_value=-3, max_value=3, max_denominator=20)


def test_bernoulli_numbers_known():
    b = bernoulli_numbers(12)
    assert b[:5] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]
    assert b[12] == Fraction(-691, 2730)


def test_bernoulli_numbers_match_mpmath():
    b = bernoulli_numbers(200)
    for n in (20, 77, 100, 200):
        assert float(b[n]) == pytest.approx(float(mpmath.bernoulli(n)), rel=1e-14)


@pytest.mark.parametrize("m,x,expected", [
    (1, 0, Fraction(-1, 2)),
    (2, 0, Fraction(1, 6)),
    (3, Fraction(1, 2), 0),
    (0, Fraction(7, 3), 1),
])
def test_bernoulli_polynomial_exact(m, x, expected):
    assert bernoulli_polynomial(m, x) == expected


@given(fractions, st.integers(min_value=0, max_value=12))
def test_bernoulli_reflection(x, m):
    assert bernoulli_polynomial(m, 1 - x) == (-1) ** m * bernoulli_polynomial(m, x)


@given(fractions, st.integers(min_value=1, max_value=12))
def test_bernoulli_difference(x, m):
    # B_m(x+1) - B_m(x) = m x^(m-1)
    assert bernoulli_polynomial(m, x + 1) - bernoulli_polynomial(m, x) == m * x ** (m - 1)


def test_bernoulli_values_high_order(mp40):
    vals = bernoulli_values(mp40.mpf("0.3"), 300, mp40)
    for m in (0, 1, 17, 150, 300):
        ref = mp40.bernpoly(m, mp40.mpf("0.3"))
        assert abs(vals[m] - ref) <= mp40.mpf(10) ** -30 * max(1, abs(ref))


def test_bernoulli_complex_argument():
    z = 0.3 + 0.4j
    assert abs(bernoulli_polynomial(3, z) - (z ** 3 - 1.5 * z ** 2 + 0.5 * z)) < 1e-15


def test_norlund_low_orders():
    x, s = Fraction(2, 7), Fraction(5, 3)
    assert norlund_polynomial(0, s, x) == 1
    assert norlund_polynomial(1, s, x) == x - s / 2


@given(fractions, st.integers(min_value=0, max_value=8))
def test_norlund_order_one_is_bernoulli(x, k):
    assert norlund_polynomial(k, 1, x) == bernoulli_polynomial(k, x)


@given(st.floats(min_value=-2, max_value=2), st.floats(min_value=-2, max_value=3), st.floats(min_value=-2, max_value=3))
def test_norlund_addition(x, s1, s2):
    # B_k^(s1+s2)(x+y) = sum binom(k,j) B_j^(s1)(x) B_{k-j}^(s2)(y) with y = 0
    k = 4
    lhs = norlund_polynomial(k, s1 + s2, x)
    rhs = sum(math.comb(k, j) * norlund_polynomial(j, s1, x) * norlund_polynomial(k - j, s2, 0.0)
              for j in range(k + 1))
    assert abs(lhs - rhs) <= 1e-9 * max(1, abs(lhs))


def test_norlund_values_match_polynomial(mp40):
    vals = norlund_values(mp40.mpf("2.5"), mp40.mpf("-0.3"), 10, mp40)
    for k in range(11):
        ref = norlund_polynomial(k, Fraction(5, 2), Fraction(-3, 10))
        assert abs(vals[k] - mp40.mpf(ref.numerator) / ref.denominator) < mp40.mpf(10) ** -30


@pytest.mark.parametrize("sigma,n,l,expected", [
    (Fraction(3, 7), 1, 0, Fraction(3, 7)),
    (Fraction(3, 7), 1, 1, 1),
    (0, 3, 1, 2),
    (0, 0, 0, 1),
])
def test_stirling_examples(sigma, n, l, expected):
    assert noncentral_stirling_first(sigma, n, l) == expected


def test_stirling_row_rising_factorial():
    assert stirling_row(0, 3) == [0, 2, 3, 1]
    # (x + s)_n evaluated from the row
    s, x, n = Fraction(1, 3), Fraction(5, 2), 6
    row = stirling_row(s, n)
    lhs = sum(c * x ** k for k, c in enumerate(row))
    rhs = math.prod(x + s + j for j in range(n))
    assert lhs == rhs


def test_stirling_out_of_range():
    with pytest.raises(IndexError):
        noncentral_stirling_first(0.5, 3, 4)


@given(fractions, st.integers(min_value=0, max_value=9), st.data())
def test_stirling_carlitz_form(s, n, data):
    l = data.draw(st.integers(min_value=0, max_value=n))
    assert noncentral_stirling_carlitz(s, n, l) == noncentral_stirling_first(s, n, l)


def test_bell_examples():
    x1, x2, x3 = Fraction(2), Fraction(3), Fraction(5)
    assert bell_complete([x1]) == x1
    assert bell_complete([x1, x2]) == x1 ** 2 + x2
    assert bell_complete([x1, x2, x3]) == x1 ** 3 + 3 * x1 * x2 + x3


@given(st.lists(fractions, min_size=1, max_size=7))
def test_bell_partition_matches_series(xs):
    assert bell_complete(xs) == bell_complete(xs, method="series")


def test_nair_small_cases():
    q = [Fraction(2, 3), Fraction(-1, 5), Fraction(7, 4)]
    assert nair_determinant(q, 1) == q[0]
    assert nair_determinant(q, 2) == (q[0] ** 2 + q[1]) / 2


@given(st.lists(fractions, min_size=6, max_size=6))
def test_three_forms_of_l(q):
    ls = l_from_q(q, 6)
    for r in range(1, 7):
        assert nair_determinant(q, r) == ls[r]
        y = bell_complete([math.factorial(m - 1) * q[m - 1] for m in range(1, r + 1)])
        assert y / math.factorial(r) == ls[r]


def test_formal_series_exp_log_roundtrip():
    f = FormalSeries([Fraction(0), Fraction(1, 2), Fraction(-1, 3), Fraction(2)])
    g = f.exp().log()
    assert g == f


def test_formal_series_power():
    f = FormalSeries([Fraction(1), Fraction(1), Fraction(0), Fraction(0)])
    assert f.power(2) == FormalSeries([1, 2, 1, 0])
