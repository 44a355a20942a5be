import cmath
import math
import warnings

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import gauss_psi, half_psi, rel
from foxwright.errors import CutError, DomainError, IntegerMuError, PoleCollisionError, ScaleError
from foxwright.evaluator import (
    average_on_cut,
    cut_values,
    eval_at_rho,
    eval_auto,
    eval_maclaurin,
    eval_residue_series,
    eval_singular_expansion,
    jump_on_cut,
)
from foxwright.engine import h_series
from foxwright.params import validate

# frozen 40-digit mpmath values
GAUSS_AT_03 = 2.814222441142393659221622      # Gamma(.5)Gamma(.7)/Gamma(1.3) 2F1(.5,.7;1.3;.3)
GAUSS_AT_M2 = 1.858638340469525417254995      # same at z = -2
GAUSS_AT_RHO = 12.6246506655291079816243      # Gauss summation
GAUSS_JUMP_2 = 4.847584093002167766558268     # imaginary part of the jump at x = 2
GAUSS_AVG_2 = 2.139915051760910344984559      # bank average at x = 2
HALF11_AT_1 = 2.945599434874860311639181      # A = (1/2,1/2), a = (1,1), z = 1, brute-force sum
DIXON = 26.42517600879636024323999            # a=(.6,.3,.2), b=(1.3,1.4) at z = 1


# -- power series -------------------------------------------------------------------


def test_maclaurin_origin():
    ps = validate([0.6, 1.1, 0.9], [1, 1, 0.5], [1.7], [1.5])
    prod = math.gamma(0.6) * math.gamma(1.1) * math.gamma(0.9) / math.gamma(1.7)
    r = eval_maclaurin(ps, 0)
    assert r.value == pytest.approx(prod, rel=1e-15)
    assert r.terms_used == 1 and r.representation == "maclaurin"


def test_maclaurin_gauss(gauss):
    assert rel(eval_maclaurin(gauss, 0.3).value, GAUSS_AT_03) < 1e-10


def test_maclaurin_half_scales_brute_force():
    ps = validate([1, 1], [0.5, 0.5])
    assert rel(eval_maclaurin(ps, 1.0).value, HALF11_AT_1) < 1e-10


def test_maclaurin_domain(gauss):
    with pytest.raises(DomainError):
        eval_maclaurin(gauss, 1.2j)
    # on the circle only when Re mu > 0
    with pytest.raises(DomainError):
        eval_maclaurin(validate([0.75, 0.75], [1, 1], [1.0], [1]), -1.0)


def test_maclaurin_boundary_matches_at_rho():
    ps = validate([0.5, 0.7], [1, 1], [4.7], [1])  # mu = 3.5
    m = eval_maclaurin(ps, 1.0, 1e-9).value
    r = eval_at_rho(ps, None, 1e-12).value
    assert rel(m, r) < 1e-8


# -- residue series -------------------------------------------------------------------


def test_residue_gauss(gauss):
    assert rel(eval_residue_series(gauss, -2).value, GAUSS_AT_M2) < 1e-10


def test_residue_schwarz(gauss):
    z = -1.5 + 2.5j
    assert eval_residue_series(gauss, z.conjugate()).value == pytest.approx(
        eval_residue_series(gauss, z).value.conjugate(), rel=1e-14)


def test_residue_collision():
    with pytest.raises(PoleCollisionError):
        eval_residue_series(validate([0.5, 0.5], [1, 1], [1.3], [1]), -3)
    with pytest.raises(PoleCollisionError):
        eval_residue_series(validate([1, 1], [0.5, 0.5]), -3)


def test_residue_domain(gauss):
    with pytest.raises(DomainError):
        eval_residue_series(gauss, 0.5)
    with pytest.raises(CutError):
        eval_residue_series(gauss, 3.0)


@pytest.mark.parametrize("w", [-3, 2 + 2j, -1.2 - 0.1j, 0.3 + 1.5j])
def test_residue_half_scales(mp40, half_scales, w):
    z = 2 * w
    assert rel(eval_residue_series(half_scales, z).value, half_psi(mp40, 1.3, z)) < 1e-10


# -- singular expansion -----------------------------------------------------------------


def test_singular_vs_maclaurin(gauss):
    s = eval_singular_expansion(gauss, 0.7).value
    m = eval_maclaurin(gauss, 0.7).value
    assert abs(s - m) / abs(m) < 1e-8


def test_singular_vs_residue(gauss):
    w = 1.2 + 0.3j
    s = eval_singular_expansion(gauss, w).value
    r = eval_residue_series(gauss, w).value
    assert abs(s - r) / abs(r) < 1e-7


@pytest.mark.parametrize("a,b,c", [(0.5, 0.5, 1.0), (0.3, 0.7, 2.0), (0.75, 0.75, 0.5), (0.6, 0.9, 4.5)])
@pytest.mark.parametrize("w", [0.8, 0.7 + 0.2j, 1.2 - 0.3j])
def test_singular_log_cases_gauss(mp40, a, b, c, w):
    ps = validate([a, b], [1, 1], [c], [1])
    r = eval_singular_expansion(ps, w)
    assert r.representation == "singular-log"
    assert rel(r.value, gauss_psi(mp40, a, b, c, w)) < 1e-9


@pytest.mark.parametrize("w", [0.7, 0.65 * cmath.exp(0.3j), 1.3 + 0.1j, 0.9 - 0.4j])
def test_singular_half_scales(mp40, half_scales, w):
    r = eval_singular_expansion(half_scales, w)
    assert rel(r.value, half_psi(mp40, 1.3, 2 * w)) < 1e-10


def test_singular_domain(gauss):
    with pytest.raises(DomainError):
        eval_singular_expansion(gauss, 0.4)
    with pytest.raises(CutError):
        eval_singular_expansion(gauss, 1.2)
    with pytest.raises(ScaleError):
        eval_singular_expansion(validate([0.5, 0.5], [0.1, 0.9]), 0.8)


def test_integer_mu_continuity():
    exact = validate([0.5, 0.5], [1, 1], [1.0], [1])
    near = validate([0.5, 0.5], [1, 1], [1.0001], [1])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        v_near = eval_singular_expansion(near, 0.8).value
    v_exact = eval_singular_expansion(exact, 0.8).value
    assert abs(v_near - v_exact) <= 1e-2


def test_near_integer_mu_warns():
    with pytest.warns(RuntimeWarning):
        eval_singular_expansion(validate([0.5, 0.5], [1, 1], [1.00001], [1]), 0.8)


# -- value at rho -----------------------------------------------------------------------


def test_at_rho_gauss(gauss):
    r = eval_at_rho(gauss)
    assert r.representation == "at-rho"
    assert rel(r.value, GAUSS_AT_RHO) < 1e-10


def test_at_rho_dixon():
    ps = validate([0.6, 0.3, 0.2], [1, 1, 1], [1.3, 1.4], [1, 1])
    assert rel(eval_at_rho(ps).value, DIXON) < 1e-10


def test_at_rho_continuation_negative_mu(mp40):
    # Re mu < 0: analytic continuation in c of the Gauss summation
    a, b, c = 0.8, 0.9, 1.2
    ps = validate([a, b], [1, 1], [c], [1])
    G = mp40.gamma
    ref = G(a) * G(b) * G(c - a - b) / (G(c - a) * G(c - b))
    assert rel(eval_at_rho(ps).value, ref) < 1e-10


def test_at_rho_pole():
    with pytest.raises(IntegerMuError):
        eval_at_rho(validate([0.75, 0.75], [1, 1], [0.5], [1]))


# -- dispatch -----------------------------------------------------------------------------


@pytest.mark.parametrize("w,tag", [(0.3, "maclaurin"), (1.2 + 0.3j, "singular"), (-5, "residue"), (0.5j, "maclaurin")])
def test_auto_tags(half_scales, w, tag):
    assert eval_auto(half_scales, w * half_scales.rho).representation == tag


def test_auto_cut(gauss):
    with pytest.raises(CutError):
        eval_auto(gauss, 1.0)
    with pytest.raises(CutError):
        eval_auto(gauss, 7.5)


@pytest.mark.parametrize("z", [0.3, -0.9, 0.9 + 0.3j, -0.97 + 0.2j, 0.2 + 1.0j, -1.02, 1.2 + 0.3j, -4 + 1j, 0.99j])
def test_auto_gauss_reduction(mp40, gauss, z):
    assert rel(eval_auto(gauss, z).value, gauss_psi(mp40, 0.5, 0.7, 1.3, z)) < 1e-9


@settings(max_examples=12)
@given(st.floats(0.05, 3.0), st.floats(-math.pi, math.pi))
def test_auto_schwarz(r, phi):
    ps = validate([1.0, 1.3], [0.5, 0.5])
    z = ps.rho * r * cmath.exp(1j * phi)
    if abs(z.imag) < 1e-9 and z.real >= ps.rho:
        return
    a = eval_auto(ps, z).value
    b = eval_auto(ps, z.conjugate()).value
    assert abs(b - a.conjugate()) <= 1e-12 * max(1, abs(a))


@pytest.mark.parametrize("w", [0.62 + 0.1j, 0.8 + 0.3j, 0.9 - 0.2j])
def test_overlap_inner(half_scales, w):
    m = eval_maclaurin(half_scales, 2 * w, 1e-12).value
    s = eval_singular_expansion(half_scales, w, None, 1e-12).value
    assert abs(m - s) <= 1e-11 * abs(s)


@pytest.mark.parametrize("w", [1.1 + 0.2j, 1.3 - 0.05j, 1.0 + 0.35j])
def test_overlap_outer(half_scales, w):
    r = eval_residue_series(half_scales, 2 * w, 1e-12).value
    s = eval_singular_expansion(half_scales, w, None, 1e-12).value
    assert abs(r - s) <= 1e-11 * abs(s)


# -- the cut ------------------------------------------------------------------------------


def test_jump_gauss(gauss):
    j = jump_on_cut(gauss, 2.0)
    assert j.real == 0
    assert j.imag == pytest.approx(GAUSS_JUMP_2, rel=1e-9)


def test_average_gauss(gauss):
    a = average_on_cut(gauss, 2.0)
    assert a.imag == 0
    assert a.real == pytest.approx(GAUSS_AVG_2, rel=1e-9)


def _richardson(f, x):
    eps = (1e-3, 1e-4, 1e-5)
    d = [f(x, e) for e in eps]
    return (10 * d[2] - d[1]) / 9


def test_jump_and_average_from_banks(half_scales):
    x = 3.1
    up = lambda x, e: eval_residue_series(half_scales, complex(x, e), 1e-13).value
    lo = lambda x, e: eval_residue_series(half_scales, complex(x, -e), 1e-13).value
    jump = _richardson(lambda x, e: up(x, e) - lo(x, e), x)
    avg = _richardson(lambda x, e: (up(x, e) + lo(x, e)) / 2, x)
    cv = cut_values(half_scales, x)
    assert abs(cv.jump - jump) <= 1e-5 * abs(cv.jump)
    assert abs(cv.average - avg) <= 1e-5 * abs(cv.average)


def test_jump_equals_h_series(gauss):
    for x in (1.3, 2.0, 5.0):
        j = jump_on_cut(gauss, x, 1e-12)
        h = h_series(gauss, 1.0, 0.0, gauss.rho / x, 1e-12)
        assert abs(j - 2j * math.pi * h) <= 1e-7 * abs(j)


def test_cut_domain(gauss):
    with pytest.raises(DomainError):
        jump_on_cut(gauss, 0.5)
    with pytest.raises(DomainError):
        average_on_cut(validate([0.5 + 0.1j, 0.7], [1, 1], [1.3], [1]), 2.0)
    with pytest.raises(PoleCollisionError):
        jump_on_cut(validate([1, 1], [0.5, 0.5]), 3.0)
