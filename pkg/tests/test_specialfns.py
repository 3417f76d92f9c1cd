import math

import mpmath
import numpy as np
import pytest
import scipy.special as sc
from hypothesis import given, settings
from hypothesis import strategies as st

from symspace.errors import DomainError
from symspace.specialfns import (
    BetaParams,
    beta_cdf,
    beta_fn,
    beta_pdf,
    hyp2f1,
    hyp2f1_scaled,
    inc_beta,
    ln_beta,
    ln_gamma,
    reg_inc_beta,
)

shape = st.floats(0.1, 60.0)
unit = st.floats(0.0, 1.0)


@pytest.mark.parametrize("x, want", [(1, 0.0), (0.5, math.log(math.sqrt(math.pi))), (5, math.log(24))])
def test_ln_gamma_values(x, want):
    assert ln_gamma(x) == pytest.approx(want, abs=1e-14)


def test_ln_gamma_rejects_nonpositive():
    with pytest.raises(DomainError):
        ln_gamma(0.0)


@pytest.mark.parametrize("a, b, want", [(1, 1, 1.0), (0.5, 0.5, math.pi), (1, 3, 1 / 3)])
def test_beta_fn_values(a, b, want):
    assert beta_fn(a, b) == pytest.approx(want, rel=1e-14)


@given(shape, shape)
def test_ln_beta_matches_scipy(a, b):
    assert ln_beta(a, b) == pytest.approx(sc.betaln(a, b), rel=1e-12, abs=1e-12)


@given(unit, shape, shape)
def test_reg_inc_beta_matches_scipy(z, a, b):
    assert reg_inc_beta(z, a, b) == pytest.approx(sc.betainc(a, b, z), abs=1e-11)


@given(unit, shape, shape)
def test_reg_inc_beta_reflection(z, a, b):
    # make z and 1 - z exact complements so only the function's own error shows
    w = 1.0 - z
    z = 1.0 - w
    assert abs(reg_inc_beta(z, a, b) + reg_inc_beta(w, b, a) - 1.0) <= 1e-12


def test_inc_beta_edges_and_closed_forms():
    assert inc_beta(1.0, 2.5, 3.5) == pytest.approx(beta_fn(2.5, 3.5), rel=1e-14)
    for z, b in [(0.3, 4.0), (0.9, 0.5), (0.01, 17.0)]:
        assert inc_beta(z, 1.0, b) == pytest.approx((1 - (1 - z) ** b) / b, rel=1e-12)
    assert inc_beta(0.5, 0.5, 0.5) == pytest.approx(math.pi / 2, rel=1e-12)
    assert reg_inc_beta(0.0, 2, 3) == 0.0
    assert reg_inc_beta(1.0, 2, 3) == 1.0
    assert reg_inc_beta(0.5, 2, 2) == pytest.approx(0.5, abs=1e-15)


def test_reg_inc_beta_vectorized_matches_scalar():
    z = np.linspace(0, 1, 41)
    vec = reg_inc_beta(z, 3.5, 0.75)
    assert np.allclose(vec, [reg_inc_beta(float(t), 3.5, 0.75) for t in z], rtol=0, atol=1e-15)


def test_reg_inc_beta_rejects_outside_unit_interval():
    with pytest.raises(DomainError):
        reg_inc_beta(1.5, 1, 1)
    with pytest.raises(DomainError):
        reg_inc_beta(0.5, -1, 1)


def test_hyp2f1_gauss_value():
    assert hyp2f1(1, 2, 6, 1) == pytest.approx(5 / 3, rel=1e-14)


def test_hyp2f1_zero_argument():
    assert hyp2f1(3.3, -1.2, 4.5, 0.0) == 1.0


def test_hyp2f1_partial_sum_oracle():
    # direct summation with exact rationals: a=1, b=3/2, c=5, z=3/4
    from fractions import Fraction

    a, b, c, z = Fraction(1), Fraction(3, 2), Fraction(5), Fraction(3, 4)
    term, total = Fraction(1), Fraction(1)
    for n in range(400):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
    assert hyp2f1(1, 1.5, 5, 0.75) == pytest.approx(float(total), rel=1e-9)


@pytest.mark.parametrize("d", range(4, 257))
def test_hyp2f1_gauss_family(d):
    assert abs(hyp2f1(1, (d - 1) / 2, d + 1, 1.0) - 2 * d / (d + 1)) <= 1e-10


@pytest.mark.parametrize("d", [4, 5, 16, 63, 256, 1024, 4096])
def test_hyp2f1_large_negative_argument_against_mpmath(d):
    # the family used for the AI off-diagonal term; z = -(d-1) needs Pfaff
    mpmath.mp.dps = 40
    want = mpmath.log(mpmath.hyp2f1(d, mpmath.mpf(d - 1) / 2, d + 1, -(d - 1)))
    log_scale, value = hyp2f1_scaled(d, (d - 1) / 2, d + 1, -(d - 1))
    got = log_scale + math.log(value)
    assert got == pytest.approx(float(want), rel=1e-12, abs=1e-12)


@settings(max_examples=60)
@given(st.floats(0.1, 8), st.floats(0.1, 8), st.floats(0.5, 12), st.floats(-0.95, 0.95))
def test_hyp2f1_matches_mpmath_inside_disc(a, b, c, z):
    mpmath.mp.dps = 30
    want = float(mpmath.hyp2f1(a, b, c, z))
    assert hyp2f1(a, b, c, z) == pytest.approx(want, rel=1e-10, abs=1e-12)


def test_hyp2f1_rejects_divergent_points():
    with pytest.raises(DomainError):
        hyp2f1(1, 2, 3, 1.0)  # c - a - b = 0
    with pytest.raises(DomainError):
        hyp2f1(1, 2, 3, 1.5)
    with pytest.raises(DomainError):
        hyp2f1(1, 2, -2, 0.5)


def test_beta_params_validation():
    with pytest.raises(DomainError):
        BetaParams(0.0, 1.0)
    assert BetaParams(2.0, 6.0).mean == pytest.approx(0.25)


def test_beta_cdf_uniform_and_symmetric():
    x = np.linspace(0, 1, 11)
    assert np.allclose(beta_cdf(x, BetaParams(1, 1)), x, atol=1e-15)
    assert beta_cdf(0.5, BetaParams(0.5, 0.5)) == pytest.approx(0.5, abs=1e-14)


@pytest.mark.parametrize("d", [4, 8, 33])
def test_beta_pdf_group_entry_density(d):
    x = np.linspace(0, 1, 17)
    assert np.allclose(beta_pdf(x, BetaParams(1, d - 1)), (d - 1) * (1 - x) ** (d - 2), rtol=1e-12)


@pytest.mark.parametrize("a, b", [(1.0, 7.0), (0.5, 3.5), (2.5, 2.5), (1.0, 31.0)])
def test_beta_cdf_monotone_with_pdf_derivative(a, b):
    p = BetaParams(a, b)
    x = np.linspace(0.05, 0.95, 37)
    cdf = beta_cdf(x, p)
    assert np.all(np.diff(cdf) >= 0)
    h = 1e-5
    deriv = (beta_cdf(x + h, p) - beta_cdf(x - h, p)) / (2 * h)
    assert np.allclose(deriv, beta_pdf(x, p), atol=1e-6, rtol=1e-6)
