import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import quadrature_oracle as oracle
from symspace.closedform import (
    ENSEMBLES,
    INV_E,
    SQRT_2_PI_E,
    EnsembleId,
    appendix_interval,
    asymptote,
    expected_tvd,
    gamma_ratio,
    levy_bound,
    per_entry_deviation,
    twirl_closed_form,
    wendel_bounds,
)
from symspace.errors import DomainError
from symspace.symspaces import build_j

EVEN = {"symplectic", "aii", "diii"}


def dims(fam, lo=4, hi=1024):
    return range(lo, hi + 1, 2 if fam in EVEN else 1)


def test_ensemble_validation():
    with pytest.raises(DomainError):
        EnsembleId("aii", 5)
    with pytest.raises(DomainError):
        EnsembleId("unitary", 3)
    with pytest.raises(DomainError):
        EnsembleId("aiii", 8)
    assert EnsembleId("AI", 4).family == "ai"


@pytest.mark.parametrize(
    "fam, d, want",
    [
        ("unitary", 4, 81 / 256),
        ("symplectic", 4, 81 / 256),
        ("aii", 4, 27 / 64),
        ("orthogonal", 4, 0.41349667156634),
        # frozen from the quadrature oracle
        ("ai", 4, 0.354230715851499),
        ("diii", 4, 0.5),
        ("ai", 64, 0.366762316784354),
        ("diii", 64, 0.485113435552259),
        ("orthogonal", 64, 0.480125926309715),
    ],
)
def test_expected_tvd_values(fam, d, want):
    assert expected_tvd(EnsembleId(fam, d)) == pytest.approx(want, rel=1e-12)


@pytest.mark.parametrize("fam", ["unitary", "orthogonal", "ai", "aii", "diii"])
@pytest.mark.parametrize("d", [4, 6, 10, 16, 50])
def test_expected_tvd_against_quadrature(fam, d):
    want = float(oracle.expected_tvd(fam, d))
    assert expected_tvd(EnsembleId(fam, d)) == pytest.approx(want, rel=1e-10)


@pytest.mark.parametrize("fam", ["ai", "aii", "diii"])
@pytest.mark.parametrize("d", [4, 8, 30])
def test_per_entry_against_quadrature(fam, d):
    e = EnsembleId(fam, d)
    for slot, want in oracle.entry_values(fam, d).items():
        assert per_entry_deviation(e, slot) == pytest.approx(float(want), rel=1e-10)


def test_per_entry_values():
    aii = EnsembleId("aii", 4)
    assert per_entry_deviation(aii, "partner") == 1.0
    assert per_entry_deviation(aii, "generic") == pytest.approx(19 / 24, rel=1e-14)
    assert (1 + 3 * 19 / 24) / 8 == pytest.approx(27 / 64, rel=1e-15)
    assert per_entry_deviation(EnsembleId("ai", 4), "diagonal") == pytest.approx(0.9588457268, rel=1e-9)
    with pytest.raises(DomainError):
        per_entry_deviation(EnsembleId("unitary", 4), "partner")


@pytest.mark.parametrize("fam, special, tol", [("aii", "partner", 1e-12), ("diii", "partner", 1e-12),
                                               ("ai", "diagonal", 1e-9)])
def test_aggregation_identity(fam, special, tol):
    for d in list(range(4, 200, 2)) + [512, 1024, 4096]:
        e = EnsembleId(fam, d)
        agg = (per_entry_deviation(e, special) + (d - 1) * per_entry_deviation(e, "generic")) / (2 * d)
        assert agg == pytest.approx(expected_tvd(e), rel=tol, abs=tol)


def test_asymptotes():
    assert asymptote(EnsembleId("unitary", 4)) == pytest.approx(0.3678794, abs=1e-7)
    assert asymptote(EnsembleId("diii", 4)) == pytest.approx(0.4839414, abs=1e-7)
    assert asymptote(EnsembleId("ai", 4)) == INV_E
    assert asymptote(EnsembleId("orthogonal", 4)) == SQRT_2_PI_E


def test_appendix_interval_examples():
    iv = appendix_interval(EnsembleId("ai", 100))
    assert (iv.lower, iv.upper) == pytest.approx((INV_E - 0.05, INV_E + 0.05))
    iv = appendix_interval(EnsembleId("diii", 100))
    assert (iv.lower, iv.upper) == pytest.approx((SQRT_2_PI_E - 0.1, SQRT_2_PI_E + 0.05))
    assert appendix_interval(EnsembleId("aii", 20)).contains((19 / 20) ** 19)


@pytest.mark.parametrize("fam", ENSEMBLES)
def test_every_dimension_inside_interval_and_near_asymptote(fam):
    for d in dims(fam):
        e = EnsembleId(fam, d)
        val = expected_tvd(e)
        assert appendix_interval(e).contains(val), d
        assert abs(val - asymptote(e)) <= 10 / d


def test_large_dimension_is_finite():
    for fam in ENSEMBLES:
        val = expected_tvd(EnsembleId(fam, 2**20))
        assert abs(val - asymptote(EnsembleId(fam, 4))) < 1e-5


def test_twirl_examples():
    eye = np.eye(4)
    assert np.allclose(twirl_closed_form(EnsembleId("ai", 4), eye), eye, atol=1e-15)
    assert np.allclose(twirl_closed_form(EnsembleId("aii", 4), eye), eye, atol=1e-15)
    p0 = np.zeros((4, 4))
    p0[0, 0] = 1
    assert np.allclose(twirl_closed_form(EnsembleId("ai", 4), p0), (eye + p0) / 5, atol=1e-15)
    with pytest.raises(DomainError):
        twirl_closed_form(EnsembleId("unitary", 4), eye)
    with pytest.raises(DomainError):
        twirl_closed_form(EnsembleId("ai", 4), np.eye(3))


@given(st.sampled_from(["ai", "aii", "diii"]), st.integers(2, 8), st.integers(0, 2**32))
def test_twirl_trace_preserving(fam, half, seed):
    d = 2 * half
    gen = np.random.default_rng(seed)
    a = gen.standard_normal((d, d)) + 1j * gen.standard_normal((d, d))
    out = twirl_closed_form(EnsembleId(fam, d), a)
    assert abs(np.trace(out) - np.trace(a)) <= 1e-12 * max(1, abs(np.trace(a)))


def test_twirl_stack_matches_single():
    e = EnsembleId("diii", 6)
    a = np.random.default_rng(1).standard_normal((3, 6, 6))
    out = twirl_closed_form(e, a)
    j = build_j(6)
    for k in range(3):
        assert np.allclose(out[k], (np.trace(a[k]) * np.eye(6) + j @ a[k].T @ j) / 5)


def test_wendel_examples():
    iv = wendel_bounds(1, 0.5)
    assert iv.lower == pytest.approx(math.sqrt(2 / 3))
    assert iv.contains(gamma_ratio(1, 0.5))
    assert gamma_ratio(1, 0.5) == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-14)
    assert wendel_bounds(10, 0.5).contains(gamma_ratio(10, 0.5))
    with pytest.raises(DomainError):
        wendel_bounds(1, 1.0)


@given(st.floats(0.01, 1e6), st.floats(0.001, 0.999))
def test_wendel_property(x, s):
    r = gamma_ratio(x, s)
    iv = wendel_bounds(x, s)
    assert iv.lower * (1 - 1e-12) <= r <= 1 + 1e-12


def test_levy_bound():
    e = EnsembleId("ai", 64)
    assert levy_bound(e, 0) == 2.0
    assert levy_bound(e, 0.2) == pytest.approx(2 * math.exp(-62 * 0.04 / 96))
    assert levy_bound(EnsembleId("unitary", 64), 0.2) == pytest.approx(2 * math.exp(-62 * 0.04 / 24))
    with pytest.raises(DomainError):
        levy_bound(e, -0.1)
