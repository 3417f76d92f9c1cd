import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from symspace.errors import DomainError
from symspace.matrixcore import ORTHOGONAL, GroupSpec, RngStream, sample_haar_batch, unitarity_defect
from symspace.symspaces import (
    FAMILIES,
    SpaceSpec,
    apply_involution,
    build_j,
    coset_from_group,
    partner_index,
    sample_space,
    sample_space_batch,
)

SPECS = [
    SpaceSpec("ai", 6),
    SpaceSpec("aii", 6),
    SpaceSpec("aiii", 6, (2, 4)),
    SpaceSpec("bdi", 5, (2, 3)),
    SpaceSpec("diii", 8),
    SpaceSpec("ci", 6),
    SpaceSpec("cii", 8, (1, 3)),
]


def batch(spec, seed, n):
    return sample_space_batch(spec, [RngStream(seed, i) for i in range(n)])


def test_all_families_covered():
    assert sorted(s.family for s in SPECS) == sorted(FAMILIES)


def test_j_convention():
    j = build_j(4).real
    assert j[0, 2] == 1 and j[2, 0] == -1


@pytest.mark.parametrize("d", [4, 6, 10, 32])
def test_j_identities_exact(d):
    j = build_j(d)
    assert np.array_equal(j @ j, -np.eye(d))
    assert np.array_equal(j.T @ j, np.eye(d))


@pytest.mark.parametrize("x, d, want", [(0, 4, (2, 1)), (2, 4, (0, -1)), (1, 8, (5, 1))])
def test_partner_index(x, d, want):
    assert partner_index(x, d) == want


@pytest.mark.parametrize("d", [4, 8, 12])
def test_partner_index_agrees_with_j(d):
    j = build_j(d).real
    for x in range(d):
        xp, s = partner_index(x, d)
        row = np.zeros(d)
        row[xp] = s
        assert np.array_equal(j[x], row)


def test_spec_validation():
    with pytest.raises(DomainError):
        SpaceSpec("aii", 5)
    with pytest.raises(DomainError):
        SpaceSpec("aiii", 6)
    with pytest.raises(DomainError):
        SpaceSpec("bdi", 6, (2, 3))
    with pytest.raises(DomainError):
        SpaceSpec("cii", 8, (2, 4))
    with pytest.raises(DomainError):
        SpaceSpec("ai", 6, (3, 3))
    with pytest.raises(DomainError):
        SpaceSpec("e8", 8)
    assert SpaceSpec("DIII", 4).parent == GroupSpec(ORTHOGONAL, 4)


def test_ai_involution_is_conjugation():
    g = sample_haar_batch(GroupSpec("unitary", 4), [RngStream(1)])[0]
    assert np.array_equal(apply_involution(SpaceSpec("ai", 4), g), np.conj(g))


def test_involution_fixed_points():
    assert np.array_equal(apply_involution(SpaceSpec("diii", 4), np.eye(4)), np.eye(4))
    j = build_j(4)
    assert np.array_equal(apply_involution(SpaceSpec("aii", 4), j), j)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.family)
def test_involution_is_an_involution(spec):
    g = sample_haar_batch(spec.parent, [RngStream(2, i) for i in range(5)])
    twice = apply_involution(spec, apply_involution(spec, g))
    assert np.max(np.abs(twice - g)) <= 1e-14


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.family)
def test_samples_satisfy_sigma_v_equals_adjoint(spec):
    v = batch(spec, 3, 100)
    adj = np.conj(np.swapaxes(v, -1, -2))
    err = np.linalg.norm(apply_involution(spec, v) - adj, axis=(-2, -1))
    assert err.max() <= 1e-10
    assert unitarity_defect(v).max() <= 1e-10


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["ai", "aii", "diii", "ci"]), st.integers(2, 12), st.integers(0, 2**32))
def test_sigma_property_random_dims(fam, half, seed):
    spec = SpaceSpec(fam, 2 * half)
    v = sample_space(spec, RngStream(seed))
    assert np.linalg.norm(apply_involution(spec, v) - v.conj().T) <= 1e-10


def test_ai_samples_symmetric():
    v = sample_space(SpaceSpec("ai", 4), RngStream(4))
    assert np.linalg.norm(v - v.T) <= 1e-12


@pytest.mark.parametrize("fam", ["aii", "diii"])
@pytest.mark.parametrize("d", [4, 8, 16])
def test_partner_entry_vanishes(fam, d):
    v = batch(SpaceSpec(fam, d), 5, 200)
    for x in range(d):
        xp, _ = partner_index(x, d)
        assert np.abs(v[:, xp, x]).max() <= 1e-12


def test_ai_left_k_invariance():
    # replacing g by k g with k real orthogonal must not change the law of V
    n = 100_000
    spec = SpaceSpec("ai", 6)
    g = sample_haar_batch(spec.parent, [RngStream(6, i) for i in range(n)])
    k = sample_haar_batch(GroupSpec(ORTHOGONAL, 6), [RngStream(7)])[0]
    a = np.abs(coset_from_group(spec, g)[:, 0, 0]) ** 2
    g2 = sample_haar_batch(spec.parent, [RngStream(8, i) for i in range(n)])
    b = np.abs(coset_from_group(spec, k @ g2)[:, 0, 0]) ** 2
    assert np.allclose(coset_from_group(spec, k @ g[:10]), coset_from_group(spec, g[:10]), atol=1e-12)
    assert stats.ks_2samp(a, b).pvalue > 1e-3
