"""Involutions of the seven Cartan families and the coset sampler.

A uniform point of ``G/K`` is drawn as ``V = σ(g)^{-1} g`` with ``g`` Haar on
the parent group. All involutions below act on ``d x d`` unitaries (with a
leading batch axis allowed), and the sample satisfies ``σ(V) = V^†``.

Conventions:

* ``J = [[0, 1], [-1, 0]]`` in ``d/2`` blocks, so index ``x < d/2`` partners
  with ``x + d/2``.
* ``I_{p,q} = diag(1_p, -1_q)`` and ``K_{p,q} = I_{p,q} ⊕ I_{p,q}``.
* Parents are the full groups ``U(d)`` / ``O(d)``; BDI and DIII use ``O(d)``,
  everything else ``U(d)``. Quaternionic Haar sampling is not provided, so
  CI and CII apply their involutions to a ``U(d)`` parent. The result is the
  quotient of ``U(d)`` by σ's fixed subgroup in ``U(d)``, which is not the
  CI/CII space proper; only the ``σ(V) = V^†`` structure is guaranteed.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .matrixcore import ORTHOGONAL, UNITARY, GroupSpec, sample_haar_batch

__all__ = [
    "FAMILIES",
    "SpaceSpec",
    "build_j",
    "partner_index",
    "ipq",
    "apply_involution",
    "coset_from_group",
    "sample_space",
    "sample_space_batch",
]

FAMILIES = ("ai", "aii", "aiii", "bdi", "diii", "ci", "cii")
_NEEDS_SPLIT = {"aiii", "bdi", "cii"}
_NEEDS_EVEN = {"aii", "diii", "ci", "cii"}
_ORTHOGONAL_PARENT = {"bdi", "diii"}


@dataclass(frozen=True)
class SpaceSpec:
    """A compact symmetric space ``family`` acting on a ``dim``-dimensional space.

    ``split`` is the ``(p, q)`` pair for AIII/BDI (``p + q = dim``) and CII
    (``2(p + q) = dim``).
    """

    family: str
    dim: int
    split: tuple = None

    def __post_init__(self):
        fam = self.family.lower()
        object.__setattr__(self, "family", fam)
        if fam not in FAMILIES:
            raise DomainError(f"unknown symmetric space {self.family!r}")
        if int(self.dim) != self.dim or self.dim < 4:
            raise DomainError(f"dimension must be an integer >= 4, got {self.dim}")
        if fam in _NEEDS_EVEN and self.dim % 2:
            raise DomainError(f"{fam.upper()} requires an even dimension, got {self.dim}")
        if fam in _NEEDS_SPLIT:
            if self.split is None:
                raise DomainError(f"{fam.upper()} requires a (p, q) split")
            p, q = self.split
            if p < 1 or q < 1:
                raise DomainError(f"split entries must be positive, got {self.split}")
            total = 2 * (p + q) if fam == "cii" else p + q
            if total != self.dim:
                raise DomainError(f"split {self.split} inconsistent with dim {self.dim}")
            object.__setattr__(self, "split", (int(p), int(q)))
        elif self.split is not None:
            raise DomainError(f"{fam.upper()} takes no (p, q) split")

    @property
    def parent(self):
        return GroupSpec(ORTHOGONAL if self.family in _ORTHOGONAL_PARENT else UNITARY, self.dim)


def build_j(d):
    """Canonical symplectic form ``[[0, 1], [-1, 0]]`` (integer entries, complex dtype)."""
    if int(d) != d or d < 4 or d % 2:
        raise DomainError(f"symplectic form needs an even d >= 4, got {d}")
    h = d // 2
    j = np.zeros((d, d), dtype=complex)
    j[:h, h:] = np.eye(h)
    j[h:, :h] = -np.eye(h)
    return j


def partner_index(x, d):
    """``(x', s)`` with ``e_x^T J = s e_{x'}^T``."""
    if int(d) != d or d < 4 or d % 2:
        raise DomainError(f"partner map needs an even d >= 4, got {d}")
    if not 0 <= x < d:
        raise DomainError(f"basis index {x} out of range for d={d}")
    h = d // 2
    return (x + h, 1) if x < h else (x - h, -1)


def ipq(p, q):
    return np.diag(np.concatenate([np.ones(p), -np.ones(q)])).astype(complex)


def _conj_by(m, g):
    # m g m^{-1} for a real signature/symplectic m; m^{-1} = m^T
    return m @ g @ m.T


def apply_involution(spec, g):
    """The involution ``σ`` of ``spec``'s family applied to ``g`` (or a stack)."""
    g = np.asarray(g)
    if g.shape[-2:] != (spec.dim, spec.dim):
        raise DomainError(f"matrix shape {g.shape[-2:]} does not match dim {spec.dim}")
    fam = spec.family
    if fam == "ai":
        return np.conj(g)
    if fam == "aii":
        return _conj_by(build_j(spec.dim), np.conj(g))
    if fam in ("diii", "ci"):
        return _conj_by(build_j(spec.dim), g)
    if fam in ("aiii", "bdi"):
        return _conj_by(ipq(*spec.split), g)
    k = np.kron(np.eye(2), ipq(*spec.split))
    return _conj_by(k, g)


def coset_from_group(spec, g):
    """``σ(g)^{-1} g`` for unitary ``g`` (``σ(g)^{-1} = σ(g)^†``)."""
    s = apply_involution(spec, g)
    return np.conj(np.swapaxes(s, -1, -2)) @ g


def sample_space_batch(spec, streams):
    return coset_from_group(spec, sample_haar_batch(spec.parent, streams))


def sample_space(spec, rng):
    """One uniform sample from the symmetric space ``spec``."""
    return sample_space_batch(spec, [rng])[0]
