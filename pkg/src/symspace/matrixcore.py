"""Random streams, Gaussian vectors and Haar sampling on U(d) and O(d).

Matrices are plain ``complex128`` numpy arrays; orthogonal samples are
embedded with an exactly zero imaginary part. Every draw comes from an
:class:`RngStream`, a ``(master_seed, stream_index)`` pair hashed into a
Philox counter-based generator, so results never depend on how trials are
spread over workers.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "UNITARY",
    "ORTHOGONAL",
    "REAL",
    "COMPLEX",
    "RngStream",
    "GroupSpec",
    "sample_gaussian_vector",
    "gaussian_matrices",
    "haar_from_gaussian",
    "sample_haar",
    "sample_haar_batch",
    "sample_two_columns",
    "unitarity_defect",
    "is_unitary",
]

UNITARY = "unitary"
ORTHOGONAL = "orthogonal"
REAL = "real"
COMPLEX = "complex"

_U64 = 2**64


@dataclass(frozen=True)
class RngStream:
    """Reproducible random stream identified by ``(master_seed, stream_index)``."""

    master_seed: int
    stream_index: int = 0

    def __post_init__(self):
        for name in ("master_seed", "stream_index"):
            v = getattr(self, name)
            if not (0 <= int(v) < _U64):
                raise DomainError(f"{name} must be a 64-bit unsigned integer, got {v}")

    def generator(self):
        seq = np.random.SeedSequence(int(self.master_seed), spawn_key=(int(self.stream_index),))
        return np.random.Generator(np.random.Philox(seq))

    def child(self, index):
        """Stream for trial ``index`` under the same master seed."""
        return RngStream(self.master_seed, index)


@dataclass(frozen=True)
class GroupSpec:
    family: str
    dim: int

    def __post_init__(self):
        if self.family not in (UNITARY, ORTHOGONAL):
            raise DomainError(f"unknown group family {self.family!r}")
        if int(self.dim) != self.dim or self.dim < 4:
            raise DomainError(f"group dimension must be an integer >= 4, got {self.dim}")

    @property
    def field(self):
        return REAL if self.family == ORTHOGONAL else COMPLEX


def _as_generator(rng):
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"expected RngStream or numpy Generator, got {type(rng).__name__}")


def _normals(gen, shape, field):
    if field == REAL:
        return gen.standard_normal(shape)
    if field == COMPLEX:
        xy = gen.standard_normal((2, *shape))
        return (xy[0] + 1j * xy[1]) * np.sqrt(0.5)
    raise DomainError(f"unknown field {field!r}")


def sample_gaussian_vector(d, field, rng):
    """Vector of ``d`` i.i.d. standard normals over the reals or the complexes.

    Complex entries have independent real and imaginary parts of variance 1/2,
    so ``E|g_j|^2 = 1`` in both cases.
    """
    if int(d) != d or d < 1:
        raise DomainError(f"vector length must be a positive integer, got {d}")
    return _normals(_as_generator(rng), (int(d),), field)


def gaussian_matrices(d, field, streams):
    """Stack of ``d x d`` Gaussian matrices, one per stream."""
    out = np.empty((len(streams), d, d), dtype=complex if field == COMPLEX else float)
    for k, s in enumerate(streams):
        out[k] = _normals(_as_generator(s), (d, d), field)
    return out


def haar_from_gaussian(z):
    """QR-based Haar map applied to a (stack of) Gaussian matrices.

    Columns of Q are rescaled by the unit-modulus diagonal of R; without this
    the QR factor is not Haar distributed.
    """
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r, axis1=-2, axis2=-1)
    phase = diag / np.abs(diag)
    return q * phase[..., None, :]


def sample_haar_batch(spec, streams):
    """Haar matrices for each stream, as a ``(len(streams), d, d)`` complex array."""
    q = haar_from_gaussian(gaussian_matrices(spec.dim, spec.field, streams))
    return q.astype(complex, copy=False)


def sample_haar(spec, rng):
    """One Haar-random matrix from ``U(d)`` or ``O(d)`` (complex dtype)."""
    z = _normals(_as_generator(rng), (spec.dim, spec.dim), spec.field)
    return haar_from_gaussian(z).astype(complex, copy=False)


def sample_two_columns(d, field, rng):
    """Two orthonormal columns of a Haar matrix by Gram-Schmidt on two Gaussian vectors."""
    if int(d) != d or d < 2:
        raise DomainError(f"need d >= 2 for two orthonormal columns, got {d}")
    gen = _as_generator(rng)
    g1 = _normals(gen, (d,), field)
    a = g1 / np.linalg.norm(g1)
    while True:
        g2 = _normals(gen, (d,), field)
        h2 = g2 - np.vdot(a, g2) * a
        norm = np.linalg.norm(h2)
        if norm >= 1e-300:
            return a, h2 / norm


def unitarity_defect(m):
    """Frobenius norm of ``M^† M - 1`` (last two axes)."""
    m = np.asarray(m)
    d = m.shape[-1]
    gram = np.conj(np.swapaxes(m, -1, -2)) @ m
    return np.linalg.norm(gram - np.eye(d), axis=(-2, -1))


def is_unitary(m, rtol=1e-10):
    m = np.asarray(m)
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        return False
    return bool(np.all(unitarity_defect(m) <= rtol * m.shape[-1]))
