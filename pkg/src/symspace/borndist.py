"""Born distributions, distance to uniform, and diagonal statistical queries."""
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvariantError
from .matrixcore import unitarity_defect

__all__ = [
    "BornDist",
    "DiagObservable",
    "born_distribution",
    "born_probs",
    "tvd_to_uniform",
    "tvd_rows",
    "sq_value",
]

_SUM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class BornDist:
    """Probability vector ``P(x) = |<x|V|ref>|^2`` over basis labels ``0..d-1``."""

    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise InvariantError("Born distribution must be a non-empty vector")
        if np.any(p < -_SUM_TOL) or np.any(p > 1 + _SUM_TOL):
            raise InvariantError("Born probabilities must lie in [0, 1]")
        if abs(p.sum() - 1.0) > _SUM_TOL:
            raise InvariantError(f"Born probabilities sum to {p.sum()!r}, not 1")
        p.flags.writeable = False
        object.__setattr__(self, "probs", p)

    @property
    def dim(self):
        return self.probs.size


@dataclass(frozen=True, eq=False)
class DiagObservable:
    """Bounded function ``φ: {0..d-1} -> [-1, 1]``, i.e. a diagonal observable."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size == 0:
            raise DomainError("observable must be a non-empty vector")
        if np.any(np.abs(v) > 1.0):
            raise DomainError("observable values must lie in [-1, 1]")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def mean(self):
        """Expectation under the uniform distribution."""
        return float(self.values.mean())


def born_probs(v, ref_index=0):
    """Unchecked ``|V[:, ref]|^2``; works on a stack of matrices."""
    col = np.asarray(v)[..., :, ref_index]
    return col.real**2 + col.imag**2


def born_distribution(v, ref_index=0):
    v = np.asarray(v)
    if v.ndim != 2 or v.shape[0] != v.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {v.shape}")
    d = v.shape[0]
    if not 0 <= ref_index < d:
        raise DomainError(f"reference index {ref_index} out of range for d={d}")
    if unitarity_defect(v) > 1e-10 * d:
        raise InvariantError("matrix is not unitary")
    return BornDist(born_probs(v, ref_index))


def tvd_rows(p):
    """``½ Σ_x |P(x) - 1/d|`` along the last axis."""
    p = np.asarray(p, dtype=float)
    return 0.5 * np.abs(p - 1.0 / p.shape[-1]).sum(axis=-1)


def tvd_to_uniform(p):
    """Total variation distance between ``p`` and the uniform distribution."""
    if not isinstance(p, BornDist):
        p = BornDist(p)
    return float(tvd_rows(p.probs))


def sq_value(v, phi, ref_index=0):
    """``<ref| V^† Φ V |ref> = Σ_x φ(x) |<x|V|ref>|^2``."""
    if not isinstance(phi, DiagObservable):
        phi = DiagObservable(phi)
    v = np.asarray(v)
    if v.shape[-1] != phi.values.size:
        raise DomainError(f"observable length {phi.values.size} != matrix dim {v.shape[-1]}")
    out = born_probs(v, ref_index) @ phi.values
    return float(out) if np.ndim(out) == 0 else out
