"""Exact expected distances to uniform, per-entry deviations, twirls and bounds.

Every expectation concerns the Born distribution ``P(x) = |<x|V|0>|^2`` of a
random ``V`` from one of six ensembles: the Haar measures on U(d), O(d) and
the unitary symplectic group, and the uniform measures on the symmetric
spaces AI (circular orthogonal), AII (circular symplectic) and DIII
(fermionic Gaussian). Powers such as ``(1 - 1/d)^d`` are evaluated as
``exp(d * log1p(-1/d))`` so that nothing overflows for large ``d``.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .specialfns import hyp2f1_scaled, inc_beta, ln_beta, ln_gamma
from .symspaces import build_j

__all__ = [
    "ENSEMBLES",
    "GROUP_FAMILIES",
    "SPACE_FAMILIES",
    "EnsembleId",
    "BoundInterval",
    "expected_tvd",
    "per_entry_deviation",
    "asymptote",
    "appendix_interval",
    "twirl_closed_form",
    "gamma_ratio",
    "wendel_bounds",
    "levy_log_bound",
    "levy_bound",
]

GROUP_FAMILIES = ("unitary", "orthogonal", "symplectic")
SPACE_FAMILIES = ("ai", "aii", "diii")
ENSEMBLES = GROUP_FAMILIES + SPACE_FAMILIES
_EVEN = {"symplectic", "aii", "diii"}

INV_E = math.exp(-1.0)
SQRT_2_PI_E = math.sqrt(2.0 / (math.pi * math.e))


@dataclass(frozen=True)
class EnsembleId:
    family: str
    dim: int

    def __post_init__(self):
        fam = self.family.lower()
        object.__setattr__(self, "family", fam)
        if fam not in ENSEMBLES:
            raise DomainError(f"unknown ensemble {self.family!r}; expected one of {ENSEMBLES}")
        if int(self.dim) != self.dim or self.dim < 4:
            raise DomainError(f"dimension must be an integer >= 4, got {self.dim}")
        object.__setattr__(self, "dim", int(self.dim))
        if fam in _EVEN and self.dim % 2:
            raise DomainError(f"{fam} requires an even dimension, got {self.dim}")

    @property
    def is_group(self):
        return self.family in GROUP_FAMILIES


@dataclass(frozen=True)
class BoundInterval:
    lower: float
    upper: float

    def __post_init__(self):
        if self.lower > self.upper:
            raise DomainError(f"empty interval [{self.lower}, {self.upper}]")

    def contains(self, x):
        return self.lower <= x <= self.upper


def _pow1m(d, k):
    """``(1 - 1/d)^k``."""
    if d & (d - 1) == 0:
        # 1 - 1/d is exact for powers of two, so pow is correctly rounded
        return math.pow(1.0 - 1.0 / d, k)
    return math.exp(k * math.log1p(-1.0 / d))


def _ai_offdiag_hyp_term(d):
    # (d-1)^d / d^((d+1)/2) * 2F1(d, (d-1)/2; d+1; -(d-1)); the 2F1 is
    # returned by hyp2f1_scaled already Pfaff-transformed, prefactor in logs
    log_scale, series = hyp2f1_scaled(d, (d - 1) / 2, d + 1, -(d - 1))
    log_pref = d * math.log(d - 1) - 0.5 * (d + 1) * math.log(d)
    return math.exp(log_pref + log_scale) * series


def _diii_bracket(d):
    # 2/sqrt(d) (1-1/d)^((d-2)/2) + B_{1-1/d}((d-2)/2, 3/2)
    return 2.0 / math.sqrt(d) * _pow1m(d, (d - 2) / 2) + inc_beta(1.0 - 1.0 / d, (d - 2) / 2, 1.5)


def expected_tvd(e):
    """``E d_TV(P_V, uniform)`` exactly, for ``V`` drawn from ensemble ``e``."""
    d = e.dim
    fam = e.family
    if fam in ("unitary", "symplectic"):
        return _pow1m(d, d)
    if fam == "orthogonal":
        log_pref = (
            math.log(2.0) + ln_gamma(d / 2) - 0.5 * math.log(math.pi * d) - ln_gamma((d - 1) / 2)
        )
        return math.exp(log_pref + 0.5 * (d - 1) * math.log1p(-1.0 / d))
    if fam == "ai":
        diag_part = 4 * (d - 1) / (d + 1) * _pow1m(d, (d - 1) / 2)
        return (diag_part + (d - 1) * _ai_offdiag_hyp_term(d)) / (2 * d)
    if fam == "aii":
        return _pow1m(d, d - 1)
    # diii
    return (d - 1) / (d * math.exp(ln_beta((d - 2) / 2, 0.5))) * _diii_bracket(d)


_SLOTS = {
    "unitary": ("generic",),
    "symplectic": ("generic",),
    "orthogonal": ("generic",),
    "ai": ("diagonal", "generic"),
    "aii": ("partner", "generic"),
    "diii": ("partner", "generic"),
}


def per_entry_deviation(e, slot):
    """``E |d P(x) - 1|`` for one class of basis label ``x``.

    ``diagonal`` is ``x = 0`` (AI only), ``partner`` is the symplectic partner
    ``x = 0'`` of the reference index (AII, DIII), ``generic`` any other ``x``.
    """
    slot = slot.lower()
    if slot not in _SLOTS[e.family]:
        raise DomainError(f"slot {slot!r} is not defined for {e.family}")
    d = e.dim
    fam = e.family
    if slot == "partner":
        return 1.0
    if fam in GROUP_FAMILIES:
        return 2.0 * expected_tvd(e)
    if fam == "ai":
        if slot == "diagonal":
            return 4 * (d - 1) / (d + 1) * _pow1m(d, (d - 1) / 2) - (d - 1) / (d + 1)
        return 1.0 / (d + 1) + _ai_offdiag_hyp_term(d)
    if fam == "aii":
        return 2.0 * _pow1m(d, d - 2) - 1.0 / (d - 1)
    return -1.0 / (d - 1) + 2.0 / math.exp(ln_beta((d - 2) / 2, 0.5)) * _diii_bracket(d)


def asymptote(e):
    """Large-``d`` limit of :func:`expected_tvd` (``1/e`` or ``sqrt(2/(πe))``)."""
    return SQRT_2_PI_E if e.family in ("orthogonal", "diii") else INV_E


def appendix_interval(e):
    """Interval proven to contain ``expected_tvd(e)``.

    AI and AII: ``1/e ± 5/d``. DIII: ``[sqrt(2/(πe)) - 10/d, sqrt(2/(πe)) + 5/d]``.
    The group ensembles get ``ξ0 ± 5/d`` by convention only; no proof backs it.
    """
    x0 = asymptote(e)
    lo = 10.0 if e.family == "diii" else 5.0
    return BoundInterval(x0 - lo / e.dim, x0 + 5.0 / e.dim)


def twirl_closed_form(e, a):
    """Exact ``E[V A V^†]`` for AI, AII or DIII."""
    a = np.asarray(a)
    d = e.dim
    if a.shape[-2:] != (d, d):
        raise DomainError(f"matrix shape {a.shape[-2:]} does not match dim {d}")
    tr = np.trace(a, axis1=-2, axis2=-1)[..., None, None]
    eye = np.eye(d)
    at = np.swapaxes(a, -1, -2)
    if e.family == "ai":
        return (tr * eye + at) / (d + 1)
    if e.family in ("aii", "diii"):
        j = build_j(d)
        return (tr * eye + j @ at @ j) / (d - 1)
    raise DomainError(f"no twirl closed form for {e.family}")


def _stirling_tail(z):
    # lnΓ(z) - [(z - 1/2) ln z - z + ln(2π)/2], truncated; error < 2e-15 for z >= 20
    z2 = z * z
    return (1.0 / 12 - (1.0 / 360 - (1.0 / 1260 - 1.0 / (1680 * z2)) / z2) / z2) / z


def gamma_ratio(x, s):
    """``Γ(x+s) / (x^s Γ(x))``.

    For large ``x`` the two log-gammas nearly cancel, so the difference of
    their Stirling expansions is formed directly instead.
    """
    if x < 20:
        return math.exp(ln_gamma(x + s) - s * math.log(x) - ln_gamma(x))
    log_r = (x + s - 0.5) * math.log1p(s / x) - s + _stirling_tail(x + s) - _stirling_tail(x)
    return math.exp(log_r)


def wendel_bounds(x, s):
    """Wendel's interval ``[(x/(x+s))^(1-s), 1]`` for ``Γ(x+s)/(x^s Γ(x))``."""
    if not x > 0:
        raise DomainError(f"Wendel's inequality needs x > 0, got {x}")
    if not 0 < s < 1:
        raise DomainError(f"Wendel's inequality needs 0 < s < 1, got {s}")
    return BoundInterval((x / (x + s)) ** (1.0 - s), 1.0)


def levy_log_bound(dim, t, denominator):
    """``log(2 exp(-(dim - 2) t^2 / denominator))``."""
    return math.log(2.0) - (dim - 2) * t * t / denominator


def levy_bound(e, t, lipschitz=1.0):
    """Concentration bound on ``Pr[|f - E f| >= t]`` for an ``L``-Lipschitz ``f``.

    The constant is 24 on the groups and 96 on the symmetric spaces.
    """
    if t < 0:
        raise DomainError(f"deviation must be non-negative, got {t}")
    c = 24.0 if e.is_group else 96.0
    return math.exp(levy_log_bound(e.dim, t, c * lipschitz**2))
