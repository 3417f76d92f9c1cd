"""Statistical-query lower bounds for learning AI, AII and DIII Born distributions.

For a learner that ε-learns a β fraction of the ensemble from τ-accurate
queries the query count obeys

    q + 1 >= (β - 2 exp(-(d-2) ξ² / 96)) / (2 exp(-(d-2) (τ - τ_min)² / 384))

with ``ξ = ξ0 - c/d - ε - τ``. Two parameter conventions exist:

* ``combined``: ``c = 10`` and ``τ_min = 2/(d-1)`` for all three families.
* ``per_ensemble``: ``c = 5`` for AI/AII, ``10`` for DIII; ``τ_min = 2/(d+1)``
  for AI and ``2/(d-1)`` otherwise.

Everything is carried as natural logs because ``β`` may be as small as
``exp(-2^{0.49 n})``.
"""
import math
from dataclasses import dataclass, field

from .closedform import EnsembleId, asymptote, levy_log_bound
from .errors import DomainError
from .records import Record

__all__ = [
    "COMBINED",
    "PER_ENSEMBLE",
    "SqParams",
    "BoundResult",
    "RegimeSchedule",
    "RegimeRow",
    "xi_of",
    "tau_min",
    "u_ball_bound",
    "log_u_ball_bound",
    "f_bound",
    "log_f_bound",
    "lower_bound_q",
    "evaluate_bound",
    "regime_table",
]

COMBINED = "combined"
PER_ENSEMBLE = "per_ensemble"
_MODES = (COMBINED, PER_ENSEMBLE)
_FAMILIES = ("ai", "aii", "diii")
U_DENOM = 96.0
F_DENOM = 384.0


@dataclass(frozen=True)
class SqParams:
    """Learning-problem parameters. Give ``beta`` or ``log_beta`` (natural log)."""

    family: str
    dim: int
    tau: float
    eps: float
    beta: float = None
    log_beta: float = None
    mode: str = COMBINED

    def __post_init__(self):
        fam = self.family.lower()
        object.__setattr__(self, "family", fam)
        if fam not in _FAMILIES:
            raise DomainError(f"SQ bounds are available for {_FAMILIES}, not {fam!r}")
        EnsembleId(fam, self.dim)
        mode = self.mode.replace("-", "_")
        object.__setattr__(self, "mode", mode)
        if mode not in _MODES:
            raise DomainError(f"mode must be one of {_MODES}, got {self.mode!r}")
        if (self.beta is None) == (self.log_beta is None):
            raise DomainError("give exactly one of beta and log_beta")
        if self.beta is not None:
            if not 0 < self.beta <= 1:
                raise DomainError(f"beta must lie in (0, 1], got {self.beta}")
            object.__setattr__(self, "log_beta", math.log(self.beta))
        elif not self.log_beta <= 0:
            raise DomainError(f"log_beta must be <= 0, got {self.log_beta}")
        if not (self.tau >= 0 and self.eps >= 0):
            raise DomainError("tau and eps must be non-negative")

    @classmethod
    def from_qubits(cls, family, n, **kwargs):
        return cls(family, 2**n, **kwargs)

    @property
    def ensemble(self):
        return EnsembleId(self.family, self.dim)


@dataclass
class BoundResult(Record):
    """Lower bound on ``log(q + 1)`` with the two probabilities behind it (as logs)."""

    log_q_plus_1: float
    log_u_bound: float
    log_f_bound: float
    xi: float
    vacuous: bool
    note: str = ""

    @property
    def u_bound(self):
        return math.exp(self.log_u_bound)

    @property
    def f_bound(self):
        return math.exp(self.log_f_bound)

    @property
    def log10_q_plus_1(self):
        return self.log_q_plus_1 / math.log(10.0)

    @property
    def log_log_q_plus_1(self):
        return math.log(self.log_q_plus_1) if self.log_q_plus_1 > 0 else -math.inf


def _ball_constant(p):
    if p.mode == COMBINED or p.family == "diii":
        return 10.0
    return 5.0


def tau_min(p):
    d = p.dim
    if p.mode == PER_ENSEMBLE and p.family == "ai":
        return 2.0 / (d + 1)
    return 2.0 / (d - 1)


def xi_of(p):
    """``ξ = ξ0 - c/d - ε - τ``; raises if not positive."""
    xi = asymptote(p.ensemble) - _ball_constant(p) / p.dim - p.eps - p.tau
    if not xi > 0:
        raise DomainError(f"xi = {xi:.6g} <= 0: eps + tau too large for d={p.dim}")
    return xi


def log_u_ball_bound(p):
    return levy_log_bound(p.dim, xi_of(p), U_DENOM)


def u_ball_bound(p):
    """Bound ``2 exp(-(d-2) ξ²/96)`` on the mass of the (ε+τ)-ball around uniform."""
    return math.exp(log_u_ball_bound(p))


def log_f_bound(p):
    gap = p.tau - tau_min(p)
    if not gap > 0:
        raise DomainError(f"tau = {p.tau} must exceed tau_min = {tau_min(p):.6g}")
    return levy_log_bound(p.dim, gap, F_DENOM)


def f_bound(p):
    """Bound ``2 exp(-(d-2)(τ - τ_min)²/384)`` on the fraction one query distinguishes."""
    return math.exp(log_f_bound(p))


def lower_bound_q(p):
    """Lower bound on the number of queries; ``vacuous`` when it only says ``q >= 0``."""
    return _bound(p, xi_of(p))


def _bound(p, xi):
    log_u = levy_log_bound(p.dim, xi, U_DENOM)
    log_f = log_f_bound(p)
    if p.log_beta <= log_u:
        return BoundResult(0.0, log_u, log_f, xi, True)
    log_num = p.log_beta + math.log1p(-math.exp(log_u - p.log_beta))
    log_ratio = log_num - log_f
    if log_ratio <= 0:
        return BoundResult(0.0, log_u, log_f, xi, True)
    return BoundResult(log_ratio, log_u, log_f, xi, False)


def evaluate_bound(p):
    """:func:`lower_bound_q`, except that an unmet theorem precondition
    (``ξ <= 0`` or ``τ <= τ_min``) gives a vacuous result with a note.

    Quantities that are undefined at such a point are NaN.
    """
    try:
        return lower_bound_q(p)
    except DomainError as exc:
        xi = asymptote(p.ensemble) - _ball_constant(p) / p.dim - p.eps - p.tau
        gap = p.tau - tau_min(p)
        log_u = levy_log_bound(p.dim, xi, U_DENOM) if xi > 0 else math.nan
        log_f = levy_log_bound(p.dim, gap, F_DENOM) if gap > 0 else math.nan
        return BoundResult(0.0, log_u, log_f, xi, True, note=str(exc))


@dataclass(frozen=True)
class RegimeSchedule:
    """How ``τ``, ``ξ`` and ``β`` scale with the qubit count ``n``.

    ``τ = 2^(tau_exponent n)``, ``ξ = 2^(xi_exponent n)`` and
    ``log β = -beta_scale 2^(beta_exponent n)``. Setting ``eps`` fixes ε
    instead, in which case ``ξ`` follows from it.
    """

    family: str = "aii"
    tau_exponent: float = -0.25
    xi_exponent: float = -0.25
    beta_exponent: float = 0.49
    beta_scale: float = 1.0
    eps: float = None
    mode: str = COMBINED


@dataclass
class RegimeRow(Record):
    n: int
    dim: int
    tau: float
    eps: float
    log_beta: float
    xi: float = math.nan
    log_q_plus_1: float = 0.0
    log_log_q_plus_1: float = -math.inf
    vacuous: bool = True
    note: str = field(default="")


def regime_table(n_list, schedule=RegimeSchedule()):
    """One bound per qubit count; invalid parameter points come back as vacuous rows."""
    rows = []
    for n in n_list:
        d = 2**n
        tau = 2.0 ** (schedule.tau_exponent * n)
        log_beta = -schedule.beta_scale * 2.0 ** (schedule.beta_exponent * n)
        row = RegimeRow(n, d, tau, math.nan, log_beta)
        try:
            if schedule.eps is None:
                # xi is prescribed; for large n it is far below the rounding
                # error of eps, so the bound takes it directly
                xi = 2.0 ** (schedule.xi_exponent * n)
                probe = SqParams(schedule.family, d, tau, 0.0, log_beta=log_beta, mode=schedule.mode)
                row.eps = asymptote(probe.ensemble) - _ball_constant(probe) / d - tau - xi
                if not (row.eps >= 0 and xi > 0):
                    raise DomainError(f"eps = {row.eps:.6g} < 0 for the prescribed xi at n={n}")
                res = _bound(probe, xi)
            else:
                row.eps = schedule.eps
                res = lower_bound_q(
                    SqParams(schedule.family, d, tau, schedule.eps, log_beta=log_beta,
                             mode=schedule.mode)
                )
        except (DomainError, OverflowError) as exc:
            row.note = str(exc)
        else:
            row.xi = res.xi
            row.log_q_plus_1 = res.log_q_plus_1
            row.log_log_q_plus_1 = res.log_log_q_plus_1
            row.vacuous = res.vacuous
        rows.append(row)
    return rows
