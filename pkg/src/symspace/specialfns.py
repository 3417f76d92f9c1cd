"""Scalar special functions: log-gamma, beta, incomplete beta, Gauss 2F1.

Only the regimes needed for beta-law expectations are covered. The
incomplete beta functions accept a scalar or an array for ``z``; shapes
``a`` and ``b`` are scalars.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "BetaParams",
    "ln_gamma",
    "ln_beta",
    "beta_fn",
    "inc_beta",
    "reg_inc_beta",
    "hyp2f1",
    "hyp2f1_scaled",
    "beta_pdf",
    "beta_cdf",
]

_CF_EPS = 1e-16
_CF_TINY = 1e-300
_CF_MAXIT = 20000
_SERIES_RTOL = 1e-16
_SERIES_MAXTERMS = 1_000_000


@dataclass(frozen=True)
class BetaParams:
    """Shape pair ``(a, b)`` of a Beta distribution."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise DomainError(f"Beta shapes must be positive, got a={self.a}, b={self.b}")

    @property
    def mean(self):
        return self.a / (self.a + self.b)


def ln_gamma(x):
    """Natural log of the gamma function for ``x > 0``."""
    if not x > 0:
        raise DomainError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def ln_beta(a, b):
    if not (a > 0 and b > 0):
        raise DomainError(f"beta function requires a, b > 0, got a={a}, b={b}")
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def beta_fn(a, b):
    """Complete beta function ``B(a, b) = Γ(a)Γ(b)/Γ(a+b)``."""
    return math.exp(ln_beta(a, b))


def _check_unit_interval(z):
    z = np.asarray(z, dtype=float)
    if np.any(~((z >= 0.0) & (z <= 1.0))):
        raise DomainError("argument must lie in [0, 1]")
    return z


def _betacf(a, b, x):
    """Continued fraction for the incomplete beta (modified Lentz), elementwise.

    ``a``, ``b`` and ``x`` are broadcast arrays; converges fast for
    ``x < (a+1)/(a+b+2)``.
    """
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = np.ones_like(x)
    d = 1.0 - qab * x / qap
    d = np.where(np.abs(d) < _CF_TINY, _CF_TINY, d)
    d = 1.0 / d
    h = d.copy()
    active = np.ones(x.shape, dtype=bool)
    for m in range(1, _CF_MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _CF_TINY, _CF_TINY, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _CF_TINY, _CF_TINY, c)
        d = 1.0 / d
        h = np.where(active, h * d * c, h)
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _CF_TINY, _CF_TINY, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _CF_TINY, _CF_TINY, c)
        d = 1.0 / d
        step = d * c
        h = np.where(active, h * step, h)
        active &= np.abs(step - 1.0) >= _CF_EPS
        if not active.any():
            return h
    raise DomainError(f"incomplete beta continued fraction did not converge (a={a}, b={b})")


def reg_inc_beta(z, a, b):
    """Regularized incomplete beta ``I_z(a, b)``, the Beta(a, b) cdf.

    Uses the continued fraction on whichever side of
    ``z = (a+1)/(a+b+2)`` converges, via ``I_z(a,b) = 1 - I_{1-z}(b,a)``.
    """
    if not (a > 0 and b > 0):
        raise DomainError(f"incomplete beta requires a, b > 0, got a={a}, b={b}")
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(_check_unit_interval(z))
    out = np.empty_like(z)
    lnb = ln_beta(a, b)

    lo = z == 0.0
    hi = z == 1.0
    out[lo] = 0.0
    out[hi] = 1.0
    inner = ~(lo | hi)
    if inner.any():
        x = z[inner]
        flip = x >= (a + 1.0) / (a + b + 2.0)
        aa = np.where(flip, b, a)
        bb = np.where(flip, a, b)
        xx = np.where(flip, 1.0 - x, x)
        # front factor x^a (1-x)^b / (a B(a,b)); B is symmetric in its arguments
        front = np.exp(aa * np.log(xx) + bb * np.log1p(-xx) - lnb) / aa
        val = front * _betacf(aa, bb, xx)
        out[inner] = np.where(flip, 1.0 - val, val)
    return float(out[0]) if scalar else out


def inc_beta(z, a, b):
    """Non-regularized incomplete beta ``B_z(a, b) = ∫_0^z u^{a-1}(1-u)^{b-1} du``."""
    return reg_inc_beta(z, a, b) * beta_fn(a, b)


def _gamma_sign(x):
    if x > 0:
        return 1.0
    return 1.0 if math.floor(x) % 2 == 0 else -1.0


def _is_nonpos_int(x):
    return x <= 0 and float(x).is_integer()


def _series(a, b, c, z):
    term = 1.0
    terms = [1.0]
    total = 1.0
    for n in range(_SERIES_MAXTERMS):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z
        if term == 0.0:
            return math.fsum(terms)
        terms.append(term)
        total += term
        if abs(term) < _SERIES_RTOL * abs(total):
            return math.fsum(terms)
    raise DomainError(f"2F1 series did not converge in {_SERIES_MAXTERMS} terms (z={z})")


def hyp2f1_scaled(a, b, c, z):
    """Gauss hypergeometric function as ``(log_scale, value)``.

    ``2F1(a, b; c; z) == exp(log_scale) * value``. For ``|z| < 1`` the defining
    series is summed directly; at ``z == 1`` Gauss' summation is used
    (requires ``c - a - b > 0``); for ``z <= -1/2`` Pfaff's transformation

        2F1(a, b; c; z) = (1 - z)^(-b) 2F1(c - a, b; c; z / (z - 1))

    moves the argument into ``[1/3, 1)`` and the prefactor is kept as a log.
    """
    if _is_nonpos_int(c):
        raise DomainError(f"2F1 undefined for non-positive integer c={c}")
    if z == 0.0:
        return 0.0, 1.0
    if z == 1.0:
        s = c - a - b
        if not s > 0:
            raise DomainError(f"2F1 at z=1 diverges unless c-a-b > 0 (got {s})")
        if _is_nonpos_int(c - a) or _is_nonpos_int(c - b):
            return 0.0, 0.0
        log_val = math.lgamma(c) + math.lgamma(s) - math.lgamma(c - a) - math.lgamma(c - b)
        sign = _gamma_sign(c) * _gamma_sign(s) * _gamma_sign(c - a) * _gamma_sign(c - b)
        return log_val, sign
    terminating = _is_nonpos_int(a) or _is_nonpos_int(b)
    if -0.5 < z < 1.0 or terminating:
        return 0.0, _series(a, b, c, z)
    if z <= -0.5:
        w = z / (z - 1.0)
        return -b * math.log1p(-z), _series(c - a, b, c, w)
    raise DomainError(f"2F1 series diverges for z={z} > 1")


def hyp2f1(a, b, c, z):
    """Gauss hypergeometric ``2F1(a, b; c; z)`` for real arguments.

    May underflow to 0.0 when the Pfaff prefactor is tiny; use
    :func:`hyp2f1_scaled` to keep it in log space.
    """
    log_scale, value = hyp2f1_scaled(a, b, c, z)
    return math.exp(log_scale) * value


def beta_pdf(x, p):
    x = _check_unit_interval(x)
    with np.errstate(divide="ignore", invalid="ignore"):
        logpdf = (p.a - 1.0) * np.log(x) + (p.b - 1.0) * np.log1p(-x) - ln_beta(p.a, p.b)
        out = np.exp(logpdf)
    # 0 * log(0) edges for a == 1 or b == 1
    if p.a == 1.0:
        out = np.where(x == 0.0, math.exp(-ln_beta(p.a, p.b)) * (1.0 - x) ** (p.b - 1.0), out)
    if p.b == 1.0:
        out = np.where(x == 1.0, math.exp(-ln_beta(p.a, p.b)) * x ** (p.a - 1.0), out)
    return float(out) if out.ndim == 0 else out


def beta_cdf(x, p):
    return reg_inc_beta(x, p.a, p.b)
