"""Monte Carlo checks of the closed forms and distribution laws.

Trial ``i`` always draws from ``RngStream(seed, i)``. Trials are grouped in
fixed-size chunks and chunks are reduced in index order, so estimates are
bit-identical for any number of workers.
"""
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .borndist import DiagObservable, born_probs, tvd_rows
from .closedform import EnsembleId, levy_bound, twirl_closed_form
from .errors import DomainError
from .matrixcore import ORTHOGONAL, UNITARY, GroupSpec, RngStream, sample_haar_batch
from .records import Record
from .specialfns import BetaParams, beta_cdf
from .symspaces import SpaceSpec, sample_space_batch

__all__ = [
    "CHUNK",
    "ENTRY_CLASSES",
    "McReport",
    "TailReport",
    "TwirlReport",
    "KsResult",
    "LawSpec",
    "ensemble_batch",
    "mc_expected_tvd",
    "mc_entry_deviation",
    "mc_twirl",
    "ks_statistic",
    "ks_threshold",
    "ks_law_check",
    "mc_tail_probability",
    "mc_tail_probabilities",
    "mc_ball_fraction",
    "mc_query_deviation",
]

CHUNK = 256
KS_ALPHA = 1e-3
DEGENERATE_TOL = 1e-12


@dataclass
class McReport(Record):
    estimate: float
    stderr: float
    trials: int
    master_seed: int
    wall_time: float = 0.0

    def __post_init__(self):
        if self.stderr < 0 or self.trials < 1:
            raise DomainError("McReport needs stderr >= 0 and trials >= 1")


@dataclass
class TailReport(Record):
    t: float
    empirical: float
    levy_bound: float
    stderr: float
    mean: float
    trials: int
    master_seed: int


@dataclass
class KsResult(Record):
    statistic: float
    threshold: float
    passed: bool
    trials: int
    master_seed: int


@dataclass(eq=False)
class TwirlReport:
    mean: np.ndarray
    closed_form: np.ndarray
    frobenius_err: object
    trials: int
    master_seed: int


def ensemble_batch(e, streams):
    """Draw one matrix per stream from ensemble ``e``.

    The symplectic ensemble is served by Haar unitaries: its first column is
    uniform on the complex sphere, so every Born statistic coincides.
    """
    if e.family in ("unitary", "symplectic"):
        return sample_haar_batch(GroupSpec(UNITARY, e.dim), streams)
    if e.family == "orthogonal":
        return sample_haar_batch(GroupSpec(ORTHOGONAL, e.dim), streams)
    return sample_space_batch(SpaceSpec(e.family, e.dim), streams)


def _map_chunks(e, trials, seed, fn, workers=1):
    """Apply ``fn`` to each chunk of sampled matrices; results in chunk order."""
    starts = range(0, trials, CHUNK)

    def run(start):
        streams = [RngStream(seed, i) for i in range(start, min(start + CHUNK, trials))]
        return fn(ensemble_batch(e, streams))

    if workers <= 1:
        return [run(s) for s in starts]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, starts))


def _per_trial(e, trials, seed, fn, workers):
    return np.concatenate(_map_chunks(e, trials, seed, fn, workers))


def _mean_report(values, seed, t0):
    n = values.size
    mean = math.fsum(values) / n
    var = math.fsum((values - mean) ** 2) / (n - 1) if n > 1 else 0.0
    return McReport(mean, math.sqrt(var / n), n, seed, time.perf_counter() - t0)


def _fraction_report(hits, seed, t0):
    n = hits.size
    p = int(hits.sum()) / n
    return McReport(p, math.sqrt(p * (1 - p) / n), n, seed, time.perf_counter() - t0)


def mc_expected_tvd(e, trials, seed, workers=1):
    """Sample mean and standard error of the distance to uniform."""
    if trials < 100:
        raise DomainError(f"need at least 100 trials, got {trials}")
    t0 = time.perf_counter()
    values = _per_trial(e, trials, seed, lambda v: tvd_rows(born_probs(v)), workers)
    return _mean_report(values, seed, t0)


def mc_entry_deviation(e, x, trials, seed, workers=1):
    """Monte Carlo ``E |d |<x|V|0>|^2 - 1|`` for one basis label ``x``."""
    if not 0 <= x < e.dim:
        raise DomainError(f"basis index {x} out of range")
    t0 = time.perf_counter()
    d = e.dim
    values = _per_trial(e, trials, seed, lambda v: np.abs(d * born_probs(v)[:, x] - 1.0), workers)
    return _mean_report(values, seed, t0)


def mc_twirl(e, a, trials, seed, workers=1):
    """Empirical ``E[V A V^†]`` against the closed form.

    ``a`` may be one matrix or a stack; a stack is twirled with the same draws
    and ``frobenius_err`` is then an array.
    """
    if trials < 1000:
        raise DomainError(f"need at least 1000 trials, got {trials}")
    a = np.asarray(a, dtype=complex)
    closed = twirl_closed_form(e, a)
    stack = a if a.ndim == 3 else a[None]

    def chunk_sum(v):
        vh = np.conj(np.swapaxes(v, -1, -2))
        return (v[:, None] @ stack[None] @ vh[:, None]).sum(axis=0)

    total = np.zeros_like(stack)
    for part in _map_chunks(e, trials, seed, chunk_sum, workers):
        total += part
    mean = total / trials
    err = np.linalg.norm((mean - closed.reshape(stack.shape)), axis=(-2, -1))
    if a.ndim == 2:
        mean, err = mean[0], float(err[0])
    return TwirlReport(mean, closed, err, trials, seed)


DEGENERATE = "degenerate_at_zero"

# entry class -> {family: law(d)}; None marks an exact zero
_CATALOG = {
    "group_entry": {
        "unitary": lambda d: BetaParams(1.0, d - 1.0),
        "orthogonal": lambda d: BetaParams(0.5, (d - 1) / 2),
    },
    "dot_product": {"unitary": lambda d: BetaParams(1.0, (d - 1) / 2)},
    "ai_diagonal": {"ai": lambda d: BetaParams(1.0, (d - 1) / 2)},
    "aii_generic": {"aii": lambda d: BetaParams(1.0, d - 2.0)},
    "aii_partner": {"aii": lambda d: None},
    "diii_generic": {"diii": lambda d: BetaParams(0.5, (d - 2) / 2)},
    "diii_partner": {"diii": lambda d: None},
}
ENTRY_CLASSES = tuple(_CATALOG)


@dataclass(frozen=True)
class LawSpec:
    """An observable squared magnitude together with its exact law."""

    family: str
    dim: int
    entry_class: str

    def __post_init__(self):
        by_family = _CATALOG.get(self.entry_class)
        if by_family is None or self.family not in by_family:
            raise DomainError(f"no law catalogued for ({self.family}, {self.entry_class})")
        EnsembleId(self.family, self.dim)

    @property
    def ensemble(self):
        return EnsembleId(self.family, self.dim)

    @property
    def law(self):
        law = _CATALOG[self.entry_class][self.family](self.dim)
        return DEGENERATE if law is None else law

    def samples(self, v):
        """The squared magnitudes this law describes, one per matrix in ``v``."""
        d = self.dim
        if self.entry_class in ("group_entry", "ai_diagonal"):
            return born_probs(v)[:, 0]
        if self.entry_class == "dot_product":
            col = v[:, :, 0]
            return np.abs(np.sum(col * col, axis=-1)) ** 2
        if self.entry_class.endswith("generic"):
            return born_probs(v)[:, 1]
        return born_probs(v)[:, d // 2]


def ks_statistic(samples, cdf):
    """One-sample Kolmogorov-Smirnov distance between ``samples`` and ``cdf``."""
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    f = np.asarray(cdf(x), dtype=float)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))


def ks_threshold(n, alpha=KS_ALPHA):
    """Asymptotic KS critical value ``sqrt(-ln(alpha/2) / (2n))``."""
    return math.sqrt(-math.log(alpha / 2) / (2 * n))


def ks_law_check(spec, trials, seed, workers=1, alpha=KS_ALPHA):
    """KS test of ``spec``'s samples against its catalogued law.

    Degenerate laws are checked exactly: every ``|entry|`` must be below
    ``1e-12``, reported as the statistic with that threshold.
    """
    if trials < 1000:
        raise DomainError(f"need at least 1000 trials, got {trials}")
    samples = _per_trial(spec.ensemble, trials, seed, spec.samples, workers)
    law = spec.law
    if law == DEGENERATE:
        stat = float(np.sqrt(samples.max()))
        return KsResult(stat, DEGENERATE_TOL, stat <= DEGENERATE_TOL, trials, seed)
    stat = ks_statistic(samples, lambda x: beta_cdf(np.clip(x, 0.0, 1.0), law))
    thr = ks_threshold(trials, alpha)
    return KsResult(stat, thr, stat <= thr, trials, seed)


def mc_tail_probabilities(e, ts, trials, seed, workers=1):
    """Empirical ``Pr[|tvd - mean| >= t]`` for each ``t``, from one set of draws."""
    values = _per_trial(e, trials, seed, lambda v: tvd_rows(born_probs(v)), workers)
    mean = math.fsum(values) / values.size
    dev = np.abs(values - mean)
    out = []
    for t in ts:
        if t < 0:
            raise DomainError(f"deviation must be non-negative, got {t}")
        p = float(np.count_nonzero(dev >= t)) / values.size
        se = math.sqrt(p * (1 - p) / values.size)
        out.append(TailReport(float(t), p, levy_bound(e, t), se, mean, trials, seed))
    return out


def mc_tail_probability(e, t, trials, seed, workers=1):
    return mc_tail_probabilities(e, [t], trials, seed, workers)[0]


def mc_ball_fraction(e, radius, trials, seed, workers=1):
    """Fraction of draws whose Born distribution is within ``radius`` of uniform."""
    if radius < 0:
        raise DomainError(f"radius must be non-negative, got {radius}")
    t0 = time.perf_counter()
    hits = _per_trial(e, trials, seed, lambda v: tvd_rows(born_probs(v)) <= radius, workers)
    return _fraction_report(hits, seed, t0)


def mc_query_deviation(e, phi, tau, trials, seed, workers=1):
    """Fraction of draws where the query ``φ`` deviates from its uniform mean by more than ``τ``."""
    if not isinstance(phi, DiagObservable):
        phi = DiagObservable(phi)
    t0 = time.perf_counter()
    center = phi.mean
    hits = _per_trial(
        e, trials, seed, lambda v: np.abs(born_probs(v) @ phi.values - center) > tau, workers
    )
    return _fraction_report(hits, seed, t0)
