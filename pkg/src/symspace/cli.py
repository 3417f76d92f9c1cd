"""Command-line front end.

Every subcommand writes one JSON object (default) or CSV table to stdout or
``--out``. Exit status: 0 success, 1 invalid input, 2 a statistical or
bound check failed.
"""
import argparse
import csv
import io
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .borndist import born_probs
from .closedform import (
    ENSEMBLES,
    EnsembleId,
    appendix_interval,
    asymptote,
    expected_tvd,
)
from .errors import DomainError, InvariantError
from .matrixcore import ORTHOGONAL, UNITARY, GroupSpec, RngStream, sample_haar_batch
from .sqbound import PER_ENSEMBLE, RegimeSchedule, SqParams, evaluate_bound, regime_table
from .symspaces import FAMILIES, SpaceSpec, sample_space_batch
from .verify import (
    LawSpec,
    ks_law_check,
    mc_ball_fraction,
    mc_expected_tvd,
    mc_tail_probabilities,
    mc_twirl,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_CHECK_FAILED = 2

ALL_NAMES = ("unitary", "orthogonal", "symplectic") + FAMILIES
SEED_ENV = "SYMSPACE_SEED"
DEFAULT_T_GRID = (0.05, 0.1, 0.2, 0.4)

# --entry shorthand -> catalogue entry class, per ensemble
_ENTRY = {
    ("unitary", "group"): "group_entry",
    ("orthogonal", "group"): "group_entry",
    ("unitary", "dot"): "dot_product",
    ("ai", "diagonal"): "ai_diagonal",
    ("aii", "generic"): "aii_generic",
    ("aii", "partner"): "aii_partner",
    ("diii", "generic"): "diii_generic",
    ("diii", "partner"): "diii_partner",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _u64(text):
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be a 64-bit unsigned integer, got {text}")
    return v


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--timing", action="store_true", help="include wall-clock time in meta")

    ens = argparse.ArgumentParser(add_help=False)
    ens.add_argument("--ensemble", type=str.lower, choices=ALL_NAMES)
    size = ens.add_mutually_exclusive_group()
    size.add_argument("--dim", type=int)
    size.add_argument("--qubits", type=int)

    mc = argparse.ArgumentParser(add_help=False)
    mc.add_argument("--trials", type=_positive_int, default=10_000)
    mc.add_argument("--seed", type=_u64, default=None)
    mc.add_argument("--workers", type=_positive_int, default=1)

    sq = argparse.ArgumentParser(add_help=False)
    sq.add_argument("--tau", type=float)
    sq.add_argument("--eps", type=float)
    beta = sq.add_mutually_exclusive_group()
    beta.add_argument("--beta", type=float)
    beta.add_argument("--log-beta", type=float)
    sq.add_argument("--mode", choices=("combined", "per-ensemble"), default="combined")

    parser = _Parser(prog="symspace", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", parents=[common, ens, mc], help="emit sampled matrices")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.set_defaults(trials=1)

    sub.add_parser("expected-tvd", parents=[common, ens], help="exact expected TVD")
    sub.add_parser("mc-tvd", parents=[common, ens, mc], help="Monte Carlo expected TVD")

    p = sub.add_parser("twirl-check", parents=[common, ens, mc], help="empirical vs exact twirl")
    p.add_argument("--matrix", choices=("projector", "identity", "random"), default="projector")

    p = sub.add_parser("law-check", parents=[common, ens, mc], help="KS test of an entry law")
    p.add_argument("--entry", required=True, choices=sorted({k[1] for k in _ENTRY}))
    p.add_argument("--alpha", type=float, default=1e-3)

    p = sub.add_parser("concentration", parents=[common, ens, mc], help="tails vs Levy bound")
    p.add_argument("--t", type=float, nargs="+", default=list(DEFAULT_T_GRID))

    p = sub.add_parser("ball-fraction", parents=[common, ens, mc], help="mass near uniform")
    p.add_argument("--radius", type=float, required=True)

    sub.add_parser("sq-bound", parents=[common, ens, sq], help="SQ query lower bound")

    p = sub.add_parser("regime-table", parents=[common, sq], help="bound vs qubit count")
    p.add_argument("--ensemble", type=str.lower, choices=("ai", "aii", "diii"), default="aii")
    p.add_argument("--n-list", type=int, nargs="+", default=[24, 32, 40])
    p.add_argument("--tau-exponent", type=float, default=-0.25)
    p.add_argument("--xi-exponent", type=float, default=-0.25)
    p.add_argument("--beta-exponent", type=float, default=0.49)
    p.add_argument("--beta-scale", type=float, default=1.0)

    p = sub.add_parser("bounds-table", parents=[common], help="exact TVD vs proven interval")
    p.add_argument("--ensemble", type=str.lower, choices=ENSEMBLES, nargs="+",
                   default=["ai", "aii", "diii"])
    p.add_argument("--dim-min", type=int, default=4)
    p.add_argument("--dim-max", type=int, default=1024)
    p.add_argument("--dim-step", type=int, default=2)
    return parser


def _dim(args):
    if getattr(args, "qubits", None) is not None:
        if args.qubits < 2:
            raise UsageError("--qubits must be >= 2")
        return 2**args.qubits
    if getattr(args, "dim", None) is None:
        raise UsageError("--dim or --qubits is required")
    return args.dim


def _ensemble(args):
    if args.ensemble is None:
        raise UsageError("--ensemble is required")
    if args.ensemble not in ENSEMBLES:
        raise UsageError(f"{args.ensemble} has no closed forms; choose from {ENSEMBLES}")
    return EnsembleId(args.ensemble, _dim(args))


def _seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return _u64(env)
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise UsageError(f"bad {SEED_ENV}: {exc}") from exc
    return 0


def _pairs(m):
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _labels(d):
    if d & (d - 1) == 0:
        n = d.bit_length() - 1
        return [format(x, f"0{n}b") for x in range(d)]
    return [str(x) for x in range(d)]


def _clean(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return _clean(value.item())
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def _report(rep, timing):
    d = rep.to_dict()
    if not timing:
        d.pop("wall_time", None)
    return d


def cmd_sample(args):
    d = _dim(args)
    seed = _seed(args)
    name = args.ensemble
    if name is None:
        raise UsageError("--ensemble is required")
    streams = [RngStream(seed, i) for i in range(args.trials)]
    if name == "symplectic":
        raise UsageError("Haar sampling on the symplectic group is not provided")
    if name in (UNITARY, ORTHOGONAL):
        mats = sample_haar_batch(GroupSpec(name, d), streams)
    else:
        split = None if args.p is None and args.q is None else (args.p, args.q)
        mats = sample_space_batch(SpaceSpec(name, d, split), streams)
    labels = _labels(d)
    rows = []
    for i, m in enumerate(mats):
        rows.append({"index": i, "matrix": _pairs(m), "born": born_probs(m).tolist()})
    extra = {"ensemble": name, "dim": d, "labels": labels}
    return {"samples": rows, **extra}, None, args.trials, seed, EXIT_OK


def cmd_expected_tvd(args):
    e = _ensemble(args)
    iv = appendix_interval(e)
    val = expected_tvd(e)
    rec = {
        "ensemble": e.family,
        "dim": e.dim,
        "expected_tvd": val,
        "asymptote": asymptote(e),
        "interval_lower": iv.lower,
        "interval_upper": iv.upper,
        "in_interval": iv.contains(val),
    }
    return rec, None, None, None, EXIT_OK


def cmd_mc_tvd(args):
    e = _ensemble(args)
    seed = _seed(args)
    rep = mc_expected_tvd(e, args.trials, seed, args.workers)
    exact = expected_tvd(e)
    z = (rep.estimate - exact) / rep.stderr if rep.stderr > 0 else math.inf
    ok = abs(rep.estimate - exact) <= 4 * rep.stderr
    rec = {"ensemble": e.family, "dim": e.dim, **_report(rep, args.timing),
           "closed_form": exact, "z_score": z, "agrees": ok}
    return rec, None, args.trials, seed, EXIT_OK if ok else EXIT_CHECK_FAILED


def _twirl_input(kind, d, seed):
    if kind == "identity":
        return np.eye(d, dtype=complex)
    if kind == "projector":
        a = np.zeros((d, d), dtype=complex)
        a[0, 0] = 1.0
        return a
    gen = RngStream(seed, 2**64 - 1).generator()
    g = gen.standard_normal((d, d)) + 1j * gen.standard_normal((d, d))
    return (g + g.conj().T) / 2


def cmd_twirl_check(args):
    e = _ensemble(args)
    seed = _seed(args)
    a = _twirl_input(args.matrix, e.dim, seed)
    rep = mc_twirl(e, a, args.trials, seed, args.workers)
    tol = 6.0 / math.sqrt(args.trials) * float(np.linalg.norm(a))
    ok = rep.frobenius_err <= tol
    rec = {
        "ensemble": e.family,
        "dim": e.dim,
        "matrix": args.matrix,
        "frobenius_err": rep.frobenius_err,
        "tolerance": tol,
        "passed": bool(ok),
        "trials": rep.trials,
        "master_seed": rep.master_seed,
        "mean": _pairs(rep.mean),
        "closed_form": _pairs(rep.closed_form),
    }
    return rec, None, args.trials, seed, EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_law_check(args):
    e = _ensemble(args)
    seed = _seed(args)
    cls = _ENTRY.get((e.family, args.entry))
    if cls is None:
        raise UsageError(f"no catalogued law for --entry {args.entry} on {e.family}")
    spec = LawSpec(e.family, e.dim, cls)
    res = ks_law_check(spec, args.trials, seed, args.workers, alpha=args.alpha)
    law = spec.law
    law_text = law if isinstance(law, str) else f"beta({law.a!r}, {law.b!r})"
    rec = {"ensemble": e.family, "dim": e.dim, "entry_class": cls, "law": law_text,
           **res.to_dict()}
    return rec, None, args.trials, seed, EXIT_OK if res.passed else EXIT_CHECK_FAILED


def cmd_concentration(args):
    e = _ensemble(args)
    seed = _seed(args)
    rows = []
    ok = True
    for rep in mc_tail_probabilities(e, args.t, args.trials, seed, args.workers):
        within = rep.empirical <= rep.levy_bound + 3 * rep.stderr
        ok &= within
        rows.append({"ensemble": e.family, "dim": e.dim, **rep.to_dict(), "within_bound": within})
    return None, rows, args.trials, seed, EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_ball_fraction(args):
    e = _ensemble(args)
    seed = _seed(args)
    rep = mc_ball_fraction(e, args.radius, args.trials, seed, args.workers)
    rec = {"ensemble": e.family, "dim": e.dim, "radius": args.radius, **_report(rep, args.timing)}
    return rec, None, args.trials, seed, EXIT_OK


def _mode(args):
    return PER_ENSEMBLE if args.mode == "per-ensemble" else "combined"


def cmd_sq_bound(args):
    if args.ensemble not in ("ai", "aii", "diii"):
        raise UsageError("sq-bound supports --ensemble ai, aii or diii")
    for flag in ("tau", "eps"):
        if getattr(args, flag) is None:
            raise UsageError(f"--{flag} is required")
    if args.beta is None and args.log_beta is None:
        raise UsageError("--beta or --log-beta is required")
    p = SqParams(args.ensemble, _dim(args), args.tau, args.eps, beta=args.beta,
                 log_beta=args.log_beta, mode=_mode(args))
    res = evaluate_bound(p)
    rec = {
        "ensemble": p.family,
        "dim": p.dim,
        "tau": p.tau,
        "eps": p.eps,
        "log_beta": p.log_beta,
        "mode": p.mode,
        **res.to_dict(),
        "u_bound": res.u_bound,
        "f_bound": res.f_bound,
        "log10_q_plus_1": res.log10_q_plus_1,
    }
    return rec, None, None, None, EXIT_OK


def cmd_regime_table(args):
    sched = RegimeSchedule(
        family=args.ensemble,
        tau_exponent=args.tau_exponent,
        xi_exponent=args.xi_exponent,
        beta_exponent=args.beta_exponent,
        beta_scale=args.beta_scale,
        eps=args.eps,
        mode=_mode(args),
    )
    rows = [{"ensemble": args.ensemble, **r.to_dict()} for r in regime_table(args.n_list, sched)]
    for r in rows:
        # 2**n is not exactly representable by readers that parse doubles; n identifies it
        if r["dim"] > 2**53:
            r["dim"] = None
    return None, rows, None, None, EXIT_OK


def cmd_bounds_table(args):
    rows = []
    ok = True
    for fam in args.ensemble:
        even = fam in ("symplectic", "aii", "diii")
        start = args.dim_min + (args.dim_min % 2 if even else 0)
        step = args.dim_step if not even or args.dim_step % 2 == 0 else 2 * args.dim_step
        for d in range(max(start, 4), args.dim_max + 1, step):
            e = EnsembleId(fam, d)
            val = expected_tvd(e)
            iv = appendix_interval(e)
            inside = iv.contains(val)
            if not e.is_group:
                ok &= inside
            rows.append({"ensemble": fam, "dim": d, "expected_tvd": val, "lower": iv.lower,
                         "upper": iv.upper, "inside": inside, "convention_only": e.is_group})
    return None, rows, None, None, EXIT_OK if ok else EXIT_CHECK_FAILED


COMMANDS = {
    "sample": cmd_sample,
    "expected-tvd": cmd_expected_tvd,
    "mc-tvd": cmd_mc_tvd,
    "twirl-check": cmd_twirl_check,
    "law-check": cmd_law_check,
    "concentration": cmd_concentration,
    "ball-fraction": cmd_ball_fraction,
    "sq-bound": cmd_sq_bound,
    "regime-table": cmd_regime_table,
    "bounds-table": cmd_bounds_table,
}


def _scalar(v):
    return v is None or isinstance(v, (bool, int, float, str))


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render(record, rows, meta, fmt):
    if fmt == "json":
        payload = dict(record) if record is not None else {"rows": rows}
        payload["meta"] = meta
        return json.dumps(_clean(payload), indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if record is not None and "samples" in record:
        writer.writerow(["index", "row", "col", "re", "im"])
        for s in record["samples"]:
            for r, line in enumerate(s["matrix"]):
                for c, (re, im) in enumerate(line):
                    writer.writerow([s["index"], r, c, repr(re), repr(im)])
        return buf.getvalue()
    table = [record] if record is not None else rows
    table = [_clean(r) for r in table]
    cols = [k for k, v in table[0].items() if _scalar(v)] if table else []
    writer.writerow(cols)
    for r in table:
        writer.writerow([_csv_cell(r[k]) for k in cols])
    return buf.getvalue()


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    t0 = time.perf_counter()
    try:
        record, rows, trials, seed, status = COMMANDS[args.command](args)
    except (UsageError, DomainError, InvariantError) as exc:
        print(f"symspace {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    meta = {"seed": seed, "trials": trials, "version": __version__}
    if args.timing:
        meta["wall_time_s"] = time.perf_counter() - t0
    text = render(record, rows, meta, args.format)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def main():
    sys.exit(run())
