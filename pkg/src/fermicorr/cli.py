"""Command-line orchestration: sweeps, verification, bound tables.

Subcommands
-----------
profile        one (L, alpha, mu, beta) correlation profile to CSV
sweep          the full parameter grid: profiles CSV + exponent summary CSV
bounds         three-term correlation bound over a distance grid
fourier-check  fast-transform vs dense pipeline comparison table
verify         self-verification battery, JSON report

Configuration is JSON with flag overrides; ``beta = inf`` is written as the
literal string ``"inf"``.  Sweep rows run in a process pool and results are
written in grid order, so identical config and seed give byte-identical
files.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import bounds as bounds_mod
from . import fourier as fourier_mod
from . import verify as verify_mod
from .fit import correlation_profile, fit_power_law, MAGNITUDE_FLOOR
from .io import fmt_value, parse_beta, write_csv, write_json
from .model import Boundary, KitaevParams
from .thermal import covariance, diagonalize

PROFILE_SCHEMA = "profiles-v1"
SUMMARY_SCHEMA = "nu-summary-v1"
BOUNDS_SCHEMA = "bounds-v1"
FOURIER_SCHEMA = "fourier-check-v1"

PROFILE_HEADER = ["L", "alpha", "mu", "beta", "l", "corr"]
SUMMARY_HEADER = ["alpha", "mu", "beta", "L", "nu", "rms_residual", "excluded_bound", "pass"]


@dataclass
class SweepConfig:
    """Grid specification for ``sweep`` (defaults reproduce the studied grid)."""

    alphas: list[float] = field(default_factory=lambda: [0.5, 1.0, 1.5, 2.0])
    mus: list[float] = field(default_factory=lambda: [0.5, 1.0, 1.5])
    betas: list[float] = field(default_factory=lambda: [0.1, 1.0, math.inf])
    sizes: list[int] = field(default_factory=lambda: [500, 1000, 2000])
    t: float = 0.5
    delta: float = 1.0
    boundary: Boundary = Boundary.ANTIPERIODIC
    window: Optional[tuple[int, int]] = None
    epsilon: float = 0.1
    outdir: str = "."
    jobs: int = 0  # 0 -> all available cores
    seed: int = 0
    keep_going: bool = False

    def __post_init__(self) -> None:
        if not (self.alphas and self.mus and self.betas and self.sizes):
            raise ValueError("all parameter grids must be nonempty")
        if any(L < 2 for L in self.sizes):
            raise ValueError("chain sizes must be >= 2")

    @classmethod
    def from_file(cls, path: str) -> "SweepConfig":
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        return cls.from_dict(raw)

    @classmethod
    def from_dict(cls, raw: dict) -> "SweepConfig":
        kwargs = dict(raw)
        if "betas" in kwargs:
            kwargs["betas"] = [parse_beta(b) for b in kwargs["betas"]]
        if "boundary" in kwargs:
            kwargs["boundary"] = Boundary(str(kwargs["boundary"]).lower())
        if "window" in kwargs and kwargs["window"] is not None:
            kwargs["window"] = tuple(int(x) for x in kwargs["window"])
        return cls(**kwargs)

    def grid(self) -> list[tuple[KitaevParams, float]]:
        rows = []
        for L in self.sizes:
            for alpha in self.alphas:
                for mu in self.mus:
                    for beta in self.betas:
                        rows.append(
                            (
                                KitaevParams(
                                    L=L,
                                    t=self.t,
                                    mu=mu,
                                    delta=self.delta,
                                    alpha=alpha,
                                    boundary=self.boundary,
                                ),
                                beta,
                            )
                        )
        return rows


def _sweep_row(args: tuple[KitaevParams, float, Optional[tuple[int, int]], float]) -> dict:
    params, beta, window, epsilon = args
    out: dict = {
        "alpha": params.alpha,
        "mu": params.mu,
        "beta": beta,
        "L": params.L,
    }
    try:
        profile = correlation_profile(params, beta)
        keep = profile.values >= MAGNITUDE_FLOOR
        out["profile"] = [
            (int(l), float(v))
            for l, v in zip(profile.distances[keep], profile.values[keep])
        ]
        res = fit_power_law(profile, window=window)
        out["nu"] = res.nu
        out["rms_residual"] = res.rms_residual
        if math.isfinite(beta) and beta > 0 and params.alpha > 2.0:
            bound = bounds_mod.exclusion_exponent(params.alpha, epsilon, "density_density")
            out["excluded_bound"] = bound
            out["pass"] = res.nu >= bound
    except Exception as exc:
        out["error"] = f"{type(exc).__name__}: {exc}"
    return out


def cmd_sweep(ns: argparse.Namespace) -> int:
    config = SweepConfig.from_file(ns.config) if ns.config else SweepConfig()
    for attr in ("alphas", "mus", "sizes"):
        val = getattr(ns, attr)
        if val is not None:
            setattr(config, attr, [type(getattr(config, attr)[0])(x) for x in val.split(",")])
    if ns.betas is not None:
        config.betas = [parse_beta(b) for b in ns.betas.split(",")]
    if ns.outdir is not None:
        config.outdir = ns.outdir
    if ns.jobs is not None:
        config.jobs = ns.jobs
    if ns.keep_going:
        config.keep_going = True
    if ns.window is not None:
        lo, hi = ns.window.split(":")
        config.window = (int(lo), int(hi))

    os.makedirs(config.outdir, exist_ok=True)
    rows = config.grid()
    work = [(p, b, config.window, config.epsilon) for p, b in rows]
    jobs = config.jobs if config.jobs > 0 else (os.cpu_count() or 1)
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_row, work))
    else:
        results = [_sweep_row(w) for w in work]

    profile_rows = []
    summary_rows = []
    failures = []
    for rec in results:
        if "error" in rec:
            failures.append(rec)
            summary_rows.append(
                [rec["alpha"], rec["mu"], rec["beta"], rec["L"], None, None, None, None]
            )
            continue
        for l, v in rec["profile"]:
            profile_rows.append([rec["L"], rec["alpha"], rec["mu"], rec["beta"], l, v])
        summary_rows.append(
            [
                rec["alpha"],
                rec["mu"],
                rec["beta"],
                rec["L"],
                rec["nu"],
                rec["rms_residual"],
                rec.get("excluded_bound"),
                rec.get("pass"),
            ]
        )

    write_csv(os.path.join(config.outdir, "profiles.csv"), PROFILE_SCHEMA, PROFILE_HEADER, profile_rows)
    write_csv(os.path.join(config.outdir, "summary.csv"), SUMMARY_SCHEMA, SUMMARY_HEADER, summary_rows)

    for rec in failures:
        print(
            f"row failed: L={rec['L']} alpha={rec['alpha']} mu={rec['mu']} "
            f"beta={fmt_value(rec['beta'])}: {rec['error']}",
            file=sys.stderr,
        )
    if failures and not config.keep_going:
        return 1
    return 0


def cmd_profile(ns: argparse.Namespace) -> int:
    params = KitaevParams(
        L=ns.L,
        t=ns.t,
        mu=ns.mu,
        delta=ns.delta,
        alpha=ns.alpha,
        boundary=Boundary(ns.boundary),
    )
    beta = parse_beta(ns.beta)
    profile = correlation_profile(params, beta)
    keep = profile.values >= MAGNITUDE_FLOOR
    rows = [
        [params.L, params.alpha, params.mu, beta, int(l), float(v)]
        for l, v in zip(profile.distances[keep], profile.values[keep])
    ]
    write_csv(ns.out, PROFILE_SCHEMA, PROFILE_HEADER, rows)
    print(f"wrote {len(rows)} points to {ns.out}")
    return 0


def cmd_bounds(ns: argparse.Namespace) -> int:
    try:
        p = bounds_mod.LRBoundParams(J=ns.J, D=ns.D, alpha=ns.alpha, c0=ns.c0, c1=ns.c1)
        q = bounds_mod.Theorem1Params(eta=ns.eta, c2=ns.c2)
        beta = parse_beta(ns.beta)
        ls = np.geomspace(ns.l_min, ns.l_max, ns.n_points)
        rows = []
        for l in ls:
            b = bounds_mod.theorem1_bound(float(l), beta, p, q)
            rows.append(
                [float(l), p.gamma, b.tau, b.term1, b.term2, b.term3, b.total, b.dominant]
            )
    except (bounds_mod.HypothesisViolationError, bounds_mod.ScheduleViolationError) as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        return 1
    write_csv(
        ns.out,
        BOUNDS_SCHEMA,
        ["l", "gamma", "tau", "term1", "term2", "term3", "total", "dominant"],
        rows,
    )
    print(f"wrote {len(rows)} rows to {ns.out}")
    return 0


def cmd_fourier_check(ns: argparse.Namespace) -> int:
    model_ = fourier_mod.long_range_hopping_model(ns.L, ns.alpha, t=ns.t, mu=ns.mu)
    beta = parse_beta(ns.beta)
    fast = fourier_mod.fourier_correlations(model_, beta)
    cov = covariance(diagonalize(fourier_mod.circulant_hamiltonian(model_)), beta)
    dense = np.array([cov.M[1, 2 * l].real for l in range(ns.L)])
    rep = fourier_mod.envelope_report(model_, beta, window=(10, min(200, ns.L // 2)))
    rows = []
    for l in range(1, ns.L // 2 + 1):
        envelope = rep.envelope_prefactor * float(l) ** (-rep.envelope_exponent)
        rows.append([l, float(fast[l]), envelope])
    write_csv(ns.out, FOURIER_SCHEMA, ["l", "corr", "envelope"], rows)
    diff = float(np.max(np.abs(fast - dense)))
    print(
        f"max pipeline difference {diff:.3e}; fitted exponent {rep.fitted_exponent:.3f} "
        f"vs envelope {rep.envelope_exponent:.3f}"
    )
    return 0 if diff < 1e-8 and rep.decays_at_least_as_fast else 1


def cmd_verify(ns: argparse.Namespace) -> int:
    report = verify_mod.run_checks(level=ns.level, seed=ns.seed)
    if ns.out:
        write_json(ns.out, report)
    for rec in report["checks"]:
        status = "PASS" if rec["passed"] else "FAIL"
        print(f"[{status}] {rec['name']} ({rec['seconds']}s)")
    print(f"{'all checks passed' if report['all_passed'] else 'FAILURES present'}")
    return 0 if report["all_passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fermicorr", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="single-point correlation profile")
    p.add_argument("-L", type=int, required=True)
    p.add_argument("--t", type=float, default=0.5)
    p.add_argument("--mu", type=float, default=0.5)
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", required=True, help="inverse temperature, or 'inf'")
    p.add_argument("--boundary", default="antiperiodic", choices=["periodic", "antiperiodic"])
    p.add_argument("--out", default="profile.csv")
    p.set_defaults(func=cmd_profile)

    s = sub.add_parser("sweep", help="parameter-grid sweep")
    s.add_argument("--config", help="JSON sweep configuration")
    s.add_argument("--alphas", help="comma-separated override")
    s.add_argument("--mus", help="comma-separated override")
    s.add_argument("--betas", help="comma-separated override ('inf' allowed)")
    s.add_argument("--sizes", help="comma-separated override")
    s.add_argument("--window", help="fit window as LMIN:LMAX")
    s.add_argument("--outdir")
    s.add_argument("--jobs", type=int)
    s.add_argument("--keep-going", action="store_true")
    s.set_defaults(func=cmd_sweep)

    b = sub.add_parser("bounds", help="three-term correlation bound sweep")
    b.add_argument("--alpha", type=float, required=True)
    b.add_argument("--D", type=int, default=1)
    b.add_argument("--J", type=float, default=1.0)
    b.add_argument("--c0", type=float, default=1.0)
    b.add_argument("--c1", type=float, default=1.0)
    b.add_argument("--c2", type=float, default=4.0)
    b.add_argument("--eta", type=float, default=0.1)
    b.add_argument("--beta", default="1.0")
    b.add_argument("--l-min", type=float, default=10.0)
    b.add_argument("--l-max", type=float, default=1e6)
    b.add_argument("--n-points", type=int, default=50)
    b.add_argument("--out", default="bounds.csv")
    b.set_defaults(func=cmd_bounds)

    f = sub.add_parser("fourier-check", help="fast transform vs dense pipeline")
    f.add_argument("-L", type=int, default=512)
    f.add_argument("--alpha", type=float, default=3.0)
    f.add_argument("--t", type=float, default=1.0)
    f.add_argument("--mu", type=float, default=0.5)
    f.add_argument("--beta", default="1.0")
    f.add_argument("--out", default="fourier_check.csv")
    f.set_defaults(func=cmd_fourier_check)

    v = sub.add_parser("verify", help="self-verification battery")
    v.add_argument("--level", default="fast", choices=["fast", "full"])
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", help="JSON report path")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    return ns.func(ns)


if __name__ == "__main__":
    raise SystemExit(main())
