"""Self-verification battery behind ``fermicorr verify``.

Each check exercises one of the dual routes the package maintains (Gaussian
pipeline vs Fock oracle, elimination Pfaffian vs cofactor expansion, fast
transform vs dense diagonalization, closed forms vs quadrature) and reports
measured residuals.  ``fast`` keeps every check to a few seconds; ``full``
runs the complete grids.
"""

from __future__ import annotations

import math
import time
from typing import Callable

import numpy as np

from . import bounds, exactfock, fourier, wick
from .model import Boundary, KitaevParams, build_kitaev
from .thermal import covariance, diagonalize

__all__ = ["run_checks", "CHECKS"]


def _random_antisymmetric(rng: np.random.Generator, n: int) -> np.ndarray:
    A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return A - A.T


def check_pfaffian_det_consistency(level: str, rng: np.random.Generator) -> dict:
    n_samples = 30 if level == "fast" else 100
    worst = 0.0
    for _ in range(n_samples):
        n = 2 * int(rng.integers(1, 7))
        A = _random_antisymmetric(rng, n)
        pf = wick.pfaffian(A)
        det = np.linalg.det(A)
        worst = max(worst, abs(pf * pf - det) / max(1e-30, abs(det)))
    sign_ok = True
    for _ in range(5):
        A = _random_antisymmetric(rng, 6)
        if abs(wick.pfaffian(A) - wick.pfaffian_cofactor(A)) > 1e-9 * max(
            1.0, abs(wick.pfaffian_cofactor(A))
        ):
            sign_ok = False
    return {
        "name": "pfaffian_det_consistency",
        "passed": bool(worst < 1e-9 and sign_ok),
        "max_relative_residual": worst,
        "sign_matches_cofactor": sign_ok,
    }


def check_fock_anticommutators(level: str, rng: np.random.Generator) -> dict:
    L = 4 if level == "fast" else 6
    ops = exactfock.build_fock_operators(L)
    eye = np.eye(2**L)
    worst = 0.0
    for i in range(L):
        for j in range(L):
            ai, aj = ops[i].matrix, ops[j].matrix
            worst = max(worst, float(np.max(np.abs(ai @ aj + aj @ ai))))
            acd = ai @ aj.conj().T + aj.conj().T @ ai
            target = eye if i == j else 0.0
            worst = max(worst, float(np.max(np.abs(acd - target))))
    return {"name": "fock_anticommutators", "passed": bool(worst < 1e-13), "max_defect": worst}


def check_oracle_covariance(level: str, rng: np.random.Generator) -> dict:
    n_draws = 3 if level == "fast" else 8
    sizes = (4,) if level == "fast" else (4, 6)
    worst = 0.0
    for L in sizes:
        ops = exactfock.build_fock_operators(L)
        for _ in range(n_draws):
            params = KitaevParams.default_point(
                L,
                mu=float(rng.uniform(0.0, 2.0)),
                alpha=float(rng.uniform(0.5, 3.0)),
            )
            beta = float(rng.uniform(0.2, 3.0))
            M = covariance(diagonalize(build_kitaev(params)), beta).M
            rho = exactfock.thermal_state(exactfock.kitaev_fock_hamiltonian(params, ops), beta)
            M_exact = exactfock.covariance_from_state(rho, ops)
            worst = max(worst, float(np.max(np.abs(M - M_exact))))
    return {"name": "oracle_covariance", "passed": bool(worst < 1e-10), "max_entry_diff": worst}


def check_oracle_density_density(level: str, rng: np.random.Generator) -> dict:
    L = 6
    ops = exactfock.build_fock_operators(L)
    n_draws = 2 if level == "fast" else 6
    worst = 0.0
    for _ in range(n_draws):
        params = KitaevParams.default_point(
            L, mu=float(rng.uniform(0.0, 2.0)), alpha=float(rng.uniform(0.5, 3.0))
        )
        beta = float(rng.uniform(0.2, 3.0))
        cov = covariance(diagonalize(build_kitaev(params)), beta)
        rho = exactfock.thermal_state(exactfock.kitaev_fock_hamiltonian(params, ops), beta)
        for i, j in ((1, 3), (2, 5), (1, 6)):
            worst = max(
                worst,
                abs(
                    wick.density_density(cov, i, j)
                    - exactfock.density_density_exact(rho, ops, i, j)
                ),
            )
    return {"name": "oracle_density_density", "passed": bool(worst < 1e-10), "max_diff": worst}


def check_boundary_cancellation(level: str, rng: np.random.Generator) -> dict:
    sizes = (4, 50) if level == "fast" else (4, 50, 500)
    worst_pbc = 0.0
    for L in sizes:
        params = KitaevParams.default_point(L, mu=0.5, alpha=1.5, boundary=Boundary.PERIODIC)
        worst_pbc = max(worst_pbc, float(np.max(np.abs(build_kitaev(params).pairing_matrix()))))
    # anti-periodic block against the boundary-resolved single-sum form
    L = 50
    params = KitaevParams.default_point(L, mu=0.5, alpha=1.5)
    W = build_kitaev(params).pairing_matrix()
    W_red = np.zeros((L, L))
    for i in range(1, L + 1):
        for j in range(1, L - i + 1):
            w = params.delta * float(min(j, L - j)) ** (-params.alpha)
            W_red[i - 1, i + j - 1] += w
            W_red[i + j - 1, i - 1] -= w
    worst_abc = float(np.max(np.abs(W - W_red)))
    return {
        "name": "boundary_cancellation",
        "passed": bool(worst_pbc == 0.0 and worst_abc < 1e-12),
        "max_pbc_pairing_entry": worst_pbc,
        "max_abc_reduced_form_diff": worst_abc,
    }


def check_lemma1_residual(level: str, rng: np.random.Generator) -> dict:
    L = 4
    ops = exactfock.build_fock_operators(L)
    params = KitaevParams.default_point(L, mu=0.5, alpha=1.5)
    H = exactfock.kitaev_fock_hamiltonian(params, ops)
    betas = (1.0,) if level == "fast" else (0.5, 1.0, 2.0)
    n_pairs = 3 if level == "fast" else 10
    worst = 0.0
    records = []
    for beta in betas:
        for k in range(n_pairs):
            A = exactfock.random_odd_operator(ops, rng, label=f"A{k}")
            B = exactfock.random_odd_operator(ops, rng, label=f"B{k}")
            res = exactfock.verify_integral_representation(H, A, B, beta)
            worst = max(worst, res.residual)
            records.append(
                {
                    "L": L,
                    "beta": beta,
                    "pair": [A.label, B.label],
                    "lhs": [res.lhs.real, res.lhs.imag],
                    "rhs": [res.rhs.real, res.rhs.imag],
                    "residual": res.residual,
                }
            )
    return {
        "name": "lemma1_integral_representation",
        "passed": bool(worst < 1e-8),
        "max_residual": worst,
        "records": records,
    }


def check_fermi_identity(level: str, rng: np.random.Generator) -> dict:
    betas = (1.0,) if level == "fast" else (0.1, 1.0, 10.0)
    omegas = (-2.0, 0.0, 2.0) if level == "fast" else tuple(float(w) for w in range(-5, 6))
    worst = 0.0
    for beta in betas:
        for omega in omegas:
            worst = max(worst, bounds.fermi_identity_residual(beta, omega))
    return {"name": "fermi_factor_identity", "passed": bool(worst < 1e-8), "max_residual": worst}


def check_fourier_cross(level: str, rng: np.random.Generator) -> dict:
    L = 128 if level == "fast" else 512
    model_ = fourier.long_range_hopping_model(L, alpha=3.0, t=1.0, mu=0.5)
    fast = fourier.fourier_correlations(model_, beta=1.0)
    cov = covariance(diagonalize(fourier.circulant_hamiltonian(model_)), 1.0)
    dense = np.array([cov.M[2 * 0 + 1, 2 * l] for l in range(L)])
    diff = float(np.max(np.abs(fast - dense.real)))
    rep = fourier.envelope_report(model_, beta=1.0, window=(10, min(200, L // 2)))
    return {
        "name": "fourier_cross_check",
        "passed": bool(diff < 1e-8 and rep.decays_at_least_as_fast),
        "max_pipeline_diff": diff,
        "fitted_exponent": rep.fitted_exponent,
        "envelope_exponent": rep.envelope_exponent,
    }


def check_high_temp_richardson(level: str, rng: np.random.Generator) -> dict:
    L = 6 if level == "fast" else 8
    ops = exactfock.build_fock_operators(L)
    params = KitaevParams(L=L, t=0.0, mu=0.0, delta=1.0, alpha=1.5)
    H = exactfock.kitaev_fock_hamiltonian(params, ops)
    worst = 0.0
    for j in (2, 3, L // 2 + 1):
        ratios = []
        for beta in (1e-2, 1e-3):
            rho = exactfock.thermal_state(H, beta)
            corr = abs(
                exactfock.expectation(rho, FockProduct(ops[0].matrix, ops[j - 1].matrix))
            )
            first = bounds.high_temp_lower_bound(beta, params.delta, params.alpha, j, L).value
            ratios.append(corr / first)
        extrapolated = (10.0 * ratios[1] - ratios[0]) / 9.0
        worst = max(worst, abs(extrapolated - 1.0))
    return {
        "name": "high_temperature_saturation",
        "passed": bool(worst < 1e-3),
        "max_extrapolated_deviation": worst,
    }


def FockProduct(a: np.ndarray, b: np.ndarray) -> exactfock.FockOperator:
    return exactfock.FockOperator(a @ b, label="a_i a_j")


CHECKS: list[Callable[[str, np.random.Generator], dict]] = [
    check_pfaffian_det_consistency,
    check_fock_anticommutators,
    check_oracle_covariance,
    check_oracle_density_density,
    check_boundary_cancellation,
    check_lemma1_residual,
    check_fermi_identity,
    check_fourier_cross,
    check_high_temp_richardson,
]


def run_checks(level: str = "fast", seed: int = 0) -> dict:
    if level not in ("fast", "full"):
        raise ValueError("level must be 'fast' or 'full'")
    results = []
    t0 = time.time()
    for fn in CHECKS:
        rng = np.random.default_rng(seed)
        start = time.time()
        rec = fn(level, rng)
        rec["seconds"] = round(time.time() - start, 3)
        results.append(rec)
    return {
        "level": level,
        "seed": seed,
        "seconds": round(time.time() - t0, 3),
        "all_passed": all(r["passed"] for r in results),
        "checks": results,
    }
