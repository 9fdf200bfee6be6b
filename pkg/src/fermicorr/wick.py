"""Pfaffian evaluation of fermionic monomial expectations in Gaussian states.

The expectation of an ordered product of elementary operators in a Gaussian
state equals the Pfaffian of the antisymmetric contraction matrix built from
the covariance matrix; odd products vanish by parity.  Operator order is
respected as given; no implicit normal ordering is performed.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .model import slot
from .thermal import CovarianceMatrix, two_point

__all__ = [
    "MonomialIndex",
    "gamma_matrix",
    "pfaffian",
    "pfaffian_cofactor",
    "wick_expectation",
    "density_density",
]

# ordered list of (site, dagger) pairs; sites are 1-based
MonomialIndex = Sequence[tuple[int, bool]]

ASYMMETRY_TOL = 1e-12
# elimination pivots below this short-circuit to Pf = 0; pure-state
# covariances make many contraction matrices exactly singular
PIVOT_TOL = 1e-14


def gamma_matrix(cov: CovarianceMatrix, mono: MonomialIndex) -> np.ndarray:
    """Contraction matrix: ``<c_a c_b>`` above the diagonal, antisymmetrized."""
    for site, _ in mono:
        if not 1 <= site <= cov.L:
            raise ValueError(f"site {site} out of range 1..{cov.L}")
    idx = np.array([slot(*op) for op in mono], dtype=int)
    sub = cov.M[np.ix_(idx, idx)]
    upper = np.triu(sub, 1)
    return upper - upper.T


def pfaffian(A: np.ndarray, pivot_tol: float = PIVOT_TOL) -> complex:
    """Pfaffian of an even-dimensional antisymmetric matrix.

    Skew-symmetric triangular elimination with partial pivoting, tracking the
    permutation sign (the sign is the point; squaring the determinant would
    lose it).  Satisfies ``Pf(A)^2 = det(A)``.
    """
    A = np.asarray(A)
    n, m = A.shape if A.ndim == 2 else (-1, -1)
    if n != m:
        raise ValueError("matrix must be square")
    if n % 2 != 0:
        raise ValueError(f"Pfaffian needs even dimension, got {n}")
    if n == 0:
        return 1.0 + 0.0j
    if np.max(np.abs(A + A.T)) >= ASYMMETRY_TOL:
        raise ValueError("matrix is not antisymmetric within tolerance")

    A = A.astype(complex, copy=True)
    pf = 1.0 + 0.0j
    for k in range(0, n - 1, 2):
        # pivot the largest entry of column k below the diagonal to row k+1
        kp = k + 1 + int(np.argmax(np.abs(A[k + 1 :, k])))
        if kp != k + 1:
            A[[k + 1, kp], k:] = A[[kp, k + 1], k:]
            A[k:, [k + 1, kp]] = A[k:, [kp, k + 1]]
            pf = -pf
        pivot = A[k + 1, k]
        if abs(pivot) < pivot_tol:
            return 0.0 + 0.0j
        pf *= A[k, k + 1]
        if k + 2 < n:
            tau = A[k, k + 2 :] / A[k, k + 1]
            col = A[k + 2 :, k + 1]
            A[k + 2 :, k + 2 :] += np.outer(tau, col)
            A[k + 2 :, k + 2 :] -= np.outer(col, tau)
    return complex(pf)


def pfaffian_cofactor(A: np.ndarray) -> complex:
    """Pfaffian by recursive expansion along the first row; exponential cost,
    used as an independent sign oracle on small matrices."""
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    if n % 2 != 0:
        raise ValueError(f"Pfaffian needs even dimension, got {n}")
    if n == 0:
        return 1.0 + 0.0j
    total = 0.0 + 0.0j
    for j in range(1, n):
        keep = [r for r in range(n) if r not in (0, j)]
        minor = A[np.ix_(keep, keep)]
        total += (-1.0) ** (j - 1) * A[0, j] * pfaffian_cofactor(minor)
    return complex(total)


def wick_expectation(cov: CovarianceMatrix, mono: MonomialIndex) -> complex:
    """Thermal expectation of an ordered product of elementary operators."""
    m = len(mono)
    if m % 2 == 1:
        # parity super-selection: odd operators have vanishing expectation
        for site, _ in mono:
            if not 1 <= site <= cov.L:
                raise ValueError(f"site {site} out of range 1..{cov.L}")
        return 0.0 + 0.0j
    if m == 0:
        return 1.0 + 0.0j
    return pfaffian(gamma_matrix(cov, mono))


def density_density(cov: CovarianceMatrix, i: int, j: int) -> float:
    """Connected density-density correlation ``corr(n_i, n_j)``.

    Wick's theorem reduces the connected four-point function to
    ``<a_i^dag a_j><a_i a_j^dag> - <a_i^dag a_j^dag><a_i a_j>``.
    """
    if i == j:
        raise ValueError("same-site density variance is not a pair correlation")
    c_dag_a = two_point(cov, (i, True), (j, False))
    c_a_dag = two_point(cov, (i, False), (j, True))
    c_dag_dag = two_point(cov, (i, True), (j, True))
    c_a_a = two_point(cov, (i, False), (j, False))
    return float(np.real(c_dag_a * c_a_dag - c_dag_dag * c_a_a))
