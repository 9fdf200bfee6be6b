"""Gaussian thermal states of quadratic Hamiltonians.

Diagonalizes the one-body matrix ``h = U^dag D U`` and fills the covariance
matrix ``M_{jk} = <c_j c_k>`` of the thermal state at inverse temperature
``beta`` (a plain float; ``math.inf`` selects the ground state).

With the ``H = sum c^dag h c`` normalization used throughout, the eigenvalues
of ``h`` come in ``+-eps`` pairs and a normal mode with one-body eigenvalue
``eps`` carries the many-body excitation frequency ``2 eps``; its thermal
occupation is therefore the Fermi factor at that frequency,
``1 / (1 + exp(2 beta eps))``.  Equivalently, ``<c_j c_k^dag>`` is the matrix
function ``(1 + exp(-2 beta h))^(-1)`` of ``h``, which is manifestly
independent of any eigenbasis choice inside degenerate subspaces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import expit

from .model import QuadraticHamiltonian, slot

__all__ = [
    "InverseTemperature",
    "NormalModes",
    "CovarianceMatrix",
    "diagonalize",
    "covariance",
    "covariance_rows",
    "two_point",
    "mode_occupations",
    "pattern_matrix",
    "energy_expectation",
]

# beta is modeled as a plain nonnegative float; math.inf selects the ground
# state.  The alias keeps signatures self-describing.
InverseTemperature = float

HERMITICITY_TOL = 1e-12
# one-body eigenvalues with |eps| below this count as zero modes at beta=inf
ZERO_MODE_TOL = 1e-12


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if math.isnan(beta) or beta < 0.0:
        raise ValueError(f"inverse temperature must be >= 0, got {beta}")
    return beta


@dataclass
class NormalModes:
    """Normal-mode data of a quadratic Hamiltonian: ``h = U^dag D U``.

    Rows of ``U`` are normal-mode coefficient vectors (``b = U c``);
    ``energies`` is ascending and comes in ``+-eps`` pairs.
    """

    U: np.ndarray
    energies: np.ndarray

    @property
    def n_modes(self) -> int:
        return self.energies.size


@dataclass
class CovarianceMatrix:
    """All second moments ``M_{jk} = <c_j c_k>`` over the interleaved basis."""

    M: np.ndarray
    L: int
    beta: float

    def validate(self, atol: float = 1e-10) -> None:
        """Check the algebraic identities every fermionic covariance obeys."""
        P = pattern_matrix(self.L)
        if np.max(np.abs(self.M + self.M.T - P)) > atol:
            raise ValueError("M + M^T does not match the anticommutator pattern")
        sw = _swap_columns_index(self.L)
        # <c_j c_k>* = <c_k^dag c_j^dag>
        N = self.M[np.ix_(sw, sw)].T
        if np.max(np.abs(self.M.conj() - N)) > atol:
            raise ValueError("Hermitian-conjugation consistency violated")
        occ = np.real(self.M[1::2, 0::2].diagonal())
        if np.min(occ) < -atol or np.max(occ) > 1.0 + atol:
            raise ValueError("diagonal occupations leave [0, 1]")


def pattern_matrix(L: int) -> np.ndarray:
    """Scalar anticommutators ``P_{jk} = {c_j, c_k}``: 1 on conjugate pairs."""
    P = np.zeros((2 * L, 2 * L))
    idx = np.arange(2 * L)
    P[idx, idx ^ 1] = 1.0
    return P


def _swap_columns_index(L: int) -> np.ndarray:
    return np.arange(2 * L) ^ 1


def diagonalize(H: QuadraticHamiltonian) -> NormalModes:
    """Dense Hermitian diagonalization of the one-body matrix.

    Deterministic for fixed input (LAPACK ordering: ascending energies, ties
    resolved by the solver's fixed internal order).  Real-symmetric input
    takes the faster real solver path.
    """
    h = H.h
    defect = float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0
    scale = max(1.0, float(np.max(np.abs(h)))) if h.size else 1.0
    if defect > HERMITICITY_TOL * scale:
        raise ValueError(f"one-body matrix is not Hermitian (defect {defect:.3e})")
    if np.iscomplexobj(h) and np.max(np.abs(h.imag)) == 0.0:
        h = h.real
    energies, V = np.linalg.eigh(h)
    return NormalModes(U=V.conj().T, energies=energies)


def mode_occupations(energies: np.ndarray, beta: float) -> np.ndarray:
    """Thermal occupation of each normal mode, ``1/(1 + exp(2 beta eps))``.

    At ``beta = inf`` this is the filling step function, with zero modes
    (``|eps| <= ZERO_MODE_TOL``) assigned 1/2.
    """
    beta = _check_beta(beta)
    energies = np.asarray(energies, dtype=float)
    if math.isinf(beta):
        occ = np.where(energies < 0.0, 1.0, 0.0)
        occ[np.abs(energies) <= ZERO_MODE_TOL] = 0.5
        return occ
    return expit(-2.0 * beta * energies)


def covariance(modes: NormalModes, beta: float) -> CovarianceMatrix:
    """Covariance matrix ``M_{jk} = <c_j c_k>`` of the thermal state."""
    g = 1.0 - mode_occupations(modes.energies, beta)  # <b_p b_p^dag>
    U = modes.U
    M_cd = (U.conj().T * g) @ U  # <c_j c_k^dag> = U^dag diag(g) U
    L = modes.n_modes // 2
    M = M_cd[:, _swap_columns_index(L)]
    return CovarianceMatrix(M=M, L=L, beta=float(beta))


def covariance_rows(modes: NormalModes, beta: float, slots: Sequence[int]) -> np.ndarray:
    """Selected rows of the covariance matrix without forming all of it.

    Row ``j`` holds ``<c_j c_k>`` for all ``k``; costs O(len(slots) * L^2).
    """
    g = 1.0 - mode_occupations(modes.energies, beta)
    U = modes.U
    L = modes.n_modes // 2
    sw = _swap_columns_index(L)
    rows = np.empty((len(slots), 2 * L), dtype=U.dtype)
    for r, j in enumerate(slots):
        rows[r] = ((U[:, j].conj() * g) @ U)[sw]
    return rows


def two_point(cov: CovarianceMatrix, a: tuple[int, bool], b: tuple[int, bool]) -> complex:
    """Thermal correlator ``<c_a c_b>`` of two elementary operators.

    ``a`` and ``b`` are ``(site, dagger)`` pairs with 1-based sites.  Means
    of single odd operators vanish by parity, so this equals the correlation
    coefficient of the pair.
    """
    for site, _ in (a, b):
        if not 1 <= site <= cov.L:
            raise ValueError(f"site {site} out of range 1..{cov.L}")
    return complex(cov.M[slot(*a), slot(*b)])


def energy_expectation(H: QuadraticHamiltonian, cov: CovarianceMatrix) -> float:
    """``<H>`` evaluated from the covariance matrix (includes the offset)."""
    SM = cov.M[_swap_columns_index(cov.L), :]  # <c_j^dag c_k>
    return float(np.real(np.sum(H.h * SM))) + H.energy_offset
