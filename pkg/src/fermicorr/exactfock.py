"""Brute-force Fock-space oracle for small chains.

Dense Jordan-Wigner matrices for every creation/annihilation operator, exact
thermal states, exact Heisenberg evolution, and a numerical check of the
integral representation that rewrites ``<A B>`` of odd operators as an
anticommutator average plus a weighted time integral.  Everything here is
O(4^L) and intentionally capped at small L; it exists to validate the
Gaussian pipeline, not to scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import quad_vec

from .model import KitaevParams, QuadraticHamiltonian, chain_distance

__all__ = [
    "FOCK_SITE_CAP",
    "FockOperator",
    "ThermalDensityMatrix",
    "QuadratureSpec",
    "IntegralCheck",
    "QuadratureError",
    "build_fock_operators",
    "parity_operator",
    "kitaev_fock_hamiltonian",
    "fock_from_bdg",
    "thermal_state",
    "expectation",
    "heisenberg_evolve",
    "verify_integral_representation",
    "lr_anticommutator_norm",
    "covariance_from_state",
    "density_density_exact",
    "random_odd_operator",
]

FOCK_SITE_CAP = 10


class QuadratureError(RuntimeError):
    """Raised when an adaptive quadrature cannot certify its tolerance."""


@dataclass
class FockOperator:
    """A dense operator on the 2^L-dimensional Fock space."""

    matrix: np.ndarray
    label: str = ""

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def norm(self) -> float:
        """Operator norm (largest singular value)."""
        return float(np.linalg.norm(self.matrix, 2))

    def dagger(self) -> "FockOperator":
        return FockOperator(self.matrix.conj().T, label=f"({self.label})^dag")


@dataclass
class ThermalDensityMatrix:
    rho: np.ndarray
    beta: float


def build_fock_operators(L: int) -> list[FockOperator]:
    """Annihilation operators a_1..a_L as dense matrices (Jordan-Wigner).

    Site 1 occupies the leftmost tensor factor; in the single-site basis
    {|0>, |1>} the annihilator is [[0, 1], [0, 0]].
    """
    if L > FOCK_SITE_CAP:
        raise ValueError(
            f"refusing L={L}: dense Fock-space operators are capped at L={FOCK_SITE_CAP}"
        )
    if L < 1:
        raise ValueError("need at least one site")
    a = np.array([[0.0, 1.0], [0.0, 0.0]])
    z = np.array([[1.0, 0.0], [0.0, -1.0]])
    eye = np.eye(2)
    ops = []
    for i in range(L):
        m = np.ones((1, 1))
        for k in range(L):
            if k < i:
                m = np.kron(m, z)
            elif k == i:
                m = np.kron(m, a)
            else:
                m = np.kron(m, eye)
        ops.append(FockOperator(m, label=f"a_{i + 1}"))
    return ops


def parity_operator(L: int) -> np.ndarray:
    """(-1)^N in the Jordan-Wigner basis."""
    z = np.array([[1.0, 0.0], [0.0, -1.0]])
    m = np.ones((1, 1))
    for _ in range(L):
        m = np.kron(m, z)
    return m


def _is_odd(A: np.ndarray, P: np.ndarray, tol: float = 1e-10) -> bool:
    return float(np.max(np.abs(P @ A @ P + A))) <= tol * max(1.0, float(np.max(np.abs(A))))


def _is_even(A: np.ndarray, P: np.ndarray, tol: float = 1e-10) -> bool:
    return float(np.max(np.abs(P @ A @ P - A))) <= tol * max(1.0, float(np.max(np.abs(A))))


def kitaev_fock_hamiltonian(
    params: KitaevParams, ops: Optional[Sequence[FockOperator]] = None
) -> FockOperator:
    """The Kitaev chain assembled directly from Fock-space operators.

    Independent of the one-body builder: the hopping, chemical-potential and
    raw long-range pairing sums are applied literally, with the wrap rule
    ``a_{i+L} = sign * a_i``.
    """
    L = params.L
    if ops is None:
        ops = build_fock_operators(L)
    a = [op.matrix for op in ops]
    p = params.boundary.sign
    dim = a[0].shape[0]
    eye = np.eye(dim)

    def wrapped(i: int) -> tuple[np.ndarray, float]:
        """Matrix of a_i for 1-based i possibly beyond L."""
        if i > L:
            return a[i - L - 1], float(p)
        return a[i - 1], 1.0

    H = np.zeros((dim, dim), dtype=complex)
    for i in range(1, L + 1):
        aj, s = wrapped(i + 1)
        hop = a[i - 1].conj().T @ aj * s
        H += -params.t * (hop + hop.conj().T)
        n_i = a[i - 1].conj().T @ a[i - 1]
        H += -params.mu * (n_i - 0.5 * eye)
    if params.delta != 0.0:
        for i in range(1, L + 1):
            for j in range(1, L):
                w = 0.5 * params.delta * chain_distance(j, L) ** (-params.alpha)
                aj, s = wrapped(i + j)
                pair = a[i - 1] @ aj * s
                H += w * (pair + pair.conj().T)
    return FockOperator(H, label=f"kitaev[{params.boundary.value}]")


def fock_from_bdg(H: QuadraticHamiltonian, ops: Sequence[FockOperator]) -> FockOperator:
    """Lift a one-body matrix to the Fock space: sum h_jk c_j^dag c_k + offset."""
    c = []
    for op in ops:
        c.append(op.matrix)
        c.append(op.matrix.conj().T)
    dim = c[0].shape[0]
    out = np.zeros((dim, dim), dtype=complex)
    h = H.h
    for j in range(2 * H.L):
        for k in range(2 * H.L):
            if h[j, k] != 0.0:
                out += h[j, k] * (c[j].conj().T @ c[k])
    out += H.energy_offset * np.eye(dim)
    return FockOperator(out, label="from_bdg")


def thermal_state(H: FockOperator, beta: float) -> ThermalDensityMatrix:
    """``exp(-beta H) / tr(exp(-beta H))``; ``beta = inf`` projects onto the
    ground space (normalized)."""
    if math.isnan(beta) or beta < 0:
        raise ValueError(f"inverse temperature must be >= 0, got {beta}")
    M = H.matrix
    defect = float(np.max(np.abs(M - M.conj().T)))
    if defect > 1e-10 * max(1.0, float(np.max(np.abs(M)))):
        raise ValueError(f"Hamiltonian is not Hermitian (defect {defect:.3e})")
    E, V = np.linalg.eigh(M)
    if math.isinf(beta):
        tol = 1e-10 * max(1.0, abs(E[0]))
        w = (E <= E[0] + tol).astype(float)
    else:
        w = np.exp(-beta * (E - E[0]))
    w /= w.sum()
    rho = (V * w) @ V.conj().T
    return ThermalDensityMatrix(rho=rho, beta=float(beta))


def expectation(rho: ThermalDensityMatrix, O: FockOperator) -> complex:
    """``tr(rho O)``."""
    if rho.rho.shape != O.matrix.shape:
        raise ValueError("dimension mismatch between state and operator")
    return complex(np.einsum("ij,ji->", rho.rho, O.matrix))


def heisenberg_evolve(H: FockOperator, A: FockOperator, t: float) -> FockOperator:
    """``A(t) = exp(iHt) A exp(-iHt)`` via the spectral decomposition of H."""
    E, V = np.linalg.eigh(H.matrix)
    Atil = V.conj().T @ A.matrix @ V
    phase = np.exp(1j * t * (E[:, None] - E[None, :]))
    return FockOperator(V @ (Atil * phase) @ V.conj().T, label=f"{A.label}({t})")


def lr_anticommutator_norm(H: FockOperator, A: FockOperator, B: FockOperator, t: float) -> float:
    """Operator norm of ``{A(t), B}``; the quantity the light-cone envelope bounds."""
    At = heisenberg_evolve(H, A, t).matrix
    anti = At @ B.matrix + B.matrix @ At
    return float(np.linalg.norm(anti, 2))


@dataclass
class QuadratureSpec:
    """Controls for the time integral: absolute target, tail cut level, and
    the open lower endpoint shielding the removable t=0 singularity."""

    abs_tol: float = 1e-10
    tail_tol: float = 1e-12
    t_floor: float = 1e-12
    max_subdivisions: int = 200


@dataclass
class IntegralCheck:
    lhs: complex
    rhs: complex
    residual: float
    quad_error: float
    t_max: float
    tail_bound: float


def verify_integral_representation(
    H: FockOperator,
    A: FockOperator,
    B: FockOperator,
    beta: float,
    quadrature: QuadratureSpec = QuadratureSpec(),
) -> IntegralCheck:
    """Compare ``<A B>`` against its anticommutator-plus-integral form.

    For odd A, B and even H at finite ``beta > 0``,

        <A B> = <{A, B}>/2
                + int_0^inf (i/beta) <{A(t) - A(-t), B}> /
                  (exp(pi t/beta) - exp(-pi t/beta)) dt.

    The integral is truncated where the envelope
    ``4 |A| |B| / (exp(pi t/beta) - exp(-pi t/beta))`` falls below the tail
    tolerance; the discarded tail is itself bounded and reported.
    """
    if not (beta > 0) or math.isinf(beta):
        raise ValueError("the representation requires finite beta > 0")
    L = int(round(math.log2(H.dim)))
    P = parity_operator(L)
    if not _is_even(H.matrix, P):
        raise ValueError("Hamiltonian must be an even operator")
    if not (_is_odd(A.matrix, P) and _is_odd(B.matrix, P)):
        raise ValueError("A and B must be odd operators")

    E, V = np.linalg.eigh(H.matrix)
    w = np.exp(-beta * (E - E[0]))
    w /= w.sum()
    Atil = V.conj().T @ A.matrix @ V
    Btil = V.conj().T @ B.matrix @ V
    dE = E[:, None] - E[None, :]

    AB = Atil @ Btil
    BA = Btil @ Atil
    lhs = complex(np.sum(w * np.diag(AB)))
    anti = complex(np.sum(w * np.diag(AB + BA))) / 2.0

    BtilT = Btil.T

    def integrand(t: float) -> complex:
        # D = A(t) - A(-t) in the eigenbasis
        D = Atil * (2j * np.sin(dE * t))
        diag_DB = np.sum(D * BtilT, axis=1)
        diag_BD = np.sum(Btil * D.T, axis=1)
        weight = math.exp(math.pi * t / beta) - math.exp(-math.pi * t / beta)
        return (1j / beta) * complex(np.sum(w * (diag_DB + diag_BD))) / weight

    c2 = 4.0 * A.norm() * B.norm()
    t_max = (beta / math.pi) * math.asinh(max(c2, quadrature.tail_tol) / quadrature.tail_tol)
    tail_bound = (c2 / math.pi) / (2.0 * math.sinh(math.pi * t_max / beta))

    integral, err = quad_vec(
        integrand,
        quadrature.t_floor,
        t_max,
        epsabs=quadrature.abs_tol,
        epsrel=0.0,
        limit=quadrature.max_subdivisions,
    )
    if err > 100 * quadrature.abs_tol:
        raise QuadratureError(
            f"time integral did not reach tolerance: error estimate {err:.3e}"
        )
    rhs = anti + complex(integral)
    return IntegralCheck(
        lhs=lhs,
        rhs=rhs,
        residual=abs(lhs - rhs),
        quad_error=float(err),
        t_max=t_max,
        tail_bound=tail_bound,
    )


def covariance_from_state(
    rho: ThermalDensityMatrix, ops: Sequence[FockOperator]
) -> np.ndarray:
    """Exact covariance matrix ``<c_j c_k>`` over the interleaved basis."""
    c = []
    for op in ops:
        c.append(op.matrix)
        c.append(op.matrix.conj().T)
    n = len(c)
    M = np.empty((n, n), dtype=complex)
    for j in range(n):
        rcj = rho.rho @ c[j]
        for k in range(n):
            M[j, k] = np.einsum("ij,ji->", rcj, c[k])
    return M


def density_density_exact(
    rho: ThermalDensityMatrix, ops: Sequence[FockOperator], i: int, j: int
) -> float:
    """Connected ``corr(n_i, n_j)`` straight from the density matrix."""
    ni = ops[i - 1].matrix.conj().T @ ops[i - 1].matrix
    nj = ops[j - 1].matrix.conj().T @ ops[j - 1].matrix
    ninj = complex(np.einsum("ij,ji->", rho.rho, ni @ nj))
    mi = complex(np.einsum("ij,ji->", rho.rho, ni))
    mj = complex(np.einsum("ij,ji->", rho.rho, nj))
    return float(np.real(ninj - mi * mj))


def random_odd_operator(
    ops: Sequence[FockOperator],
    rng: np.random.Generator,
    include_cubic: bool = True,
    label: str = "odd",
) -> FockOperator:
    """A random odd operator: linear (and optionally cubic) monomials with
    complex Gaussian coefficients, rescaled to unit operator norm."""
    mats = [op.matrix for op in ops]
    dim = mats[0].shape[0]
    out = np.zeros((dim, dim), dtype=complex)
    for m in mats:
        out += (rng.normal() + 1j * rng.normal()) * m
        out += (rng.normal() + 1j * rng.normal()) * m.conj().T
    if include_cubic and len(mats) >= 3:
        for _ in range(3):
            picks = rng.choice(len(mats), size=3, replace=False)
            term = np.eye(dim, dtype=complex)
            for q in picks:
                term = term @ (mats[q] if rng.random() < 0.5 else mats[q].conj().T)
            out += (rng.normal() + 1j * rng.normal()) * term
    nrm = float(np.linalg.norm(out, 2))
    if nrm > 0:
        out /= nrm
    return FockOperator(out, label=label)
