"""Quadratic fermionic lattice models.

Builders for the long-range Kitaev chain and for generic two-site coupled
models, both expressed as one-body (Bogoliubov-de Gennes) matrices over the
interleaved operator basis

    c = (a_1, a_1^dag, a_2, a_2^dag, ..., a_L, a_L^dag),

so that ``H = sum_{jk} c_j^dag h_{jk} c_k + energy_offset`` with ``h``
Hermitian.  Sites are 1-based throughout the public API.

Conventions
-----------
* Slot index: ``2*(i-1) + d`` for site ``i``, where ``d=0`` is the
  annihilation slot and ``d=1`` the creation slot (site-local 2x2 blocks
  stay contiguous).
* ``h`` is stored in particle-hole canonical form, ``S h S = -h*`` with
  ``S`` the slot-swap matrix.  Every Hermitian term is split evenly between
  particle and hole slots, which makes the spectrum of ``h`` symmetric about
  zero.
* Pairing coefficients: the coefficient of ``a_i a_j`` with ``i < j`` is the
  one obtained after normal ordering with ``{a_i, a_j} = 0``.  The raw
  pairing double sum visits every pair twice, so this canonical form is what
  entrywise comparisons are made against.  ``pairing_matrix()`` recovers it.
* Closed chains only.  For ``i > L`` the wrap rule is ``a_i -> s * a_{i-L}``
  with ``s = +1`` (periodic) or ``s = -1`` (anti-periodic).  The wrap only
  ever occurs with ``i - L`` in ``1..L-1``, so the ambiguous ``i = 2L`` case
  never arises.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "Boundary",
    "KitaevParams",
    "CouplingTerm",
    "CouplingSpec",
    "QuadraticHamiltonian",
    "DecayReport",
    "UnsupportedModelError",
    "build_kitaev",
    "build_generic",
    "check_decay_precondition",
    "kitaev_terms",
    "kitaev_class_spec",
    "chain_distance",
    "shift_operator",
    "load_kitaev_params",
]

OP_ANNIHILATE = "a"
OP_CREATE = "adag"
_QUADRATIC_TAGS = frozenset({OP_ANNIHILATE, OP_CREATE})


class UnsupportedModelError(ValueError):
    """Raised when a coupling spec falls outside the quadratic model class."""


class Boundary(Enum):
    PERIODIC = "periodic"
    ANTIPERIODIC = "antiperiodic"

    @property
    def sign(self) -> int:
        """Wrap sign ``s`` in ``a_{L+r} = s * a_r``."""
        return 1 if self is Boundary.PERIODIC else -1


def chain_distance(j: int, L: int) -> int:
    """Distance ``d_j = min(j, L - j)`` on the closed chain of length L."""
    return min(j, L - j)


def slot(i: int, dagger: bool) -> int:
    """Interleaved-basis index of ``a_i`` (``dagger=False``) or ``a_i^dag``."""
    return 2 * (i - 1) + (1 if dagger else 0)


@dataclass(frozen=True)
class KitaevParams:
    """Parameters of the long-range pairing Kitaev chain.

    ``t`` is the nearest-neighbor tunneling rate, ``mu`` the chemical
    potential entering through ``-mu * (n_i - 1/2)``, ``delta`` the pairing
    strength and ``alpha`` the power with which the pairing decays with the
    chain distance.
    """

    L: int
    t: float
    mu: float
    delta: float
    alpha: float
    boundary: Boundary = Boundary.ANTIPERIODIC

    def __post_init__(self) -> None:
        if self.L < 2:
            raise ValueError(f"need at least two sites, got L={self.L}")
        if self.alpha <= 0:
            raise ValueError(f"decay exponent must be positive, got alpha={self.alpha}")

    @classmethod
    def default_point(
        cls,
        L: int,
        mu: float = 0.5,
        alpha: float = 1.0,
        boundary: Boundary = Boundary.ANTIPERIODIC,
    ) -> "KitaevParams":
        """The standard parameter point ``delta = 2 t = 1``."""
        return cls(L=L, t=0.5, mu=mu, delta=1.0, alpha=alpha, boundary=boundary)


@dataclass(frozen=True)
class CouplingTerm:
    """One two-site coupling ``strength * V_i V_j`` with ``V`` in {a, adag}."""

    kappa: str
    i: int
    j: int
    strength: complex
    op_i: str = OP_CREATE
    op_j: str = OP_ANNIHILATE

    def __post_init__(self) -> None:
        if self.i == self.j:
            raise ValueError(f"two-site terms need i != j, got i = j = {self.i}")
        if self.i < 1 or self.j < 1:
            raise ValueError("sites are 1-based")


@dataclass(frozen=True)
class CouplingSpec:
    """A two-site interaction model with an algebraic decay budget.

    ``J`` and ``alpha`` describe the claimed coupling envelope
    ``J * d(i,j)^(-alpha)`` and ``D`` the lattice dimension.  ``L`` is the
    number of sites of a closed chain; when set, pair distances are measured
    on the ring, otherwise as ``|i - j|``.
    """

    terms: tuple[CouplingTerm, ...]
    J: float
    alpha: float
    D: int = 1
    L: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(self.terms))
        if self.D < 1:
            raise ValueError("lattice dimension must be >= 1")

    def n_sites(self) -> int:
        if self.L is not None:
            return self.L
        return max((max(t.i, t.j) for t in self.terms), default=0)

    def pair_distance(self, i: int, j: int) -> int:
        d = abs(i - j)
        if self.L is not None:
            d = min(d, self.L - d)
        return d


@dataclass
class QuadraticHamiltonian:
    """A quadratic Hamiltonian as a 2L x 2L Hermitian one-body matrix.

    ``H = sum c^dag h c + energy_offset`` over the interleaved basis.
    ``constant_shift`` records the scalar separating the model's stated form
    from plain normal ordering (``+mu*L/2`` for the Kitaev chain's
    ``-mu*(n_i - 1/2)`` convention); it plays no role in correlations.
    """

    L: int
    h: np.ndarray
    metadata: str = ""
    energy_offset: float = 0.0
    constant_shift: float = 0.0

    def __post_init__(self) -> None:
        expected = (2 * self.L, 2 * self.L)
        if self.h.shape != expected:
            raise ValueError(f"h must be {expected}, got {self.h.shape}")

    def hopping_matrix(self) -> np.ndarray:
        """L x L coefficients T with the a^dag a part equal to sum T_ij a_i^dag a_j."""
        return 2.0 * self.h[0::2, 0::2]

    def pairing_matrix(self) -> np.ndarray:
        """Antisymmetric L x L matrix W with the pairing part sum_{i<j} W_ij a_i a_j + h.c."""
        return 2.0 * self.h[1::2, 0::2]

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.h - self.h.conj().T)))


def _assemble_bdg(T: np.ndarray, W: np.ndarray) -> np.ndarray:
    """Canonical BdG matrix from hopping coefficients T (Hermitian) and the
    antisymmetric pairing coefficient matrix W (coefficient of a_i a_j)."""
    L = T.shape[0]
    dtype = np.promote_types(T.dtype, W.dtype)
    dtype = np.promote_types(dtype, np.float64)
    h = np.zeros((2 * L, 2 * L), dtype=dtype)
    h[0::2, 0::2] = T / 2.0
    h[1::2, 1::2] = -T.T / 2.0
    h[1::2, 0::2] = W / 2.0
    h[0::2, 1::2] = -W.conj() / 2.0
    # exact Hermitian symmetrization; assembly is already Hermitian up to
    # floating-point representation of the inputs
    h = (h + h.conj().T) / 2.0
    return h


def build_kitaev(params: KitaevParams) -> QuadraticHamiltonian:
    """BdG matrix of the long-range Kitaev chain.

    The pairing block is accumulated from the literal double sum over
    ``(i, j)`` with the wrap rule applied, not from its boundary-resolved
    single-sum form, so the periodic-boundary cancellation is an outcome of
    the construction rather than an input.
    """
    L, t, mu, delta, alpha = params.L, params.t, params.mu, params.delta, params.alpha
    p = params.boundary.sign

    T = np.zeros((L, L))
    np.fill_diagonal(T, -mu)
    idx = np.arange(L - 1)
    T[idx, idx + 1] += -t
    T[idx + 1, idx] += -t
    T[L - 1, 0] += -t * p
    T[0, L - 1] += -t * p

    W = np.zeros((L, L))
    if delta != 0.0:
        i = np.arange(L)
        for j in range(1, L):
            w = 0.5 * delta * chain_distance(j, L) ** (-alpha)
            v = i + j
            wrap = v >= L
            v = np.where(wrap, v - L, v)
            x = np.where(wrap, p * w, w)
            W[i, v] += x
            W[v, i] -= x

    h = _assemble_bdg(T, W)
    meta = (
        f"kitaev(L={L}, t={t}, mu={mu}, delta={delta}, alpha={alpha}, "
        f"boundary={params.boundary.value})"
    )
    return QuadraticHamiltonian(
        L=L, h=h, metadata=meta, energy_offset=0.0, constant_shift=mu * L / 2.0
    )


def build_generic(spec: CouplingSpec) -> QuadraticHamiltonian:
    """Assemble the BdG matrix of an explicit two-site term list.

    Terms are taken literally; the list must be closed under Hermitian
    conjugation (supply ``w a_i^dag a_j`` together with ``w* a_j^dag a_i``).
    Only degree-1 operator tags are accepted.
    """
    for term in spec.terms:
        if term.op_i not in _QUADRATIC_TAGS or term.op_j not in _QUADRATIC_TAGS:
            raise UnsupportedModelError(
                f"non-quadratic operator tag in term {term.kappa!r}: "
                f"({term.op_i!r}, {term.op_j!r}); supported tags are 'a' and 'adag'"
            )
    L = spec.n_sites()
    if L < 1:
        return QuadraticHamiltonian(L=0, h=np.zeros((0, 0)), metadata="generic(empty)")

    h = np.zeros((2 * L, 2 * L), dtype=complex)
    for term in spec.terms:
        if term.i > L or term.j > L:
            raise ValueError(f"term {term.kappa!r} references a site beyond L={L}")
        mu_ = slot(term.i, term.op_i == OP_CREATE)
        nu_ = slot(term.j, term.op_j == OP_CREATE)
        s = complex(term.strength)
        # s c_mu c_nu = (s/2)(c_mu c_nu - c_nu c_mu) for disjoint sites
        h[mu_ ^ 1, nu_] += s / 2.0
        h[nu_ ^ 1, mu_] += -s / 2.0

    defect = float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0
    scale = max(1.0, float(np.max(np.abs(h)))) if h.size else 1.0
    if defect > 1e-9 * scale:
        raise ValueError(
            "term list is not closed under Hermitian conjugation "
            f"(defect {defect:.3e}); supply conjugate partners explicitly"
        )
    h = (h + h.conj().T) / 2.0
    if np.max(np.abs(h.imag)) == 0.0:
        h = h.real
    return QuadraticHamiltonian(L=L, h=h, metadata=f"generic({len(spec.terms)} terms)")


@dataclass
class DecayReport:
    """Result of checking the algebraic-decay coupling condition."""

    satisfied: bool
    worst_pair: Optional[tuple[int, int]]
    worst_ratio: float
    required_alpha_margin: float
    theorem_hypothesis_met: bool
    n_pairs: int


def check_decay_precondition(spec: CouplingSpec) -> DecayReport:
    """Verify ``sum_kappa |J^(kappa)_{i,j}| <= J d(i,j)^(-alpha)`` pairwise.

    Also reports the margin ``alpha - 2 D`` of the decay-exponent hypothesis
    the correlation bound needs.  Report-only: never raises on violation.
    """
    weights: dict[tuple[int, int], float] = {}
    for term in spec.terms:
        pair = (min(term.i, term.j), max(term.i, term.j))
        weights[pair] = weights.get(pair, 0.0) + abs(term.strength)

    worst_pair = None
    worst_ratio = 0.0
    for pair, w in weights.items():
        d = spec.pair_distance(*pair)
        budget = spec.J * float(d) ** (-spec.alpha)
        ratio = w / budget if budget > 0 else math.inf
        if ratio > worst_ratio:
            worst_ratio = ratio
            worst_pair = pair

    margin = spec.alpha - 2.0 * spec.D
    return DecayReport(
        satisfied=worst_ratio <= 1.0 + 1e-12,
        worst_pair=worst_pair,
        worst_ratio=worst_ratio,
        required_alpha_margin=margin,
        theorem_hypothesis_met=margin > 0.0,
        n_pairs=len(weights),
    )


def kitaev_terms(params: KitaevParams) -> CouplingSpec:
    """Literal term-by-term expansion of the Kitaev chain, wrap signs resolved.

    The list is closed under Hermitian conjugation and suitable for
    ``build_generic``.  The chemical potential is an on-site term and falls
    outside the two-site class, so ``mu`` must be zero here.
    """
    if params.mu != 0.0:
        raise ValueError("two-site expansion requires mu = 0 (on-site term excluded)")
    L, t, delta, alpha = params.L, params.t, params.delta, params.alpha
    p = params.boundary.sign

    terms: list[CouplingTerm] = []
    for i in range(1, L + 1):
        j = i + 1
        s = 1.0
        if j > L:
            j -= L
            s = p
        if t != 0.0:
            terms.append(CouplingTerm("tunneling", i, j, -t * s, OP_CREATE, OP_ANNIHILATE))
            terms.append(CouplingTerm("tunneling", j, i, -t * s, OP_CREATE, OP_ANNIHILATE))
    if delta != 0.0:
        for i in range(1, L + 1):
            for j in range(1, L):
                w = 0.5 * delta * chain_distance(j, L) ** (-alpha)
                v = i + j
                s = 1.0
                if v > L:
                    v -= L
                    s = p
                terms.append(CouplingTerm("pairing", i, v, w * s, OP_ANNIHILATE, OP_ANNIHILATE))
                terms.append(CouplingTerm("pairing", v, i, w * s, OP_CREATE, OP_CREATE))
    return CouplingSpec(
        terms=tuple(terms),
        J=2.0 * max(params.t, params.delta / 2.0),
        alpha=alpha,
        D=1,
        L=L,
    )


def kitaev_class_spec(params: KitaevParams) -> CouplingSpec:
    """Coupling magnitudes of the Kitaev chain, one entry per interaction.

    Each Hermitian interaction (``X + X^dag``) is listed once with the
    magnitude of its coefficient, which is the normalization under which the
    chain satisfies the decay condition with ``J = 2 max(t, delta/2)``.  Not
    an operator expansion; feed ``kitaev_terms`` to ``build_generic`` instead.
    """
    L, t, delta, alpha = params.L, params.t, params.delta, params.alpha
    terms: list[CouplingTerm] = []
    for i in range(1, L + 1):
        for j in range(i + 1, L + 1):
            d = chain_distance(j - i, L)
            if t != 0.0 and d == 1:
                terms.append(CouplingTerm("tunneling", i, j, -t, OP_CREATE, OP_ANNIHILATE))
            if delta != 0.0:
                w = 0.5 * delta * float(d) ** (-alpha)
                terms.append(CouplingTerm("pairing", i, j, w, OP_ANNIHILATE, OP_ANNIHILATE))
    return CouplingSpec(
        terms=tuple(terms),
        J=2.0 * max(params.t, params.delta / 2.0),
        alpha=alpha,
        D=1,
        L=L,
    )


def shift_operator(L: int, boundary: Boundary) -> np.ndarray:
    """Signed one-site shift on the interleaved basis (a_i -> a_{i+1})."""
    S = np.zeros((2 * L, 2 * L))
    for i in range(1, L):
        for d in (False, True):
            S[slot(i + 1, d), slot(i, d)] = 1.0
    for d in (False, True):
        S[slot(1, d), slot(L, d)] = boundary.sign
    return S


def load_kitaev_params(path: str) -> KitaevParams:
    """Read model parameters from a JSON file with keys L, t, mu, delta, alpha, boundary."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    return kitaev_params_from_dict(raw)


def kitaev_params_from_dict(raw: dict) -> KitaevParams:
    boundary = raw.get("boundary", "antiperiodic")
    if isinstance(boundary, str):
        boundary = Boundary(boundary.lower())
    return KitaevParams(
        L=int(raw["L"]),
        t=float(raw["t"]),
        mu=float(raw["mu"]),
        delta=float(raw["delta"]),
        alpha=float(raw["alpha"]),
        boundary=boundary,
    )
