import math

import numpy as np
import pytest

from fermicorr import exactfock
from fermicorr.model import Boundary, KitaevParams, QuadraticHamiltonian, build_kitaev
from fermicorr.thermal import (
    CovarianceMatrix,
    covariance,
    covariance_rows,
    diagonalize,
    energy_expectation,
    mode_occupations,
    pattern_matrix,
    two_point,
)


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (A + A.conj().T) / 2


class TestDiagonalize:
    def test_single_site_chemical_potential(self):
        # -mu (n - 1/2) in canonical form: eigenvalues -mu/2 and +mu/2
        mu = 0.8
        H = QuadraticHamiltonian(L=1, h=np.diag([-mu / 2, mu / 2]).astype(float))
        modes = diagonalize(H)
        np.testing.assert_allclose(modes.energies, [-mu / 2, mu / 2])

    def test_zero_matrix(self):
        H = QuadraticHamiltonian(L=2, h=np.zeros((4, 4)))
        modes = diagonalize(H)
        np.testing.assert_allclose(modes.energies, 0.0)
        np.testing.assert_allclose(modes.U @ modes.U.conj().T, np.eye(4), atol=1e-14)

    def test_reconstruction_of_random_hermitian(self):
        rng = np.random.default_rng(3)
        h = random_hermitian(8, rng)
        modes = diagonalize(QuadraticHamiltonian(L=4, h=h))
        recon = modes.U.conj().T @ np.diag(modes.energies) @ modes.U
        assert np.max(np.abs(recon - h)) < 1e-10
        assert np.max(np.abs(modes.U @ modes.U.conj().T - np.eye(8))) < 1e-12
        assert np.all(np.diff(modes.energies) >= -1e-14)

    def test_kitaev_energies_pair_up(self):
        modes = diagonalize(build_kitaev(KitaevParams.default_point(20, mu=0.7, alpha=1.1)))
        np.testing.assert_allclose(modes.energies, -modes.energies[::-1], atol=1e-10)

    def test_rejects_non_hermitian(self):
        h = np.array([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(ValueError, match="Hermitian"):
            diagonalize(QuadraticHamiltonian(L=1, h=h))


class TestCovariance:
    def test_infinite_temperature_is_maximally_mixed(self):
        modes = diagonalize(build_kitaev(KitaevParams.default_point(5, mu=0.4, alpha=1.0)))
        cov = covariance(modes, 0.0)
        np.testing.assert_allclose(cov.M, pattern_matrix(5) / 2, atol=1e-14)

    def test_ground_state_is_pure(self):
        modes = diagonalize(build_kitaev(KitaevParams.default_point(6, mu=0.5, alpha=1.5)))
        occ = mode_occupations(modes.energies, math.inf)
        assert set(np.unique(occ)) <= {0.0, 1.0}  # gapped away from criticality
        cov = covariance(modes, math.inf)
        # <c c^dag> of a pure Gaussian state is a projector
        Q = cov.M[:, np.arange(12) ^ 1]
        np.testing.assert_allclose(Q @ Q, Q, atol=1e-10)

    def test_matches_exact_fock_oracle_at_L4(self, fock_ops_4):
        params = KitaevParams.default_point(4, mu=0.5, alpha=1.5)
        modes = diagonalize(build_kitaev(params))
        H = exactfock.kitaev_fock_hamiltonian(params, fock_ops_4)
        for beta in (0.0, 0.3, 1.0, 5.0, math.inf):
            cov = covariance(modes, beta)
            cov.validate()
            M_exact = exactfock.covariance_from_state(
                exactfock.thermal_state(H, beta), fock_ops_4
            )
            assert np.max(np.abs(cov.M - M_exact)) < 1e-10, beta

    def test_trace_consistency_at_infinite_temperature(self):
        modes = diagonalize(build_kitaev(KitaevParams.default_point(9, mu=1.3, alpha=0.9)))
        cov = covariance(modes, 0.0)
        occ = np.real(cov.M[1::2, 0::2].diagonal())
        assert occ.sum() == pytest.approx(9 / 2, abs=1e-13)

    def test_occupations_monotone_in_beta(self):
        modes = diagonalize(build_kitaev(KitaevParams.default_point(6, mu=0.5, alpha=1.5)))
        betas = np.linspace(0.0, 4.0, 9)
        occs = np.array([mode_occupations(modes.energies, b) for b in betas])
        pos = modes.energies > 1e-9
        neg = modes.energies < -1e-9
        assert np.all(np.diff(occs[:, pos], axis=0) <= 1e-15)
        assert np.all(np.diff(occs[:, neg], axis=0) >= -1e-15)

    def test_gauge_invariance_under_degenerate_rotation(self):
        # periodic hopping chain: cos(k) spectrum is doubly degenerate
        params = KitaevParams(L=8, t=0.5, mu=0.2, delta=0.0, alpha=1.0, boundary=Boundary.PERIODIC)
        modes = diagonalize(build_kitaev(params))
        M0 = covariance(modes, 1.3).M
        rng = np.random.default_rng(11)
        U = modes.U.astype(complex).copy()
        e = modes.energies
        k = 0
        while k < e.size:
            block = np.nonzero(np.abs(e - e[k]) < 1e-11)[0]
            if block.size > 1:
                A = rng.normal(size=(block.size, block.size)) + 1j * rng.normal(
                    size=(block.size, block.size)
                )
                Q, _ = np.linalg.qr(A)
                U[block, :] = Q @ U[block, :]
            k += block.size
        shuffled = type(modes)(U=U, energies=e)
        M1 = covariance(shuffled, 1.3).M
        assert np.max(np.abs(M0 - M1)) < 1e-9

    def test_energy_expectation_consistency(self, fock_ops_4):
        params = KitaevParams.default_point(4, mu=0.9, alpha=1.2)
        H = build_kitaev(params)
        modes = diagonalize(H)
        for beta in (0.0, 0.7, 2.0):
            cov = covariance(modes, beta)
            from_cov = energy_expectation(H, cov)
            occ = mode_occupations(modes.energies, beta)
            from_modes = float(np.sum(modes.energies * occ)) + H.energy_offset
            assert from_cov == pytest.approx(from_modes, abs=1e-9)
            rho = exactfock.thermal_state(
                exactfock.kitaev_fock_hamiltonian(params, fock_ops_4), beta
            )
            H_exact = exactfock.kitaev_fock_hamiltonian(params, fock_ops_4)
            assert from_cov == pytest.approx(
                float(exactfock.expectation(rho, H_exact).real), abs=1e-9
            )

    def test_covariance_rows_match_full_matrix(self):
        modes = diagonalize(build_kitaev(KitaevParams.default_point(10, mu=0.5, alpha=1.5)))
        cov = covariance(modes, 0.8)
        rows = covariance_rows(modes, 0.8, [0, 1, 7])
        np.testing.assert_allclose(rows, cov.M[[0, 1, 7], :], atol=1e-13)

    def test_rejects_negative_beta(self):
        modes = diagonalize(build_kitaev(KitaevParams.default_point(4)))
        with pytest.raises(ValueError, match=">= 0"):
            covariance(modes, -1.0)


class TestTwoPoint:
    def test_same_site_number_at_infinite_temperature(self):
        cov = covariance(diagonalize(build_kitaev(KitaevParams.default_point(4))), 0.0)
        assert two_point(cov, (2, True), (2, False)) == pytest.approx(0.5)

    def test_pair_moments_vanish_for_particle_conserving_chain(self):
        params = KitaevParams(L=8, t=0.5, mu=0.4, delta=0.0, alpha=1.0)
        cov = covariance(diagonalize(build_kitaev(params)), 1.0)
        for i, j in ((1, 3), (2, 2), (4, 7)):
            assert abs(two_point(cov, (i, False), (j, False))) < 1e-12

    def test_site_out_of_range(self):
        cov = covariance(diagonalize(build_kitaev(KitaevParams.default_point(4))), 1.0)
        with pytest.raises(ValueError, match="out of range"):
            two_point(cov, (5, False), (1, False))
