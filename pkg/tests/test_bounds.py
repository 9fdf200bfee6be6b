import math

import numpy as np
import pytest
from scipy.special import zeta as scipy_zeta

from fermicorr import exactfock as ef
from fermicorr.bounds import (
    HighTempTerm,
    HypothesisViolationError,
    LRBoundParams,
    ScheduleViolationError,
    Theorem1Params,
    exclusion_exponent,
    fermi_identity_residual,
    fit_envelope_constants,
    gamma_of,
    generic_high_temp_term,
    high_temp_lower_bound,
    lr_bound_rhs,
    riemann_zeta,
    theorem1_bound,
    velocity_bound,
)
from fermicorr.model import KitaevParams


class TestZeta:
    @pytest.mark.parametrize("s", [1.0001, 1.5, 2.0, 3.0, 4.7, 11.0, 30.0, 90.0])
    def test_matches_reference(self, s):
        assert riemann_zeta(s) == pytest.approx(float(scipy_zeta(s, 1)), rel=1e-12)

    def test_zeta_three(self):
        assert riemann_zeta(3.0) == pytest.approx(1.2020569031595943, abs=1e-12)

    def test_diverges_at_one(self):
        with pytest.raises(ValueError):
            riemann_zeta(1.0)


class TestGammaAndVelocity:
    def test_gamma_values(self):
        assert gamma_of(3.0, 1) == 2.0
        assert gamma_of(4.0, 1) == 1.0

    def test_gamma_boundary_excluded(self):
        with pytest.raises(HypothesisViolationError, match="alpha > 2\\*D"):
            gamma_of(2.0, 1)

    def test_velocity_reference_point(self):
        # 4 e 2 zeta(3) ~ 26.14, below the cap 8 e 2 ~ 43.49
        v = velocity_bound(1.0, 1, 3.0)
        assert v == pytest.approx(8 * math.e * 1.2020569031595943, rel=1e-12)
        assert v == pytest.approx(26.1402, abs=1e-3)
        assert v < 8 * math.e * 2

    def test_velocity_limit_large_alpha(self):
        assert velocity_bound(1.0, 1, 500.0) == pytest.approx(8 * math.e, rel=1e-12)

    @pytest.mark.parametrize("J,D,alpha", [(1.0, 1, 2.1), (0.3, 2, 4.5), (2.0, 1, 10.0)])
    def test_velocity_capped(self, J, D, alpha):
        assert velocity_bound(J, D, alpha) <= 8 * J * math.e * 2**D + 1e-12

    def test_velocity_divergent_argument(self):
        with pytest.raises(HypothesisViolationError, match="diverges"):
            velocity_bound(1.0, 2, 1.5)


class TestEnvelope:
    def test_limit_at_zero_time(self):
        p = LRBoundParams(J=1.0, D=1, alpha=3.0)
        assert lr_bound_rhs(0.0, 5.0, p) == 0.0
        assert lr_bound_rhs(1e-9, 5.0, p) < 1e-20

    def test_monotone_in_time_inside_schedule_region(self):
        p = LRBoundParams(J=1.0, D=1, alpha=3.0)
        l = 4.0
        t_star = (p.gamma * l) ** (1.0 / p.gamma)
        ts = np.linspace(1e-3, 0.99 * t_star, 60)
        vals = [lr_bound_rhs(float(t), l, p) for t in ts]
        assert np.all(np.diff(vals) >= 0)

    def test_algebraic_term_halves_per_doubling(self):
        p = LRBoundParams(J=1.0, D=1, alpha=3.0, c0=0.0, c1=1.0)
        assert lr_bound_rhs(0.5, 20.0, p) == pytest.approx(
            lr_bound_rhs(0.5, 10.0, p) / 2**3, rel=1e-12
        )

    def test_linear_in_prefactors(self):
        base = dict(J=1.0, D=1, alpha=3.0)
        v1 = lr_bound_rhs(0.4, 7.0, LRBoundParams(**base, c0=1.0, c1=0.0))
        v2 = lr_bound_rhs(0.4, 7.0, LRBoundParams(**base, c0=2.0, c1=0.0))
        assert v2 == pytest.approx(2 * v1, rel=1e-12)


class TestTheorem1Bound:
    P = LRBoundParams(J=1.0, D=1, alpha=3.0)
    Q = Theorem1Params(eta=0.1)

    def test_golden_point(self):
        # direct formula evaluation, frozen
        b = theorem1_bound(100.0, 1.0, self.P, self.Q)
        assert b.term1 == pytest.approx(1.2784994397794112e-34, rel=1e-12)
        assert b.term2 == pytest.approx(3.1381892517482115e-08, rel=1e-12)
        assert b.term3 == pytest.approx(0.06005603684094999, rel=1e-12)
        assert b.tau == pytest.approx(0.9868023341469632, rel=1e-12)
        assert b.dominant == "term3"
        assert b.epsilon == pytest.approx(0.7)

    def test_term2_is_a_pure_power_law(self):
        b1 = theorem1_bound(1e3, 1.0, self.P, self.Q)
        b2 = theorem1_bound(1e5, 1.0, self.P, self.Q)
        slope = (math.log(b2.term2) - math.log(b1.term2)) / (math.log(1e5) - math.log(1e3))
        assert slope == pytest.approx(-(1 - b1.epsilon) * 3.0, abs=1e-9)

    def test_algebraic_term_dominates_asymptotically(self):
        b = theorem1_bound(1e8, 1.0, self.P, self.Q)
        assert b.dominant == "term2"
        assert b.total / b.term2 == pytest.approx(1.0, abs=1e-6)

    def test_total_slope_reaches_exclusion_exponent(self):
        # at beta = 0.1 the super-algebraic terms are dead by l = 1e3
        ls = np.geomspace(1e3, 1e6, 40)
        tot = [theorem1_bound(float(l), 0.1, self.P, self.Q).total for l in ls]
        slope = np.polyfit(np.log(ls), np.log(tot), 1)[0]
        assert slope == pytest.approx(-(1 - 0.7) * 3.0, abs=1e-6)

    def test_schedule_violation_raises(self):
        with pytest.raises(ScheduleViolationError, match="t_h"):
            theorem1_bound(1e-3, 1.0, self.P, self.Q)

    def test_eta_out_of_range(self):
        with pytest.raises(HypothesisViolationError, match="eta"):
            theorem1_bound(100.0, 1.0, self.P, Theorem1Params(eta=0.5))


class TestExclusionExponent:
    def test_density_density_tight_at_epsilon_zero(self):
        assert exclusion_exponent(2.0, 0.0, "density_density") == 4.0

    def test_vacuous_at_epsilon_one(self):
        assert exclusion_exponent(2.0, 1.0, "density_density") == 0.0

    def test_odd_pair(self):
        assert exclusion_exponent(3.0, 0.1, "odd_pair") == pytest.approx(2.7)

    def test_epsilon_range(self):
        with pytest.raises(ValueError):
            exclusion_exponent(2.0, 1.5, "odd_pair")


class TestFermiIdentity:
    def test_zero_frequency_exact(self):
        assert fermi_identity_residual(1.0, 0.0) < 1e-12

    def test_grid(self):
        worst = 0.0
        for beta in (0.1, 1.0, 10.0):
            for omega in range(-5, 6):
                worst = max(worst, fermi_identity_residual(beta, float(omega)))
        assert worst < 1e-8

    def test_large_frequency_limit(self):
        # left side tends to 0; the identity still holds numerically
        assert fermi_identity_residual(1.0, 40.0) < 1e-8

    def test_rejects_nonpositive_beta(self):
        with pytest.raises(ValueError):
            fermi_identity_residual(0.0, 1.0)


class TestHighTemperature:
    def test_zero_beta_gives_zero(self):
        assert high_temp_lower_bound(0.0, 1.0, 1.5, 3, 8).value == 0.0

    def test_linear_in_beta_and_delta(self):
        a = high_temp_lower_bound(1e-3, 1.0, 1.5, 3, 8).value
        assert high_temp_lower_bound(2e-3, 1.0, 1.5, 3, 8).value == pytest.approx(2 * a)
        assert high_temp_lower_bound(1e-3, 3.0, 1.5, 3, 8).value == pytest.approx(3 * a)

    def test_distance_uses_chain_metric(self):
        # j=8 on L=8: distance min(7, 1) = 1
        assert high_temp_lower_bound(1.0, 1.0, 2.0, 8, 8).value == pytest.approx(0.25)

    def test_site_range(self):
        with pytest.raises(ValueError):
            high_temp_lower_bound(1.0, 1.0, 1.5, 1, 8)

    def test_flags_model_assumption(self):
        term = high_temp_lower_bound(1e-2, 1.0, 1.5, 3, 8)
        assert isinstance(term, HighTempTerm)
        assert term.assumes_zero_tunneling

    def test_richardson_saturation_against_exact_oracle(self):
        L = 8
        ops = ef.build_fock_operators(L)
        params = KitaevParams(L=L, t=0.0, mu=0.0, delta=1.0, alpha=1.5)
        H = ef.kitaev_fock_hamiltonian(params, ops)
        for j in (2, 3, 5):
            ratios = []
            for beta in (1e-2, 1e-3):
                rho = ef.thermal_state(H, beta)
                corr = abs(
                    ef.expectation(rho, ef.FockOperator(ops[0].matrix @ ops[j - 1].matrix))
                )
                ratios.append(corr / high_temp_lower_bound(beta, 1.0, 1.5, j, L).value)
            extrapolated = (10.0 * ratios[1] - ratios[0]) / 9.0
            assert extrapolated == pytest.approx(1.0, abs=1e-4)
            # deviation shrinks at least linearly in beta
            assert abs(ratios[1] - 1.0) <= abs(ratios[0] - 1.0) / 5.0


class TestGenericHighTemp:
    @staticmethod
    def _toy(L=4, g=0.8):
        ops = ef.build_fock_operators(L)
        eye = np.eye(2**L)
        A = 2 * ops[0].matrix.conj().T @ ops[0].matrix - eye
        B = 2 * ops[2].matrix.conj().T @ ops[2].matrix - eye
        return ops, A, B, g * A @ B

    def test_traceless_required(self):
        ops, A, B, H_ij = self._toy()
        with pytest.raises(ValueError, match="traceless"):
            generic_high_temp_term(np.eye(16), B, H_ij, 1e-3, 2, 4)

    def test_zero_trace_product(self):
        ops, A, B, _ = self._toy()
        assert generic_high_temp_term(A, B, np.zeros((16, 16)), 1e-3, 2, 4) == 0.0

    def test_linear_in_coupling(self):
        ops, A, B, H_ij = self._toy()
        one = generic_high_temp_term(A, B, H_ij, 1e-3, 2, 4)
        assert generic_high_temp_term(A, B, 3 * H_ij, 1e-3, 2, 4) == pytest.approx(3 * one)

    def test_first_order_matches_exact_correlation(self):
        ops, A, B, H_ij = self._toy()
        beta = 1e-3
        rho = ef.thermal_state(ef.FockOperator(H_ij), beta)
        corr = ef.expectation(rho, ef.FockOperator(A @ B)).real - (
            ef.expectation(rho, ef.FockOperator(A)).real
            * ef.expectation(rho, ef.FockOperator(B)).real
        )
        first = generic_high_temp_term(A, B, H_ij, beta, 2, 4)
        # corr = -tanh(beta g) while the first-order term is +beta g
        assert abs(abs(corr) - abs(first)) < 5 * beta**2


def test_fit_envelope_constants_recovers_planted_coefficients():
    p = LRBoundParams(J=1.0, D=1, alpha=3.0)
    c0_true, c1_true = 0.7, 2.5
    planted = LRBoundParams(J=1.0, D=1, alpha=3.0, c0=c0_true, c1=c1_true)
    samples = [
        (t, l, lr_bound_rhs(t, l, planted))
        for t in (0.2, 0.5, 0.9)
        for l in (1.0, 2.0, 4.0)
    ]
    c0, c1 = fit_envelope_constants(samples, p, dominate=False)
    assert c0 == pytest.approx(c0_true, rel=1e-6)
    assert c1 == pytest.approx(c1_true, rel=1e-6)
