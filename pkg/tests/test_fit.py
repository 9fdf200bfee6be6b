import math

import numpy as np
import pytest

from fermicorr.fit import (
    CorrelationProfile,
    InsufficientDataError,
    MAGNITUDE_FLOOR,
    correlation_profile,
    default_window,
    fit_power_law,
    nu_summary,
)
from fermicorr.model import Boundary, KitaevParams, build_kitaev
from fermicorr.thermal import covariance, diagonalize
from fermicorr.wick import density_density


def synthetic_profile(nu, prefactor=1.0, L=800, values=None):
    ls = np.arange(1, L // 2 + 1)
    vals = values if values is not None else prefactor * ls.astype(float) ** (-nu)
    return CorrelationProfile(
        L=L,
        alpha=1.5,
        mu=0.5,
        beta=1.0,
        boundary=Boundary.ANTIPERIODIC,
        distances=ls,
        values=np.asarray(vals, dtype=float),
    )


class TestFitPowerLaw:
    def test_exact_power_law_recovered(self):
        res = fit_power_law(synthetic_profile(3.7, prefactor=0.2))
        assert res.nu == pytest.approx(3.7, abs=1e-10)
        assert res.log_prefactor == pytest.approx(math.log(0.2), abs=1e-9)
        assert res.rms_residual < 1e-12

    def test_floor_points_are_discarded(self):
        prof = synthetic_profile(3.0)
        vals = prof.values.copy()
        below = (prof.distances >= 200) & (prof.distances % 7 == 0)
        vals[below] = math.exp(-33.0)
        corrupted = synthetic_profile(3.0, values=vals)
        res = fit_power_law(corrupted)
        assert res.n_discarded == int(np.sum(below & (prof.distances <= 300)))
        assert res.nu == pytest.approx(3.0, abs=1e-9)

    def test_floor_removal_is_bitwise_identical(self):
        prof = synthetic_profile(4.0)
        vals = prof.values.copy()
        vals[::11] = 1e-16
        noisy = synthetic_profile(4.0, values=vals)
        keep = vals >= MAGNITUDE_FLOOR
        clean = CorrelationProfile(
            L=prof.L,
            alpha=prof.alpha,
            mu=prof.mu,
            beta=prof.beta,
            boundary=prof.boundary,
            distances=prof.distances[keep],
            values=vals[keep],
        )
        a = fit_power_law(noisy)
        b = fit_power_law(clean)
        assert a.nu == b.nu and a.log_prefactor == b.log_prefactor

    def test_multiplicative_noise_estimator_consistency(self):
        rng = np.random.default_rng(6)
        ls = np.arange(1, 401)
        vals = 0.7 * ls.astype(float) ** (-2.8) * (1 + 1e-3 * rng.normal(size=ls.size))
        prof = synthetic_profile(2.8, values=vals, L=800)
        prof.distances = ls
        res = fit_power_law(prof, window=(50, 300))
        assert res.nu == pytest.approx(2.8, abs=0.02)

    def test_insufficient_data(self):
        prof = synthetic_profile(3.0, L=800)
        prof.values[:] = 1e-16
        with pytest.raises(InsufficientDataError):
            fit_power_law(prof)

    def test_disjoint_window(self):
        prof = synthetic_profile(3.0, L=100)
        with pytest.raises(InsufficientDataError, match="window"):
            fit_power_law(prof, window=(200, 300))

    def test_window_clipped_to_profile(self):
        prof = synthetic_profile(3.0, L=500)
        res = fit_power_law(prof, window=(200, 300))
        assert res.window == (200, 250)

    def test_default_windows_follow_protocol(self):
        assert default_window(1.5, 1.0) == (200, 300)
        assert default_window(2.0, 1.0) == (50, 300)
        assert default_window(2.5, math.inf) == (50, 300)
        assert default_window(3.0, 0.1) == (20, 300)


class TestCorrelationProfile:
    def test_infinite_temperature_profile_vanishes(self):
        prof = correlation_profile(KitaevParams.default_point(32, mu=0.5, alpha=1.5), 0.0)
        assert np.max(prof.values) < 1e-14

    def test_translation_invariance(self):
        params = KitaevParams.default_point(64, mu=0.5, alpha=1.5)
        a = correlation_profile(params, 1.0, reference_site=1)
        b = correlation_profile(params, 1.0, reference_site=16)
        np.testing.assert_allclose(a.values, b.values, atol=1e-10)

    def test_reflection_symmetry(self):
        params = KitaevParams.default_point(16, mu=0.7, alpha=1.2)
        cov = covariance(diagonalize(build_kitaev(params)), 0.9)
        for l in (1, 3, 5, 7):
            assert density_density(cov, 1, 1 + l) == pytest.approx(
                density_density(cov, 1, 1 + 16 - l), abs=1e-10
            )

    def test_profile_against_direct_density_density(self):
        params = KitaevParams.default_point(20, mu=0.9, alpha=1.8)
        prof = correlation_profile(params, 1.1)
        cov = covariance(diagonalize(build_kitaev(params)), 1.1)
        for l in (1, 4, 10):
            assert prof.values[l - 1] == pytest.approx(
                abs(density_density(cov, 1, 1 + l)), abs=1e-13
            )

    def test_periodic_boundary_rejected(self):
        params = KitaevParams.default_point(16, boundary=Boundary.PERIODIC)
        with pytest.raises(ValueError, match="anti-periodic"):
            correlation_profile(params, 1.0)

    def test_distances_cover_half_chain(self):
        prof = correlation_profile(KitaevParams.default_point(32), 1.0)
        assert prof.distances[0] == 1 and prof.distances[-1] == 16

    def test_two_sizes_agree_at_short_distance(self):
        a = correlation_profile(KitaevParams.default_point(500, mu=0.5, alpha=1.5), 1.0)
        b = correlation_profile(KitaevParams.default_point(1000, mu=0.5, alpha=1.5), 1.0)
        rel = np.abs(a.values[:100] - b.values[:100]) / np.abs(b.values[:100])
        assert np.max(rel) < 0.01

    def test_finite_temperature_exponent_l500(self):
        # mid-window fit away from the ring midpoint: nu ~ 2 alpha = 3
        prof = correlation_profile(KitaevParams.default_point(500, mu=0.5, alpha=1.5), 1.0)
        res = fit_power_law(prof, window=(50, 150))
        assert res.nu == pytest.approx(3.0, rel=0.05)


class TestNuSummary:
    def test_rows_and_exclusion_column(self):
        grid = [
            (KitaevParams.default_point(500, mu=0.5, alpha=2.5), 1.0),
            (KitaevParams.default_point(500, mu=0.5, alpha=1.5), 1.0),
        ]
        rows = nu_summary(grid, window=(50, 150))
        assert len(rows) == 2
        assert rows[0].excluded_bound == pytest.approx(2 * 0.9 * 2.5)
        assert rows[0].passed is True
        assert rows[1].excluded_bound is None and rows[1].passed is None

    def test_row_failure_recorded_not_raised(self):
        grid = [(KitaevParams.default_point(64, mu=0.5, alpha=1.5), 0.0)]
        rows = nu_summary(grid)  # beta=0 profile is all zeros -> no usable points
        assert rows[0].nu is None
        assert "InsufficientData" in rows[0].error
