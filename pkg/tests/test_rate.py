import numpy as np
import pytest

from risdof.beamforming import LinkDesign, eigenmode_design, mrt
from risdof.channel import LinkBudget, rayleigh_channel
from risdof.numerics import water_filling
from risdof.rate import (NoiseModel, achievable_rate, dbm_to_watts,
                         eigenmode_rate, noise_covariance, per_stream_snr,
                         watts_to_dbm)
from risdof.ris import RisConfig, identity_config


def complex_gaussian(rng, rows, cols):
    return (rng.standard_normal((rows, cols))
            + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2.0)


class TestDbm:
    def test_definitions(self):
        np.testing.assert_allclose(dbm_to_watts(0.0), 1e-3)
        np.testing.assert_allclose(dbm_to_watts(30.0), 1.0)
        np.testing.assert_allclose(dbm_to_watts(-90.0), 1e-12)

    def test_round_trip(self):
        np.testing.assert_allclose(watts_to_dbm(dbm_to_watts(-70.0)), -70.0)

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            dbm_to_watts(float("nan"))


class TestNoiseCovariance:
    def test_no_surface_noise(self):
        model = NoiseModel(user_noise=2e-10, ris_noise=0.0)
        g_ru = rayleigh_channel(4, 16, LinkBudget(28.0), seed=1)
        cov = noise_covariance(4, [g_ru], [identity_config(16)], model)
        np.testing.assert_allclose(cov, 2e-10 * np.eye(4), atol=1e-24)

    def test_no_surfaces(self):
        model = NoiseModel(user_noise=1e-10, ris_noise=1e-12)
        cov = noise_covariance(4, [], [], model)
        np.testing.assert_allclose(cov, 1e-10 * np.eye(4))

    def test_direct_summation_oracle(self):
        rng = np.random.default_rng(5)
        model = NoiseModel(user_noise=1e-10, ris_noise=1e-12)
        g_ru = complex_gaussian(rng, 4, 8)
        cfg = RisConfig(rng.uniform(0, 2 * np.pi, 8), amplification=1.0)
        cov = noise_covariance(4, [g_ru], [cfg], model)
        theta = np.diag(cfg.reflection_coefficients())
        expected = 1e-10 * np.eye(4, dtype=complex)
        scaled = g_ru @ theta
        for a in range(4):
            for b in range(4):
                expected[a, b] += 1e-12 * np.sum(scaled[a] * scaled[b].conj())
        np.testing.assert_allclose(cov, expected, atol=1e-22)

    def test_singular_rejected(self):
        model = NoiseModel(user_noise=0.0, ris_noise=1e-12)
        g_ru = np.zeros((4, 8), dtype=complex)
        g_ru[0, :] = 1.0  # rank-one surface noise cannot cover K=4
        with pytest.raises(ValueError, match="singular"):
            noise_covariance(4, [g_ru], [identity_config(8)], model)


def scalar_design(power=1.0):
    return LinkDesign(precoder=np.eye(1, dtype=complex),
                      combiner=np.eye(1, dtype=complex), stream_count=1,
                      stream_powers=np.array([power]))


class TestAchievableRate:
    def test_zero_channel_zero_rate(self):
        cov = 1e-10 * np.eye(4)
        design = LinkDesign(precoder=np.eye(8, 2, dtype=complex),
                            combiner=np.eye(2, 4, dtype=complex),
                            stream_count=2, stream_powers=np.ones(2))
        result = achievable_rate(np.zeros((4, 8)), design, cov)
        assert result.rate == 0.0
        assert result.effective_rank == 0

    def test_scalar_15_db(self):
        snr = 10 ** 1.5
        h = np.array([[np.sqrt(snr)]], dtype=complex)
        result = achievable_rate(h, scalar_design(), np.eye(1))
        # closed form log2(1 + 10^1.5) = 5.027808 bits/s/Hz
        np.testing.assert_allclose(result.rate, np.log2(1.0 + snr), rtol=1e-12)
        np.testing.assert_allclose(result.rate, 5.0278, atol=5e-5)
        np.testing.assert_allclose(result.per_stream_snr_db[0], 15.0, atol=1e-9)

    def test_two_stream_diagonal_sum(self):
        h = np.diag([np.sqrt(10.0), np.sqrt(3.0)]).astype(complex)
        design = LinkDesign(precoder=np.eye(2, dtype=complex),
                            combiner=np.eye(2, dtype=complex), stream_count=2,
                            stream_powers=np.ones(2))
        result = achievable_rate(h, design, np.eye(2))
        np.testing.assert_allclose(result.rate, np.log2(11) + np.log2(4),
                                   rtol=1e-12)
        np.testing.assert_allclose(result.rate, 5.4594, atol=5e-5)

    def test_diagonal_equals_snr_sum(self):
        rng = np.random.default_rng(7)
        for seed in range(20):
            h = complex_gaussian(np.random.default_rng(seed), 4, 16)
            design = eigenmode_design(h)
            powers = water_filling(np.ones(design.stream_count), 1.0, 0.1)
            design = design.with_powers(powers.per_stream_power)
            cov = 1e-3 * np.eye(4)
            result = achievable_rate(h, design, cov)
            snrs = per_stream_snr(h, design, cov)
            np.testing.assert_allclose(result.rate,
                                       np.sum(np.log2(1 + snrs)), atol=1e-9)

    def test_det_equals_eigen_sum(self):
        rng = np.random.default_rng(11)
        for seed in range(100):
            local = np.random.default_rng(seed)
            h = complex_gaussian(local, 4, 8)
            design = eigenmode_design(h)
            design = design.with_powers(local.uniform(0.1, 1.0, design.stream_count))
            a = complex_gaussian(local, 4, 4)
            cov = 1e-4 * np.eye(4) + 1e-5 * (a @ a.conj().T)
            result = achievable_rate(h, design, cov)
            np.testing.assert_allclose(result.rate, eigenmode_rate(h, design, cov),
                                       atol=1e-9)

    def test_singular_covariance_rejected(self):
        h = np.eye(2, dtype=complex)
        design = LinkDesign(precoder=np.eye(2, dtype=complex),
                            combiner=np.eye(2, dtype=complex), stream_count=2,
                            stream_powers=np.ones(2))
        with pytest.raises(ValueError, match="singular"):
            achievable_rate(h, design, np.zeros((2, 2)))

    def test_monotone_in_noise(self):
        rng = np.random.default_rng(13)
        h = complex_gaussian(rng, 4, 16)
        g_ru = complex_gaussian(rng, 4, 32)
        cfg = identity_config(32)
        design = eigenmode_design(h)
        design = design.with_powers(np.full(design.stream_count,
                                            1.0 / design.stream_count))
        rates_user = []
        for user_dbm in (-90.0, -80.0, -70.0, -60.0):
            model = NoiseModel.from_dbm(user_dbm, -90.0)
            cov = noise_covariance(4, [g_ru], [cfg], model)
            rates_user.append(achievable_rate(h, design, cov).rate)
        assert all(a >= b for a, b in zip(rates_user, rates_user[1:]))
        rates_ris = []
        for ris_dbm in (-120.0, -90.0, -60.0, -30.0):
            model = NoiseModel.from_dbm(-70.0, ris_dbm)
            cov = noise_covariance(4, [g_ru], [cfg], model)
            rates_ris.append(achievable_rate(h, design, cov).rate)
        assert all(a >= b for a, b in zip(rates_ris, rates_ris[1:]))


def test_rate_zero_iff_zero_channel():
    cov = 1e-10 * np.eye(2)
    rng = np.random.default_rng(17)
    h = complex_gaussian(rng, 2, 4)
    design = mrt(h, total_power=1.0)
    assert achievable_rate(h, design, cov).rate > 0.0
