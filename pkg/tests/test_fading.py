import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from scipy import stats

from LEOSM.exceptions import DomainError
from LEOSM.fading import (DopplerParams, FadingParams, apply_csi_error, apply_time_variation, doppler_shift,
                          propagation_delay, sample_channel_matrix, sample_nakagami)

SAMPLES_NR, SAMPLES_NT = 100, 1000  # 1e5 entries per draw


def _power(fp, seed=0):
    h = sample_channel_matrix(fp, SAMPLES_NT, SAMPLES_NR, np.random.default_rng(seed))
    return np.abs(h) ** 2


class TestChannelMatrix:
    def test_shape(self):
        h = sample_channel_matrix(FadingParams(), 4, 2, np.random.default_rng(0))
        assert h.shape == (2, 4)
        assert np.iscomplexobj(h)

    def test_line_of_sight_limit(self):
        assert _power(FadingParams(K=1e9, m=1.0, Omega=1.0)).mean() == pytest.approx(1.0, rel=0.02)

    def test_default_moment(self):
        assert _power(FadingParams(K=1.0, Omega=1.0, sigmaR=1.0)).mean() == pytest.approx(1.5, rel=0.02)

    def test_rayleigh_limit(self):
        assert _power(FadingParams(K=0.0, sigmaR=1.0)).mean() == pytest.approx(2.0, rel=0.02)

    @pytest.mark.parametrize("K", [0.0, 1.0, 10.0])
    @pytest.mark.parametrize("m", [0.8, 1.0, 2.0])
    def test_moment_identity(self, K, m):
        fp = FadingParams(K=K, m=m)
        power = _power(fp, seed=int(10 * K + 10 * m))
        standard_error = power.std() / np.sqrt(power.size)
        assert abs(power.mean() - fp.mean_power) < 4 * standard_error

    def test_uniform_phase(self):
        h = sample_channel_matrix(FadingParams(), SAMPLES_NT, SAMPLES_NR, np.random.default_rng(3))
        resultant = np.abs(np.mean(np.exp(1j * np.angle(h))))
        assert resultant < 0.01

    def test_same_seed_same_matrix(self):
        a = sample_channel_matrix(FadingParams(), 4, 2, np.random.default_rng(11))
        b = sample_channel_matrix(FadingParams(), 4, 2, np.random.default_rng(11))
        assert_array_equal(a, b)

    @pytest.mark.parametrize("nt, nr", [(0, 2), (4, 0)])
    def test_invalid_dimensions(self, nt, nr):
        with pytest.raises(DomainError):
            sample_channel_matrix(FadingParams(), nt, nr, np.random.default_rng(0))

    def test_invalid_nakagami_shape(self):
        with pytest.raises(DomainError):
            FadingParams(m=0.4)


class TestNakagami:
    def test_second_moment(self):
        x = sample_nakagami(0.8, 2.0, 100000, np.random.default_rng(5))
        power = x ** 2
        assert abs(power.mean() - 2.0) < 3 * power.std() / np.sqrt(power.size)

    def test_shape_from_moments(self):
        power = sample_nakagami(2.0, 1.0, 200000, np.random.default_rng(6)) ** 2
        # m = E[X^2]^2 / Var(X^2)
        assert power.mean() ** 2 / power.var() == pytest.approx(2.0, rel=0.03)

    def test_distribution(self):
        x = sample_nakagami(0.8, 1.0, 20000, np.random.default_rng(7))
        assert stats.kstest(x, "nakagami", args=(0.8,)).pvalue > 1e-3


class TestDoppler:
    def test_stationary(self):
        assert doppler_shift(DopplerParams(v=0.0), 28.0, 780.0) == 0.0

    def test_overhead(self):
        assert doppler_shift(DopplerParams(alpha=90.0), 28.0, 780.0) == pytest.approx(0.0, abs=1e-6)

    def test_default_downlink(self):
        assert doppler_shift(DopplerParams(), 28.0, 780.0) == pytest.approx(5.40e5, rel=5e-3)

    def test_propagation_delay(self):
        assert propagation_delay(DopplerParams(D=700.0)) == pytest.approx(2.335e-3, rel=1e-3)
        assert propagation_delay(DopplerParams(D=2.998e5)) == pytest.approx(1.0)


class TestTimeVariation:
    def test_slot_zero(self):
        h = sample_channel_matrix(FadingParams(), 4, 2, np.random.default_rng(0))
        assert_array_equal(apply_time_variation(h, 5.4e5, 28.0, 0, 1e-6 / 3, 1e-3), h)

    def test_quarter_turn(self):
        out = apply_time_variation(np.ones((1, 1), dtype=complex), 100.0, 0.0, 1, 0.0, 2.5e-3)
        assert_allclose(out, [[np.exp(-1j * np.pi / 2)]], atol=1e-12)

    @pytest.mark.parametrize("t", [1, 3, 17])
    def test_magnitudes_preserved(self, t):
        h = sample_channel_matrix(FadingParams(), 4, 2, np.random.default_rng(t))
        out = apply_time_variation(h, 5.4e5, 28.0, t, 1e-6 / 3, 1e-3)
        assert_allclose(np.abs(out), np.abs(h), rtol=1e-12)

    def test_composition(self):
        h = sample_channel_matrix(FadingParams(), 4, 2, np.random.default_rng(1))
        stepwise = apply_time_variation(apply_time_variation(h, 1234.0, 28.0, 2, 0.0, 1e-3), 1234.0, 28.0, 5, 0.0, 1e-3)
        assert_allclose(stepwise, apply_time_variation(h, 1234.0, 28.0, 7, 0.0, 1e-3), rtol=1e-9)


class TestCsiError:
    def test_perfect_estimate(self):
        base = sample_channel_matrix(FadingParams(), 4, 2, np.random.default_rng(0))
        realization = apply_csi_error(base, 0.0, 0.0, np.random.default_rng(1))
        assert_array_equal(realization.hTrue, realization.hEst)
        assert realization.nr == 2 and realization.nt == 4

    def test_pure_error_is_independent(self):
        base = np.full((200, 500), 10.0 + 0j)
        h_true = apply_csi_error(base, 1.0, 1.0, np.random.default_rng(2)).hTrue
        assert abs(h_true.mean()) < 0.02
        assert np.mean(np.abs(h_true) ** 2) == pytest.approx(1.0, rel=0.02)

    def test_mixing_mean(self):
        h_true = apply_csi_error(np.ones((1, 100000)), 1.0, 0.5, np.random.default_rng(3)).hTrue
        assert h_true.mean().real == pytest.approx(0.5, rel=0.02)

    def test_deterministic(self):
        base = np.ones((2, 4))
        a = apply_csi_error(base, 0.2, 0.2, np.random.default_rng(9))
        b = apply_csi_error(base, 0.2, 0.2, np.random.default_rng(9))
        assert_array_equal(a.hTrue, b.hTrue)

    def test_weight_change_keeps_error_draw(self):
        base = sample_channel_matrix(FadingParams(), 4, 2, np.random.default_rng(0))
        error = apply_csi_error(base, 1.0, 1.0, np.random.default_rng(4)).hTrue
        half = apply_csi_error(base, 1.0, 0.5, np.random.default_rng(4)).hTrue
        assert_allclose(half, 0.5 * base + 0.5 * error, rtol=1e-12)

    @pytest.mark.parametrize("e1, e2", [(-0.1, 0.2), (0.2, 1.5)])
    def test_weight_out_of_range(self, e1, e2):
        with pytest.raises(DomainError):
            apply_csi_error(np.ones((2, 2)), e1, e2, np.random.default_rng(0))
