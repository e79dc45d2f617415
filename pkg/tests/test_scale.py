"""Trace estimator and the plug-in variance calibration."""

import math

import numpy as np
import pytest

from cpjoint import (
    COV_VAR_COEFF,
    DegenerateScaleError,
    MEAN_VAR_COEFF,
    SampleTooSmallError,
    calibrate,
    trace_sigma2_hat,
)
from conftest import rel_err


def test_constant_rows_give_zero():
    assert trace_sigma2_hat(np.tile([3.0, 1.0], (9, 1))) == 0.0


def test_single_quadruple_hand_example():
    x = np.array([[1.0, 0.0], [0.0, 0.0], [1.0, 0.0], [0.0, 0.0]])
    assert trace_sigma2_hat(x) == pytest.approx(0.25, rel=1e-15)


def test_minimum_sample_size():
    with pytest.raises(SampleTooSmallError):
        trace_sigma2_hat(np.zeros((3, 2)))


def test_monte_carlo_unbiased_identity_covariance():
    # tr(Sigma^2) = 20 for Sigma = I in dimension 20.
    n, p, reps = 2000, 20, 200
    rng = np.random.default_rng(321)
    vals = [trace_sigma2_hat(rng.standard_normal((n, p))) for _ in range(reps)]
    assert abs(np.mean(vals) - 20.0) <= 0.05 * 20.0


class TestInvariances:
    def setup_method(self):
        rng = np.random.default_rng(99)
        self.x = rng.standard_normal((30, 6))
        self.base = trace_sigma2_hat(self.x)
        self.rng = rng

    def test_translation(self):
        shift = self.rng.standard_normal(6) * 5.0
        assert rel_err(trace_sigma2_hat(self.x + shift), self.base) <= 1e-8

    def test_scale_equivariance_exact_for_dyadic_factor(self):
        assert trace_sigma2_hat(2.0 * self.x) == 16.0 * self.base

    def test_reversal_invariance(self):
        assert rel_err(trace_sigma2_hat(self.x[::-1]), self.base) <= 1e-10


class TestCalibrate:
    def test_unit_plugin(self):
        calib = calibrate(1.0, 1)
        assert calib.sigma1_sq == pytest.approx((2 * math.pi**2 - 18) / 3, rel=1e-15)
        assert calib.sigma2_sq == pytest.approx((4 * math.pi**2 - 36) / 3, rel=1e-15)
        assert calib.sigma1_sq == pytest.approx(0.579736, abs=1e-6)
        assert calib.sigma2_sq == pytest.approx(1.159472, abs=1e-6)

    def test_closed_form_scaling(self):
        calib = calibrate(4.0, 10)
        assert calib.sigma2_sq == pytest.approx(16.0 * 100.0 * COV_VAR_COEFF, rel=1e-14)
        assert calib.sigma1_sq == pytest.approx(4.0 * 100.0 * MEAN_VAR_COEFF, rel=1e-14)

    @pytest.mark.parametrize("bad", [0.0, -1.0, math.nan])
    def test_degenerate_scale(self, bad):
        with pytest.raises(DegenerateScaleError):
            calibrate(bad, 10)
