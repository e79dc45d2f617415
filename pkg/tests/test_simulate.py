"""Covariance designs, data generation, seeding, and the experiment harness."""

import numpy as np
import pytest

from cpjoint import (
    BadParamError,
    CovScenario,
    CovSpec,
    ErrorDist,
    NotPSDError,
    NotSymmetricError,
    SimulationModel,
    build_cov,
    cov_sqrt,
    gen_dataset,
    mix_seed,
    run_experiment,
)


def _model(**overrides):
    base = dict(
        n=60, p=6, tau_star=30, delta1=1.0, delta2=2.0,
        cov_scenario=CovScenario.AR1, error_dist=ErrorDist.NORMAL, seed=42,
    )
    base.update(overrides)
    return SimulationModel(**base)


class TestBuildCov:
    def test_ar1_two_by_two(self):
        spec = CovSpec(CovScenario.AR1, 0.3, 1.0)
        assert np.allclose(build_cov(spec, 2), [[1.0, 0.3], [0.3, 1.0]], rtol=0, atol=0)

    def test_ar1_decay(self):
        sigma = build_cov(CovSpec(CovScenario.AR1, 0.5, 1.0), 4)
        assert sigma[0, 3] == pytest.approx(0.125, rel=1e-15)

    def test_block5_single_block(self):
        sigma = build_cov(CovSpec(CovScenario.BLOCK5, 0.5, 1.0), 5)
        expected = np.full((5, 5), 0.5)
        np.fill_diagonal(expected, 1.0)
        assert np.array_equal(sigma, expected)

    def test_block5_remainder_columns_uncorrelated(self):
        sigma = build_cov(CovSpec(CovScenario.BLOCK5, 0.4, 1.0), 7)
        assert np.array_equal(sigma[5:, :5], np.zeros((2, 5)))
        assert np.array_equal(sigma[5:, 5:], np.eye(2))

    def test_scale_applied(self):
        sigma = build_cov(CovSpec(CovScenario.AR1, 0.3, 2.5), 3)
        assert sigma[0, 0] == 2.5

    def test_zero_scale_rejected(self):
        with pytest.raises(BadParamError):
            CovSpec(CovScenario.AR1, 0.3, 0.0)

    @pytest.mark.parametrize("corr", [1.0, -1.0, 1.5])
    def test_correlation_range(self, corr):
        with pytest.raises(BadParamError):
            CovSpec(CovScenario.AR1, corr, 1.0)

    def test_dimension_validated(self):
        with pytest.raises(BadParamError):
            build_cov(CovSpec(CovScenario.AR1, 0.3, 1.0), 0)


class TestCovSqrt:
    def test_identity(self):
        assert np.allclose(cov_sqrt(np.eye(4)), np.eye(4), atol=1e-14)

    def test_diagonal(self):
        root = cov_sqrt(np.diag([4.0, 9.0]))
        assert np.allclose(root, np.diag([2.0, 3.0]), atol=1e-13)

    def test_reconstructs_ar1(self):
        sigma = build_cov(CovSpec(CovScenario.AR1, 0.3, 1.0), 10)
        root = cov_sqrt(sigma)
        err = np.linalg.norm(root @ root - sigma) / np.linalg.norm(sigma)
        assert err <= 1e-9

    def test_spectral_root_is_symmetric(self):
        sigma = build_cov(CovSpec(CovScenario.BLOCK5, 0.3, 1.0), 10)
        root = cov_sqrt(sigma)
        assert np.array_equal(root, root.T)

    def test_cholesky_option(self):
        sigma = build_cov(CovSpec(CovScenario.AR1, 0.4, 2.0), 6)
        root = cov_sqrt(sigma, method="cholesky")
        assert np.allclose(np.triu(root, k=1), 0.0)
        assert np.allclose(root @ root.T, sigma, atol=1e-12)

    def test_not_psd(self):
        with pytest.raises(NotPSDError):
            cov_sqrt(np.array([[1.0, 2.0], [2.0, 1.0]]))
        with pytest.raises(NotPSDError):
            cov_sqrt(np.array([[1.0, 2.0], [2.0, 1.0]]), method="cholesky")

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetricError):
            cov_sqrt(np.array([[1.0, 0.5], [0.2, 1.0]]))

    def test_unknown_method(self):
        with pytest.raises(BadParamError):
            cov_sqrt(np.eye(2), method="qr")


class TestMixSeed:
    def test_frozen_values(self):
        assert mix_seed(0, 0) == 16294208416658607535
        assert mix_seed(0, 1) == 7960286522194355700
        assert mix_seed(12345, 0) == 2454886589211414944
        assert mix_seed(2**64 - 1, 7) == 4638043754431676516

    def test_distinct_streams(self):
        seeds = {mix_seed(7, rep) for rep in range(10_000)}
        assert len(seeds) == 10_000

    def test_stays_in_64_bits(self):
        for rep in range(100):
            assert 0 <= mix_seed(2**63, rep) < 2**64


class TestSimulationModel:
    def test_tau_star_bounds(self):
        with pytest.raises(BadParamError):
            _model(tau_star=0)
        with pytest.raises(BadParamError):
            _model(tau_star=60)

    def test_null_model_allowed(self):
        assert _model(tau_star=None).tau_star is None

    def test_delta2_positive(self):
        with pytest.raises(BadParamError):
            _model(delta2=0.0)


class TestGenDataset:
    def test_deterministic(self):
        a = gen_dataset(_model())
        b = gen_dataset(_model())
        assert np.array_equal(a.values, b.values)

    def test_shape(self):
        data = gen_dataset(_model(n=24, p=5, tau_star=12))
        assert (data.n, data.p) == (24, 5)

    def test_null_model_shares_prechange_rows(self):
        # With one seed, rows before the changepoint match the null draw.
        null = gen_dataset(_model(tau_star=None))
        alt = gen_dataset(_model(tau_star=30))
        assert np.array_equal(null.values[:30], alt.values[:30])
        assert not np.array_equal(null.values[30:], alt.values[30:])

    def test_mean_shift_applied(self):
        big = _model(delta1=50.0, tau_star=30, n=60, p=4)
        data = gen_dataset(big)
        assert data.values[30:].mean() > 10.0

    def test_t9_errors_standardized(self):
        model = _model(n=2000, p=50, tau_star=None, error_dist=ErrorDist.T9_STANDARDIZED,
                       cov_scenario=CovScenario.AR1)
        data = gen_dataset(model)
        # Marginal variance of each coordinate is 1 under the null design.
        assert data.values.var() == pytest.approx(1.0, abs=0.05)

    def test_cholesky_root_option_changes_law_not_shape(self):
        data = gen_dataset(_model(), sqrt_method="cholesky")
        assert (data.n, data.p) == (60, 6)


class TestRunExperiment:
    def test_single_rep_degenerate(self):
        report = run_experiment(_model(), reps=1)
        assert report.rep_count == 1
        assert report.rejection_rate in (0.0, 1.0)
        assert report.mc_stderr == 0.0

    def test_rep_validation(self):
        with pytest.raises(BadParamError):
            run_experiment(_model(), reps=0)

    def test_alpha_validation(self):
        with pytest.raises(BadParamError):
            run_experiment(_model(), reps=2, alpha=1.5)

    def test_stderr_formula(self):
        report = run_experiment(_model(), reps=8)
        rate = report.rejection_rate
        assert report.mc_stderr == pytest.approx(np.sqrt(rate * (1 - rate) / 8))

    def test_localization_error_only_with_changepoint(self):
        with_cp = run_experiment(_model(), reps=3)
        assert with_cp.mean_abs_error is not None
        assert with_cp.tau_hat_samples.shape == (3, 4)
        without = run_experiment(_model(tau_star=None), reps=3)
        assert without.mean_abs_error is None
        assert without.tau_hat_samples is None

    def test_method_breakdown_complete(self):
        report = run_experiment(_model(), reps=4)
        assert set(report.methods) == {"fisher", "bonferroni", "mean_only", "cov_only"}

    def test_power_nondecreasing_in_mean_shift(self):
        rates, errs = [], []
        for i, delta1 in enumerate((0.0, 1.0, 2.0)):
            model = _model(n=100, p=40, tau_star=50, delta1=delta1, delta2=1.0,
                           seed=600 + i)
            report = run_experiment(model, reps=150)
            rates.append(report.rejection_rate)
            errs.append(report.mc_stderr)
        for i in range(2):
            slack = 2.0 * float(np.hypot(errs[i], errs[i + 1]))
            assert rates[i + 1] >= rates[i] - slack

    def test_parallelism_invariance(self):
        serial = run_experiment(_model(), reps=6, parallelism=1)
        parallel = run_experiment(_model(), reps=6, parallelism=3)
        assert serial.rejection_rate == parallel.rejection_rate
        assert np.array_equal(serial.z_mean_samples, parallel.z_mean_samples)
        assert np.array_equal(serial.z_cov_samples, parallel.z_cov_samples)
        assert np.array_equal(serial.t_n_samples, parallel.t_n_samples)
        assert np.array_equal(serial.tau_hat_samples, parallel.tau_hat_samples)
        assert serial.methods == parallel.methods
