"""Dataset validation, Gram matrices, and statistic curves."""

import numpy as np
import pytest

from cpjoint import (
    Dataset,
    NonFiniteValueError,
    StatCurve,
    TooFewObservationsError,
    dataset_from_matrix,
    gram,
)


class TestDatasetFromMatrix:
    def test_boundary_n_accepted(self):
        data = dataset_from_matrix(np.zeros((8, 1)))
        assert data.n == 8
        assert data.p == 1

    def test_too_few_observations(self):
        with pytest.raises(TooFewObservationsError):
            dataset_from_matrix(np.zeros((7, 3)))

    def test_nan_rejected(self):
        values = np.zeros((10, 2))
        values[4, 1] = np.nan
        with pytest.raises(NonFiniteValueError):
            dataset_from_matrix(values)

    def test_inf_rejected(self):
        values = np.zeros((10, 2))
        values[0, 0] = np.inf
        with pytest.raises(NonFiniteValueError):
            dataset_from_matrix(values)

    def test_roundtrip_bit_exact(self):
        rng = np.random.default_rng(1)
        values = rng.standard_normal((12, 5)) * 10.0 ** rng.integers(-200, 200, (12, 5))
        data = dataset_from_matrix(values)
        assert data.values.dtype == np.float64
        assert np.array_equal(data.values, values)

    def test_immutable(self):
        data = dataset_from_matrix(np.zeros((8, 2)))
        with pytest.raises(ValueError):
            data.values[0, 0] = 1.0

    def test_requires_2d(self):
        with pytest.raises(ValueError):
            dataset_from_matrix(np.zeros(10))


class TestGram:
    def test_orthonormal_rows(self):
        x = np.array([[1.0, 0.0], [0.0, 1.0]])
        assert np.array_equal(gram(x), np.eye(2))

    def test_identical_rows(self):
        v = np.array([1.5, -2.0, 0.5])
        x = np.tile(v, (6, 1))
        expected = float(v @ v)
        assert np.array_equal(gram(x), np.full((6, 6), expected))

    def test_matches_per_pair_dots(self):
        rng = np.random.default_rng(2)
        x = rng.standard_normal((6, 3))
        g = gram(x)
        for i in range(6):
            for j in range(6):
                direct = float(np.dot(x[i], x[j]))
                assert abs(g[i, j] - direct) <= 1e-12 * max(abs(direct), 1e-12)

    def test_exactly_symmetric_as_stored(self):
        rng = np.random.default_rng(3)
        g = gram(rng.standard_normal((25, 7)))
        assert np.array_equal(g, g.T)

    def test_diagonal_nonnegative(self):
        rng = np.random.default_rng(4)
        g = gram(rng.standard_normal((15, 4)) * 1e-150)
        assert (np.diagonal(g) >= 0.0).all()

    def test_accepts_dataset(self):
        data = dataset_from_matrix(np.eye(8))
        assert np.array_equal(gram(data), np.eye(8))


class TestStatCurve:
    def test_indexing(self):
        curve = StatCurve(2, 5, np.array([1.0, 2.0, 3.0, 4.0]))
        assert curve.value_at(2) == 1.0
        assert curve.value_at(5) == 4.0
        assert len(curve) == 4
        assert np.array_equal(curve.taus(), [2, 3, 4, 5])

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            StatCurve(2, 5, np.array([1.0, 2.0]))

    def test_non_finite_rejected(self):
        with pytest.raises(NonFiniteValueError):
            StatCurve(1, 2, np.array([1.0, np.inf]))

    def test_out_of_range_lookup(self):
        curve = StatCurve(2, 4, np.zeros(3))
        with pytest.raises(IndexError):
            curve.value_at(5)

    def test_dataset_direct_construction_validates(self):
        with pytest.raises(TooFewObservationsError):
            Dataset(np.zeros((3, 3)))
