"""Observation matrices, Gram matrices, and per-split statistic curves."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteValueError, TooFewObservationsError

# Smallest usable sample: both statistic curves and the consecutive-difference
# trace estimator need at least 8 rows.
MIN_OBSERVATIONS = 8

#: Gram matrices are plain symmetric ndarrays; the alias only documents intent.
GramMatrix = np.ndarray


@dataclass(frozen=True)
class Dataset:
    """A validated n x p observation matrix, one row per time-ordered observation.

    Instances are immutable: the stored array is marked read-only so a
    Dataset can be shared across threads without copying.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2:
            raise ValueError(f"expected a 2-d matrix, got ndim={values.ndim}")
        if not np.isfinite(values).all():
            raise NonFiniteValueError("observation matrix contains NaN or Inf")
        if values.shape[0] < MIN_OBSERVATIONS:
            raise TooFewObservationsError(
                f"need at least {MIN_OBSERVATIONS} observations, got {values.shape[0]}"
            )
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]


def dataset_from_matrix(values) -> Dataset:
    """Validate an array-like of shape (n, p) and wrap it as a Dataset.

    Pure validation: accepted values are stored bit-for-bit.
    """
    return Dataset(np.asarray(values, dtype=np.float64))


def as_matrix(data) -> np.ndarray:
    """Return the observation matrix behind a Dataset or 2-d array-like."""
    if isinstance(data, Dataset):
        return data.values
    values = np.asarray(data, dtype=np.float64)
    if values.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got ndim={values.ndim}")
    if not np.isfinite(values).all():
        raise NonFiniteValueError("observation matrix contains NaN or Inf")
    return values


def gram(data) -> GramMatrix:
    """Pairwise inner products g[i, j] = x_i . x_j of all observation rows.

    The result is exactly symmetric as stored: the lower triangle is
    computed and mirrored, so g[i, j] == g[j, i] bitwise.  Cost O(n^2 p).
    """
    x = as_matrix(data)
    g = x @ x.T
    lower = np.tril(g)
    return lower + np.tril(g, -1).T


@dataclass(frozen=True)
class StatCurve:
    """Statistic values over an inclusive integer range of candidate splits."""

    tau_min: int
    tau_max: int
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        expected = self.tau_max - self.tau_min + 1
        if values.ndim != 1 or values.shape[0] != expected:
            raise ValueError(
                f"curve over [{self.tau_min}, {self.tau_max}] needs {expected} "
                f"values, got shape {values.shape}"
            )
        if not np.isfinite(values).all():
            raise NonFiniteValueError("statistic curve contains NaN or Inf")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def taus(self) -> np.ndarray:
        """The candidate splits covered by the curve."""
        return np.arange(self.tau_min, self.tau_max + 1)

    def value_at(self, tau: int) -> float:
        """Curve value at split ``tau``."""
        if not self.tau_min <= tau <= self.tau_max:
            raise IndexError(
                f"tau={tau} outside curve range [{self.tau_min}, {self.tau_max}]"
            )
        return float(self.values[tau - self.tau_min])

    def __len__(self) -> int:
        return self.values.shape[0]
