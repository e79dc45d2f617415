"""Noise-scale estimation and null-variance calibration of the aggregates.

Both aggregate statistics have null variances proportional to powers of
tr(Sigma^2), the squared Frobenius norm of the common covariance.  That
trace is estimated from consecutive observation quadruples, which keeps
the estimator unbiased under the null without ever forming Sigma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .data import as_matrix
from .errors import DegenerateScaleError, SampleTooSmallError

# Null-variance constants: Var(mean aggregate) = MEAN_VAR_COEFF * n^2 * tr(Sigma^2)
# and Var(cov aggregate) = COV_VAR_COEFF * n^2 * tr(Sigma^2)^2, to leading order.
MEAN_VAR_COEFF = (2.0 * math.pi**2 - 18.0) / 3.0
COV_VAR_COEFF = (4.0 * math.pi**2 - 36.0) / 3.0


@dataclass(frozen=True)
class Calibration:
    """Estimated tr(Sigma^2) and the plug-in null variances built from it."""

    trace_hat: float
    sigma1_sq: float
    sigma2_sq: float


def trace_sigma2_hat(data) -> float:
    """Difference-based estimator of tr(Sigma^2).

    Averages ((x_i - x_{i+1}) . (x_{i+2} - x_{i+3}))^2 / 4 over the n - 3
    consecutive quadruples.  Differencing cancels the mean, so the result
    is unbiased for tr(Sigma^2) when the distribution never changes.
    O(np) cost.
    """
    x = as_matrix(data)
    n = x.shape[0]
    if n < 4:
        raise SampleTooSmallError(f"trace estimator needs n >= 4, got {n}")
    steps = x[:-1] - x[1:]
    prods = np.einsum("ij,ij->i", steps[:-2], steps[2:])
    return float(np.sum(prods * prods) / (4.0 * (n - 3)))


def calibrate(trace_hat: float, n: int) -> Calibration:
    """Plug-in null variances for the two aggregate statistics.

    Raises DegenerateScaleError when trace_hat is not strictly positive:
    with no usable variation the z-scores would be fabricated, so the
    pipeline refuses instead of clamping.
    """
    if not (trace_hat > 0.0 and math.isfinite(trace_hat)):
        raise DegenerateScaleError(
            f"estimated tr(Sigma^2) = {trace_hat}; data carry no usable variation"
        )
    n_sq = float(n) * float(n)
    return Calibration(
        trace_hat=trace_hat,
        sigma1_sq=MEAN_VAR_COEFF * n_sq * trace_hat,
        sigma2_sq=COV_VAR_COEFF * n_sq * trace_hat * trace_hat,
    )
