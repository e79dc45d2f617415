"""Numerically stable normal tail evaluation and the Fisher p-value combiner.

Detection statistics can be standardized scores far beyond 38, where the
plain normal survival function underflows to 0 and its logarithm to -inf.
Everything here is therefore built so callers can stay in log space:
``normal_log_sf`` is finite for every representable input, and the
combiner has an entry point that consumes log p-values directly.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import erfc

from .errors import (
    AlphaRangeError,
    NegativeInputError,
    NonFiniteValueError,
    PValueRangeError,
)

_SQRT2 = math.sqrt(2.0)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

# Above this point the upper tail is evaluated through an asymptotic
# expansion of the reciprocal Mill's ratio instead of erfc.
_TAIL_SWITCH = 8.0

_TINY = np.nextafter(0.0, 1.0)     # smallest positive double
_BELOW_ONE = np.nextafter(1.0, 0.0)


def _scaled_upper_tail(x: np.ndarray) -> np.ndarray:
    """The factor s(x) = x * (1 - Phi(x)) / phi(x) for large positive x.

    Asymptotic series 1 - 1/x^2 + 3/x^4 - 15/x^6 + ...; terms are added
    while they keep shrinking, which for x > 8 reaches full double
    precision well before the series turns divergent.  The true value
    lies in (x^2 / (1 + x^2), 1), the classical Mill's-ratio bracket.
    """
    inv_x2 = 1.0 / (x * x)
    term = np.ones_like(x)
    total = np.ones_like(x)
    prev_mag = np.full_like(x, np.inf)
    active = np.ones(x.shape, dtype=bool)
    for k in range(1, 64):
        term = term * (-(2.0 * k - 1.0)) * inv_x2
        mag = np.abs(term)
        active &= mag < prev_mag
        if not active.any():
            break
        total = np.where(active, total + term, total)
        prev_mag = mag
        if mag[active].max() < 1e-17:
            break
    return total


def _log_sf_nonneg(x: np.ndarray) -> np.ndarray:
    """log(1 - Phi(x)) for x >= 0."""
    out = np.empty_like(x)
    bulk = x <= _TAIL_SWITCH
    if bulk.any():
        out[bulk] = np.log(0.5 * erfc(x[bulk] / _SQRT2))
    tail = ~bulk
    if tail.any():
        xt = x[tail]
        out[tail] = (
            -0.5 * xt * xt - np.log(xt) - _LOG_SQRT_2PI
            + np.log(_scaled_upper_tail(xt))
        )
    return out


def _sf_nonneg(x: np.ndarray) -> np.ndarray:
    """1 - Phi(x) for x >= 0, clamped into (0, 1)."""
    out = np.empty_like(x)
    bulk = x <= _TAIL_SWITCH
    if bulk.any():
        out[bulk] = 0.5 * erfc(x[bulk] / _SQRT2)
    tail = ~bulk
    if tail.any():
        out[tail] = np.exp(_log_sf_nonneg(x[tail]))
    return np.maximum(out, _TINY)


def _validate_finite(x) -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if not np.isfinite(arr).all():
        raise NonFiniteValueError("input must be finite")
    return arr


def normal_sf(x):
    """Upper tail 1 - Phi(x) of the standard normal, always inside (0, 1).

    Relative accuracy is a few ulps for |x| <= 8; beyond that the value
    follows the asymptotic tail evaluation and is clamped away from
    exact 0 and 1.  Accepts scalars or arrays.
    """
    arr = _validate_finite(x)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.empty_like(arr)
    pos = arr >= 0
    if pos.any():
        out[pos] = _sf_nonneg(arr[pos])
    neg = ~pos
    if neg.any():
        out[neg] = np.minimum(1.0 - _sf_nonneg(-arr[neg]), _BELOW_ONE)
    return float(out[0]) if scalar else out


def normal_log_sf(x):
    """log(1 - Phi(x)), finite for every finite x.

    Matches log(normal_sf(x)) to full precision for x <= 8 and switches
    to the Mill's-ratio asymptotic expansion above, so scores in the
    hundreds still produce a usable log tail.  Accepts scalars or arrays.
    """
    arr = _validate_finite(x)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.empty_like(arr)
    pos = arr >= 0
    if pos.any():
        out[pos] = _log_sf_nonneg(arr[pos])
    neg = ~pos
    if neg.any():
        # 1 - Phi(x) = 1 - (1 - Phi(-x)) is close to 1; log1p keeps precision.
        out[neg] = np.log1p(-_sf_nonneg(-arr[neg]))
    return float(out[0]) if scalar else out


def fisher_combine(p_mean: float, p_cov: float) -> float:
    """Fisher combination -2 log(p_mean) - 2 log(p_cov) of two p-values."""
    for name, p in (("p_mean", p_mean), ("p_cov", p_cov)):
        if not (0.0 < p < 1.0):
            raise PValueRangeError(f"{name}={p} not strictly inside (0, 1)")
    return -2.0 * (math.log(p_mean) + math.log(p_cov))


def fisher_combine_log(log_p_mean: float, log_p_cov: float) -> float:
    """Fisher combination from log p-values, immune to p-value underflow.

    Accepts any finite log p <= 0 (log p == -0.0 corresponds to a p-value
    rounded up to 1).
    """
    for name, lp in (("log_p_mean", log_p_mean), ("log_p_cov", log_p_cov)):
        if not (math.isfinite(lp) and lp <= 0.0):
            raise PValueRangeError(f"{name}={lp} is not a finite log p-value")
    return -2.0 * (log_p_mean + log_p_cov)


def chi2_4_sf(t: float) -> float:
    """Survival function exp(-t/2) * (1 + t/2) of the chi-squared(4) law."""
    if not math.isfinite(t):
        raise NonFiniteValueError("t must be finite")
    if t < 0.0:
        raise NegativeInputError(f"t={t} must be nonnegative")
    # Same closed form, evaluated in log space so large t degrades gracefully.
    return math.exp(-0.5 * t + math.log1p(0.5 * t))


def chi2_4_quantile(alpha: float) -> float:
    """The t with chi2_4_sf(t) = alpha, by safeguarded Newton iteration.

    Starts from -2 log(alpha) and keeps a bisection bracket so the
    iteration cannot escape; converges to |sf(t) - alpha| <= 1e-12.
    """
    if not (0.0 < alpha < 1.0):
        raise AlphaRangeError(f"alpha={alpha} not strictly inside (0, 1)")
    lo, hi = 0.0, max(-8.0 * math.log(alpha), 50.0)
    while chi2_4_sf(hi) > alpha:
        hi *= 2.0
    t = min(-2.0 * math.log(alpha), hi)
    for _ in range(200):
        f = chi2_4_sf(t) - alpha
        if f > 0.0:
            lo = t
        else:
            hi = t
        deriv = -0.25 * t * math.exp(-0.5 * t)  # d/dt of the survival
        t_new = t - f / deriv if deriv != 0.0 else 0.5 * (lo + hi)
        if not lo < t_new < hi:
            t_new = 0.5 * (lo + hi)
        converged = abs(t_new - t) <= 1e-13 * max(1.0, t) and abs(f) <= 1e-12
        t = t_new
        if converged:
            break
    return t
