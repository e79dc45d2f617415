"""Covariance-shift statistics over all candidate splits.

The per-split statistic compares the second-moment structure of the two
segments through the kernel ((x_i - x_j) . (x_k - x_l))^2 / 4 averaged
over distinct index tuples: once within the pre-split segment, once within
the post-split segment, and once across.  Its expectation is the squared
Frobenius distance between the two segment covariance matrices.

Evaluated literally the kernel sums are quartic in n.  Expanding them into
sums of Gram entries g_ij and their squares turns every piece into one of
a dozen running quantities of the Gram matrix, so the full curve costs
O(n^2) on top of the O(n^2 p) Gram build.  All twelve pieces are exposed
for testing through :func:`_sweep_terms` because the cancellation-heavy
four-index identities deserve direct verification against brute force.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .data import GramMatrix, StatCurve, as_matrix, gram
from .errors import SampleTooSmallError


@dataclass(frozen=True)
class CovStatResult:
    """Per-split covariance-shift curve (splits 4 .. n-4) and its aggregate."""

    per_tau: StatCurve
    aggregate: float


class _SweepTerms(NamedTuple):
    """Raw index-tuple sums for prefixes of size t+1, t = 0 .. n-1.

    pre1/pre2: sums of g_ij / g_ij^2 over distinct i, j in the prefix;
    suf1/suf2: the same over the suffix; pre3/suf3: sums of g_ij * g_jk
    over three distinct indices; pre4/suf4: sums of g_ij * g_kl over four
    distinct indices; cross1/cross2: plain sums of g_ij / g_ij^2 with i in
    the prefix and j in the suffix; cross3_mid_suf: three-index sums whose
    shared index j sits in the suffix (i, k distinct in the prefix);
    cross3_mid_pre: the mirror image; cross4: i != k in the prefix, j != l
    in the suffix.
    """

    pre1: np.ndarray
    pre2: np.ndarray
    pre3: np.ndarray
    pre4: np.ndarray
    suf1: np.ndarray
    suf2: np.ndarray
    suf3: np.ndarray
    suf4: np.ndarray
    cross1: np.ndarray
    cross2: np.ndarray
    cross3_mid_suf: np.ndarray
    cross3_mid_pre: np.ndarray
    cross4: np.ndarray


def _running_row_sums(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row sums of m restricted to columns j <= t and j > t, per row t."""
    lower = np.diagonal(np.cumsum(m, axis=1)).copy()
    upper = m.sum(axis=1) - lower
    return lower, upper


def _sweep_terms(g: GramMatrix) -> _SweepTerms:
    n = g.shape[0]
    g2 = g * g
    diag = np.diagonal(g).copy()
    diag2 = diag * diag

    col_prefix = np.cumsum(g, axis=0)     # row t: sums of g[:t+1, j]
    col_prefix2 = np.cumsum(g2, axis=0)
    colsum = col_prefix[-1]
    colsum2 = col_prefix2[-1]
    total1 = colsum.sum()
    total2 = colsum2.sum()

    diag_prefix = np.cumsum(diag)
    diag2_prefix = np.cumsum(diag2)

    # Block sums of g / g^2 over the leading (t+1) x (t+1) square.
    idx = np.arange(n - 1)
    off = np.zeros(n)
    off[1:] = col_prefix[idx, idx + 1]
    block1 = np.cumsum(2.0 * off + diag)
    off2 = np.zeros(n)
    off2[1:] = col_prefix2[idx, idx + 1]
    block2 = np.cumsum(2.0 * off2 + diag2)

    band1 = col_prefix.sum(axis=1)        # rows <= t, all columns
    band2 = col_prefix2.sum(axis=1)

    pre1 = block1 - diag_prefix
    pre2 = block2 - diag2_prefix
    suf1 = (total1 - 2.0 * band1 + block1) - (diag_prefix[-1] - diag_prefix)
    suf2 = (total2 - 2.0 * band2 + block2) - (diag2_prefix[-1] - diag2_prefix)
    cross1 = band1 - block1
    cross2 = band2 - block2

    # Three distinct indices sharing the middle one: for each fixed j the
    # two partners contribute (sum_i g_ij)^2 minus the i == k diagonal.
    hinge = (col_prefix - diag[None, :]) ** 2 - col_prefix2 + diag2[None, :]
    pre3, _ = _running_row_sums(hinge)
    del hinge
    suffix_col = colsum[None, :] - col_prefix
    suffix_col2 = colsum2[None, :] - col_prefix2
    hinge = (suffix_col - diag[None, :]) ** 2 - suffix_col2 + diag2[None, :]
    _, suf3 = _running_row_sums(hinge)
    del hinge
    hinge = col_prefix**2 - col_prefix2
    _, cross3_mid_suf = _running_row_sums(hinge)
    del hinge
    hinge = suffix_col**2 - suffix_col2
    cross3_mid_pre, _ = _running_row_sums(hinge)
    del hinge, suffix_col, suffix_col2

    # Four distinct indices, by subtracting every coincidence pattern from
    # the square of the two-index sum.
    pre4 = pre1**2 - 2.0 * pre2 - 4.0 * pre3
    suf4 = suf1**2 - 2.0 * suf2 - 4.0 * suf3
    cross4 = cross1**2 - cross3_mid_suf - cross3_mid_pre - cross2

    return _SweepTerms(
        pre1, pre2, pre3, pre4, suf1, suf2, suf3, suf4,
        cross1, cross2, cross3_mid_suf, cross3_mid_pre, cross4,
    )


def cov_stat_curve(data, g: GramMatrix | None = None) -> CovStatResult:
    """Covariance-shift statistic at every split, plus the weighted aggregate.

    The aggregate sums tau * (n - tau) / n times the per-split value over
    the full range tau = 4 .. n-4.

    Parameters
    ----------
    data : Dataset or (n, p) array-like
        Time-ordered observations, n >= 8.
    g : ndarray, optional
        Precomputed ``gram(data)``; pass it when several statistics share
        one Gram build.
    """
    x = as_matrix(data)
    n = x.shape[0]
    if n < 8:
        raise SampleTooSmallError(f"covariance-shift curve needs n >= 8, got {n}")
    if g is None:
        g = gram(x)

    terms = _sweep_terms(g)
    taus = np.arange(4, n - 3)
    k = taus - 1                           # prefix of tau rows ends at row tau-1
    m1 = taus.astype(np.float64)
    m2 = n - m1
    perm2_pre = m1 * (m1 - 1.0)
    perm3_pre = perm2_pre * (m1 - 2.0)
    perm4_pre = perm3_pre * (m1 - 3.0)
    perm2_suf = m2 * (m2 - 1.0)
    perm3_suf = perm2_suf * (m2 - 2.0)
    perm4_suf = perm3_suf * (m2 - 3.0)

    within_pre = (
        terms.pre2[k] / perm2_pre
        - 2.0 * terms.pre3[k] / perm3_pre
        + terms.pre4[k] / perm4_pre
    )
    within_suf = (
        terms.suf2[k] / perm2_suf
        - 2.0 * terms.suf3[k] / perm3_suf
        + terms.suf4[k] / perm4_suf
    )
    across = (
        terms.cross2[k] / (m1 * m2)
        - terms.cross3_mid_suf[k] / (perm2_pre * m2)
        - terms.cross3_mid_pre[k] / (m1 * perm2_suf)
        + terms.cross4[k] / (perm2_pre * perm2_suf)
    )
    per_tau = within_pre + within_suf - 2.0 * across

    aggregate = float(np.dot(m1 * m2 / n, per_tau))
    return CovStatResult(StatCurve(4, n - 4, per_tau), aggregate)
