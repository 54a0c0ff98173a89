"""Bin counts, the cyclic band quadratic form and its circulant spectrum.

For M bins with counts y, the form

    H(s) = sum_m sum_{|l| <= s-1} y_m * y_{m+l}     (indices mod M)

is y^T A y for the symmetric band circulant A whose first row has ones at
cyclic offsets -(s-1)..(s-1). Its eigenvalues are Dirichlet kernel values
sin((2s-1) pi m / M) / sin(pi m / M); averaging over s = 1..S gives Fejer
kernel values, which are nonnegative. That is why (1/S) sum_s H(s) can never
fall below S N^2 / M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

import numpy as np

from .core import PointSet, pair_count_fast


@dataclass(frozen=True)
class BinnedCounts:
    m: int
    counts: np.ndarray
    n: int

    def __post_init__(self):
        c = np.asarray(self.counts)
        if c.ndim != 1 or c.size != self.m or self.m < 1:
            raise ValueError("counts must be a vector of length m >= 1")
        if not np.issubdtype(c.dtype, np.integer):
            if not np.all(c == np.floor(c)):
                raise ValueError("counts must be integers")
        c = c.astype(np.int64)
        if np.any(c < 0):
            raise ValueError("counts must be nonnegative")
        if int(c.sum()) != self.n:
            raise ValueError("counts must sum to n")
        c.setflags(write=False)
        object.__setattr__(self, "counts", c)

    @classmethod
    def from_counts(cls, counts: Sequence[int]) -> "BinnedCounts":
        c = np.asarray(counts, dtype=np.int64)
        return cls(m=int(c.size), counts=c, n=int(c.sum()))


@dataclass(frozen=True)
class SpectralReport:
    m: int
    order: int
    kind: Literal["dirichlet", "fejer"]
    eigenvalues: np.ndarray


def bin_index(points: np.ndarray, m: int) -> np.ndarray:
    """Index k with k/m <= x < (k+1)/m, exact even where x*m rounds."""
    x = np.asarray(points, dtype=np.float64)
    k = np.floor(x * m).astype(np.int64)
    k = np.clip(k, 0, m - 1)
    scaled = x * m
    # only values within rounding distance of a bin edge can be misplaced
    suspect = np.nonzero(np.abs(scaled - np.rint(scaled)) < 1e-6 * max(1.0, m))[0]
    for i in suspect:
        exact = Fraction(float(x[i])) * m
        k[i] = min(m - 1, math.floor(exact))
    return k


def bin_counts(ps: PointSet, m: int) -> BinnedCounts:
    if int(m) != m or m < 1:
        raise ValueError(f"number of bins must be a positive integer, got {m!r}")
    m = int(m)
    counts = np.bincount(bin_index(ps.points, m), minlength=m).astype(np.int64)
    return BinnedCounts(m=m, counts=counts, n=ps.n)


def _check_band(m_bins: int, s: int) -> None:
    if int(s) != s or s < 1:
        raise ValueError(f"s must be a positive integer, got {s!r}")
    if 2 * s - 1 > m_bins:
        raise ValueError(f"2s - 1 = {2 * s - 1} exceeds the number of bins M = {m_bins}; the band would wrap onto itself")


def quadratic_form_h(bc: BinnedCounts, s: int) -> float:
    _check_band(bc.m, s)
    y = bc.counts
    total = int(y @ y)
    for lag in range(1, s):
        # offsets +lag and -lag give the same sum
        total += 2 * int(y @ np.roll(y, -lag))
    return float(total)


def quadratic_form_h_spectral(bc: BinnedCounts, s: int) -> float:
    """H(s) through the eigen-expansion (1/M) sum_m lambda_m |DFT(y)_m|^2."""
    _check_band(bc.m, s)
    power = np.abs(np.fft.fft(bc.counts.astype(np.float64))) ** 2
    lam = dirichlet_spectrum(bc.m, s).eigenvalues
    return float(np.dot(lam, power) / bc.m)


def dirichlet_eigenvalue(m_bins: int, s: int, m: int) -> float:
    if not 0 <= m < m_bins:
        raise ValueError("m must lie in [0, m_bins)")
    if m == 0:
        return float(2 * s - 1)
    x = math.pi * m / m_bins
    return math.sin((2 * s - 1) * x) / math.sin(x)


def dirichlet_eigenvalue_sum(m_bins: int, s: int, m: int) -> float:
    """Same value as :func:`dirichlet_eigenvalue`, summed term by term."""
    lags = np.arange(-s + 1, s)
    return float(np.sum(np.exp(2j * np.pi * m * lags / m_bins)).real)


def dirichlet_spectrum(m_bins: int, s: int) -> SpectralReport:
    if int(s) != s or s < 1:
        raise ValueError(f"s must be a positive integer, got {s!r}")
    lam = np.empty(m_bins)
    lam[0] = 2 * s - 1
    x = np.pi * np.arange(1, m_bins) / m_bins
    lam[1:] = np.sin((2 * s - 1) * x) / np.sin(x)
    return SpectralReport(m=m_bins, order=s, kind="dirichlet", eigenvalues=lam)


def _check_fejer(m_bins: int, cap_s: int) -> None:
    if int(cap_s) != cap_s or cap_s < 1:
        raise ValueError(f"S must be a positive integer, got {cap_s!r}")
    if not 2 * cap_s < m_bins:
        raise ValueError(f"need 2S < M, got S = {cap_s}, M = {m_bins}")


def fejer_spectrum(m_bins: int, cap_s: int) -> SpectralReport:
    """Average of the Dirichlet spectra for s = 1..S."""
    _check_fejer(m_bins, cap_s)
    # lambda_m == lambda_{M-m}; evaluate m <= M/2 and mirror
    half = m_bins // 2
    x = np.pi * np.arange(1, half + 1) / m_bins
    odd = (2 * np.arange(1, cap_s + 1) - 1)[:, None]
    lam = np.empty(m_bins)
    lam[1:half + 1] = (np.sin(odd * x) / np.sin(x)).sum(axis=0) / cap_s
    lam[half + 1:] = lam[1:m_bins - half][::-1]
    # sum of 2s-1 over s <= S is S^2, exact in floating point
    lam[0] = float(cap_s * cap_s) / cap_s
    return SpectralReport(m=m_bins, order=cap_s, kind="fejer", eigenvalues=lam)


def fejer_eigenvalue(m_bins: int, cap_s: int, m: int) -> float:
    _check_fejer(m_bins, cap_s)
    if not 0 <= m < m_bins:
        raise ValueError("m must lie in [0, m_bins)")
    if m == 0:
        return float(cap_s)
    return math.fsum(dirichlet_eigenvalue(m_bins, s, m) for s in range(1, cap_s + 1)) / cap_s


def fejer_closed_form(m_bins: int, cap_s: int, m: int) -> float:
    """(1/S) * sin^2(S pi m / M) / sin^2(pi m / M)."""
    if m == 0:
        return float(cap_s)
    x = math.pi * m / m_bins
    return (math.sin(cap_s * x) / math.sin(x)) ** 2 / cap_s


def band_first_row(m_bins: int, s: int) -> np.ndarray:
    _check_band(m_bins, s)
    row = np.zeros(m_bins)
    for lag in range(-s + 1, s):
        row[lag % m_bins] = 1.0
    return row


def circulant_matrix(first_row: Sequence[float]) -> np.ndarray:
    """Row i is the first row shifted right by i: A[i, j] = c[(j - i) mod M]."""
    c = np.asarray(first_row)
    size = c.size
    idx = (np.arange(size)[None, :] - np.arange(size)[:, None]) % size
    return c[idx]


def circulant_eig_oracle(first_row: Sequence[float]) -> np.ndarray:
    """lambda_m = sum_l c_l exp(2 pi i l m / M), by direct summation.

    Real output when the circulant is symmetric (c_l == c_{M-l}); complex
    otherwise.
    """
    c = np.asarray(first_row, dtype=np.float64)
    size = c.size
    if size < 1:
        raise ValueError("first_row must be nonempty")
    lm = np.outer(np.arange(size), np.arange(size))
    lam = np.exp(2j * np.pi * lm / size) @ c
    if np.array_equal(c, np.roll(c[::-1], 1)):
        return lam.real.copy()
    return lam


def eigen_residual(first_row: Sequence[float], eigenvalues: Sequence[complex]) -> float:
    """max_m ||A v_m - lambda_m v_m||_inf with v_m = (omega^{jm})_j."""
    a = circulant_matrix(first_row)
    size = a.shape[0]
    worst = 0.0
    for m in range(size):
        v = np.exp(2j * np.pi * m * np.arange(size) / size)
        worst = max(worst, float(np.max(np.abs(a @ v - eigenvalues[m] * v))))
    return worst


def lemma1_average(bc: BinnedCounts, cap_s: int) -> float:
    """(1/S) * sum_{s=1..S} H(s); at least S N^2 / M whenever 2S < M."""
    _check_fejer(bc.m, cap_s)
    total = sum(int(quadratic_form_h(bc, s)) for s in range(1, cap_s + 1))
    return total / cap_s


def lemma1_bound(bc: BinnedCounts, cap_s: int) -> float:
    return cap_s * bc.n * bc.n / bc.m


def h_to_f_chain_check(ps: PointSet, m_bins: int, s: int) -> tuple[float, float]:
    """(H(s) from M bins, N * F_N(sN/M) + N); the first never exceeds the second."""
    _check_band(m_bins, s)
    lhs = quadratic_form_h(bin_counts(ps, m_bins), s)
    n = ps.n
    # N * F_N(sN/M) is the integer pair count itself
    rhs = float(pair_count_fast(ps, s * n / m_bins) + n)
    return lhs, rhs
