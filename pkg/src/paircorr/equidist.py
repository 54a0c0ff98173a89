"""Equidistribution diagnostics: empirical CDF, star discrepancy, Weyl sums,
and histogram estimates of the squared-density integral."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import PointSet
from .generators import DensitySpec
from .spectral import bin_counts

# log-log slope of the l2 estimate against bin count above which the
# limit distribution is suspected to have no density
BLOWUP_SLOPE = 0.5


@dataclass(frozen=True)
class DistributionEstimate:
    grid: tuple[float, ...]
    g_values: tuple[float, ...]
    l2_density: float  # math.inf when the histogram looks singular
    l2_raw: float
    bins_used: int

    @property
    def blowup(self) -> bool:
        return math.isinf(self.l2_density)


def ecdf(ps: PointSet, x: float) -> float:
    """Fraction of points in the closed interval [0, x]."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    k = int(np.searchsorted(ps.sorted_points, x, side="right"))
    return k / ps.n


def star_discrepancy(ps: PointSet) -> float:
    xs = ps.sorted_points
    n = xs.size
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - xs), np.max(xs - (i - 1) / n)))


def weyl_sum(ps: PointSet, h: int) -> float:
    """|(1/N) sum_n exp(2 pi i h x_n)|."""
    if int(h) != h or h == 0:
        raise ValueError("h must be a nonzero integer")
    phase = 2.0 * np.pi * int(h) * ps.points
    re = math.fsum(np.cos(phase))
    im = math.fsum(np.sin(phase))
    return min(1.0, math.hypot(re, im) / ps.n)


def l2_density_estimate(ps: PointSet, bins: int) -> float:
    """M * sum_m y_m^2 / N^2 for M equal bins; never below 1."""
    y = bin_counts(ps, bins).counts
    sumsq = int(np.dot(y, y))
    return (bins * sumsq) / (ps.n * ps.n)


def blowup_threshold(bins: int, n: int) -> float:
    # a flat histogram of n i.i.d. points sits near 1 + bins/n
    return 1.0 + bins / n + math.sqrt(bins)


def estimate_distribution(
    ps: PointSet,
    grid_size: int,
    bins: int,
    threshold: float | None = None,
) -> DistributionEstimate:
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    if bins < 1:
        raise ValueError("bins must be positive")
    grid = np.linspace(0.0, 1.0, grid_size)
    counts = np.searchsorted(ps.sorted_points, grid, side="right")
    g_values = tuple(float(c) / ps.n for c in counts)
    raw = l2_density_estimate(ps, bins)
    limit = blowup_threshold(bins, ps.n) if threshold is None else threshold
    return DistributionEstimate(
        grid=tuple(float(v) for v in grid),
        g_values=g_values,
        l2_density=math.inf if raw > limit else raw,
        l2_raw=raw,
        bins_used=int(bins),
    )


def l2_profile(ps: PointSet, bins_list: Sequence[int]) -> list[tuple[int, float]]:
    return [(int(b), l2_density_estimate(ps, b)) for b in bins_list]


def l2_growth_slope(profile: Sequence[tuple[int, float]]) -> float:
    """Least-squares slope of log(l2) against log(bins)."""
    if len(profile) < 2:
        raise ValueError("need at least two bin counts")
    lb = np.log([b for b, _ in profile])
    lv = np.log([v for _, v in profile])
    return float(np.polyfit(lb, lv, 1)[0])


def blowup_suspected(profile: Sequence[tuple[int, float]]) -> bool:
    return l2_growth_slope(profile) > BLOWUP_SLOPE


def density_l2_exact(spec: DensitySpec) -> float:
    t = spec.breakpoints
    return math.fsum(g * g * (b - a) for g, a, b in zip(spec.heights, t, t[1:]))
