"""Torus metric, point sets and the pair-correlation counting function.

F_N(s) = (1/N) * #{(m, n): m != n, ||x_m - x_n|| <= s/N}

Two counters are provided. ``pair_count_naive`` compares every ordered pair and
is kept as the reference. ``pair_count_fast`` sorts once and locates window
edges by binary search; it evaluates exactly the same floating-point predicate
as the naive counter, so the two agree to the integer.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

THREADS_ENV = "PAIRCORR_THREADS"

# below this size the fast counter never splits work across threads
_PARALLEL_MIN_N = 1 << 16


def max_threads() -> int:
    """Thread cap taken from ``PAIRCORR_THREADS`` (default 1)."""
    raw = os.environ.get(THREADS_ENV, "").strip()
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


def reduce_mod1(values) -> np.ndarray:
    """Fractional part, guaranteed to land in [0, 1)."""
    arr = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError("points must be finite")
    out = np.mod(arr, 1.0)
    # np.mod(-1e-20, 1.0) == 1.0
    out[out >= 1.0] = 0.0
    return out


@dataclass(frozen=True)
class PointSet:
    """Finite ordered list of points on the circle [0, 1).

    Values are reduced mod 1 on construction; duplicates are allowed.
    """

    points: np.ndarray
    _sorted: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pts = reduce_mod1(np.ravel(self.points))
        if pts.size < 1:
            raise ValueError("a PointSet needs at least one point")
        pts.setflags(write=False)
        srt = np.sort(pts, kind="stable")
        srt.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "_sorted", srt)

    @property
    def n(self) -> int:
        return int(self.points.size)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return np.array_equal(self.points, other.points)

    def __hash__(self) -> int:
        return hash(self.points.tobytes())

    @property
    def sorted_points(self) -> np.ndarray:
        return self._sorted

    def shifted(self, c: float) -> "PointSet":
        return PointSet(self.points + c)


@dataclass(frozen=True)
class PairCorrelationCurve:
    n: int
    s: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.s) != len(self.values):
            raise ValueError("s and values must have the same length")

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.s, self.values))

    def __len__(self) -> int:
        return len(self.s)


def torus_distance(x: float, y: float) -> float:
    d = abs(x - y)
    return min(d, 1.0 - d)


def _threshold(s: float, n: int) -> float:
    if not s >= 0 or math.isinf(s):
        raise ValueError(f"s must be a finite nonnegative number, got {s!r}")
    return s / n


def pair_count_naive(ps: PointSet, s: float) -> int:
    """Count ordered pairs m != n with torus distance <= s/N by brute force."""
    n = ps.n
    t = _threshold(s, n)
    x = ps.points
    total = 0
    # row blocks keep memory at O(block * N)
    block = max(1, min(n, 4_000_000 // n))
    for start in range(0, n, block):
        rows = x[start:start + block]
        d = np.abs(rows[:, None] - x[None, :])
        dist = np.minimum(d, 1.0 - d)
        total += int(np.count_nonzero(dist <= t))
    # the diagonal (distance 0) always satisfies the condition
    return total - n


def _edges(xs: np.ndarray, lo: int, hi: int, t: float) -> int:
    """Unordered close pairs (i, j), i < j, for i in [lo, hi) of sorted ``xs``.

    For i < j the gap d = xs[j] - xs[i] is nondecreasing in j, so
    ``d <= t`` holds on a prefix of j and ``1 - d <= t`` on a suffix.
    Binary search gives a first guess for both edges; the guesses are then
    nudged until the exact predicate used by the naive counter holds.
    """
    n = xs.size
    i = np.arange(lo, hi)
    xi = xs[lo:hi]

    # near[i]: first j > i with xs[j] - xs[i] > t
    near = np.searchsorted(xs, xi + t, side="right")
    near = np.maximum(near, i + 1)
    while True:
        idx = near < n
        step = np.zeros_like(idx)
        step[idx] = (xs[near[idx]] - xi[idx]) <= t
        if not step.any():
            break
        near += step
    while True:
        prev = near - 1
        idx = prev > i
        step = np.zeros_like(idx)
        step[idx] = (xs[prev[idx]] - xi[idx]) > t
        if not step.any():
            break
        near -= step

    # far[i]: first j > i with 1 - (xs[j] - xs[i]) <= t
    far = np.searchsorted(xs, xi + (1.0 - t), side="left")
    far = np.maximum(far, i + 1)
    while True:
        prev = far - 1
        idx = prev > i
        step = np.zeros_like(idx)
        step[idx] = (1.0 - (xs[prev[idx]] - xi[idx])) <= t
        if not step.any():
            break
        far -= step
    while True:
        idx = far < n
        step = np.zeros_like(idx)
        step[idx] = (1.0 - (xs[far[idx]] - xi[idx])) > t
        if not step.any():
            break
        far += step

    far = np.maximum(far, near)
    return int(np.sum(near - i - 1) + np.sum(n - far))


def _count_sorted(xs: np.ndarray, t: float) -> int:
    n = xs.size
    threads = max_threads()
    if t >= 0.5:
        return n * n - n
    if threads == 1 or n < _PARALLEL_MIN_N:
        return 2 * _edges(xs, 0, n, t)
    bounds = np.linspace(0, n, threads + 1).astype(int)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda k: _edges(xs, bounds[k], bounds[k + 1], t), range(threads)))
    return 2 * sum(parts)


def pair_count_fast(ps: PointSet, s: float) -> int:
    """Same count as :func:`pair_count_naive` in O(N log N)."""
    return _count_sorted(ps.sorted_points, _threshold(s, ps.n))


def pair_correlation_value(ps: PointSet, s: float) -> float:
    return pair_count_fast(ps, s) / ps.n


def pair_correlation_curve(ps: PointSet, s_grid: Sequence[float]) -> PairCorrelationCurve:
    grid = [float(v) for v in s_grid]
    for a, b in zip(grid, grid[1:]):
        if not b > a:
            raise ValueError("s_grid must be strictly ascending")
    values = tuple(pair_correlation_value(ps, s) for s in grid)
    return PairCorrelationCurve(n=ps.n, s=tuple(grid), values=values)


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def load_points(path: str | Path) -> PointSet:
    """Read one decimal literal per line; blank lines are skipped."""
    values: list[float] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                v = float(text)
            except ValueError:
                raise ValueError(f"{path}: line {lineno}: cannot parse {text!r} as a number") from None
            if not math.isfinite(v):
                raise ValueError(f"{path}: line {lineno}: value {text!r} is not finite")
            values.append(v)
    if not values:
        raise ValueError(f"{path}: no points found")
    return PointSet(np.array(values))


def dumps_points(ps: PointSet | Iterable[float]) -> str:
    pts = ps.points if isinstance(ps, PointSet) else ps
    return "".join(format_float(v) + "\n" for v in pts)
