"""Test sequences: Weyl/Kronecker, van der Corput, seeded i.i.d. samples,
atom mixtures and two-interval sequences with a prescribed mass imbalance.

Random streams come from numpy's PCG64 bit generator, seeded through
``SeedSequence``; its output is specified bit-for-bit and does not depend on
the platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import PointSet

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
SQRT2 = math.sqrt(2.0)

NAMED_CONSTANTS = {
    "golden": GOLDEN,
    "sqrt2": SQRT2,
    "e": math.e,
    "pi": math.pi,
}

_BELOW_ONE = float(np.nextafter(1.0, 0.0))


def resolve_alpha(value: str | float) -> float:
    """Accept a named irrational (golden, sqrt2, e, pi) or a decimal literal."""
    if isinstance(value, str):
        key = value.strip().lower()
        if key in NAMED_CONSTANTS:
            return NAMED_CONSTANTS[key]
        try:
            out = float(key)
        except ValueError:
            raise ValueError(f"alpha must be a number or one of {sorted(NAMED_CONSTANTS)}, got {value!r}") from None
    else:
        out = float(value)
    if not math.isfinite(out):
        raise ValueError("alpha must be finite")
    return out


def rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))


def _check_n(n: int) -> int:
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return int(n)


def check_phase_precision(max_multiplier: int, alpha: float, n: int) -> None:
    """Reject runs where the 64-bit rounding of alpha, scaled by the largest
    multiplier, is no longer small against the pair scale 1/n."""
    err = abs(max_multiplier) * math.ulp(alpha)
    if err * n > 1.0:
        raise ValueError(
            f"multiplier {max_multiplier} times ulp(alpha)={math.ulp(alpha):.3g} "
            f"exceeds 1/n for n={n}; reduce n"
        )


def frac_multiples(multipliers: Sequence[int], alpha: float) -> np.ndarray:
    """Exact fractional parts {k * alpha} of the float alpha, rounded once.

    alpha is a dyadic rational p/q, so k*p mod q is computed in integers and
    no phase error accumulates with k.
    """
    p, q = float(alpha).as_integer_ratio()
    out = np.fromiter(((int(k) * p % q) / q for k in multipliers), dtype=np.float64, count=len(multipliers))
    out[out >= 1.0] = _BELOW_ONE
    return out


def kronecker(alpha: float, n: int) -> PointSet:
    n = _check_n(n)
    check_phase_precision(n, alpha, n)
    return PointSet(frac_multiples(range(1, n + 1), alpha))


def quadratic_weyl(alpha: float, n: int) -> PointSet:
    n = _check_n(n)
    check_phase_precision(n * n, alpha, n)
    return PointSet(frac_multiples([k * k for k in range(1, n + 1)], alpha))


def general_weyl(multipliers: Sequence[int], alpha: float) -> PointSet:
    mults = [int(m) for m in multipliers]
    if not mults:
        raise ValueError("multipliers must be nonempty")
    if any(m < 1 for m in mults):
        raise ValueError("multipliers must be positive integers")
    if len(set(mults)) != len(mults):
        raise ValueError("multipliers must be distinct")
    check_phase_precision(max(mults), alpha, len(mults))
    return PointSet(frac_multiples(mults, alpha))


def radical_inverse(base: int, indices) -> np.ndarray:
    idx = np.asarray(indices, dtype=np.int64)
    num = np.zeros_like(idx)
    den = np.ones_like(idx)
    rest = idx.copy()
    while np.any(rest > 0):
        active = rest > 0
        num[active] = num[active] * base + rest[active] % base
        den[active] *= base
        rest //= base
    # num, den < 2**53 here, so the float division is correctly rounded
    return num.astype(np.float64) / den.astype(np.float64)


def van_der_corput(base: int, n: int) -> PointSet:
    n = _check_n(n)
    if int(base) != base or base < 2:
        raise ValueError(f"base must be an integer >= 2, got {base!r}")
    base = int(base)
    if base * n >= 2**53:
        raise ValueError("base * n too large for exact radical inverses")
    return PointSet(radical_inverse(base, np.arange(1, n + 1)))


def iid_uniform(seed: int, n: int) -> PointSet:
    n = _check_n(n)
    return PointSet(rng(seed).random(n))


@dataclass(frozen=True)
class DensitySpec:
    """Piecewise-constant probability density on [0, 1)."""

    breakpoints: tuple[float, ...]
    heights: tuple[float, ...]

    def __post_init__(self):
        t = tuple(float(v) for v in self.breakpoints)
        g = tuple(float(v) for v in self.heights)
        object.__setattr__(self, "breakpoints", t)
        object.__setattr__(self, "heights", g)
        if len(t) < 2 or len(g) != len(t) - 1:
            raise ValueError("need K+1 breakpoints for K heights")
        if t[0] != 0.0 or t[-1] != 1.0:
            raise ValueError("breakpoints must start at 0 and end at 1")
        if any(b <= a for a, b in zip(t, t[1:])):
            raise ValueError("breakpoints must be strictly ascending")
        if any(not math.isfinite(h) or h < 0 for h in g):
            raise ValueError("heights must be finite and nonnegative")
        mass = math.fsum(h * (b - a) for h, a, b in zip(g, t, t[1:]))
        if abs(mass - 1.0) > 1e-12:
            raise ValueError(f"density integrates to {mass!r}, not 1")

    @classmethod
    def uniform(cls) -> "DensitySpec":
        return cls((0.0, 1.0), (1.0,))

    @classmethod
    def step(cls, cut: float, height: float) -> "DensitySpec":
        """Density ``height`` on [0, cut), remainder spread evenly on [cut, 1)."""
        rest = (1.0 - height * cut) / (1.0 - cut)
        return cls((0.0, cut, 1.0), (height, rest))

    def cdf_knots(self) -> np.ndarray:
        t = np.array(self.breakpoints)
        masses = np.array(self.heights) * np.diff(t)
        return np.concatenate([[0.0], np.cumsum(masses)])


def inverse_cdf(spec: DensitySpec, u) -> np.ndarray:
    t = np.array(spec.breakpoints)
    g = np.array(spec.heights)
    cdf = spec.cdf_knots()
    u = np.asarray(u, dtype=np.float64)
    # side="right" never lands in a zero-mass segment
    k = np.clip(np.searchsorted(cdf, u, side="right") - 1, 0, len(g) - 1)
    x = t[k] + (u - cdf[k]) / g[k]
    upper = np.nextafter(t[k + 1], 0.0)
    return np.clip(x, t[k], upper)


def iid_density(spec: DensitySpec, seed: int, n: int) -> PointSet:
    n = _check_n(n)
    return PointSet(inverse_cdf(spec, rng(seed).random(n)))


def atom_mask(weight: float, seed: int, n: int) -> np.ndarray:
    """Which draws of :func:`atom_mixture` land on the atom."""
    return rng(seed).random(n) < weight


def atom_mixture(atom: float, weight: float, seed: int, n: int) -> PointSet:
    n = _check_n(n)
    if not 0.0 <= atom < 1.0:
        raise ValueError("atom must lie in [0, 1)")
    if not 0.0 < weight < 1.0:
        raise ValueError("weight must lie in (0, 1)")
    g = rng(seed)
    hit = g.random(n) < weight
    fill = g.random(n)
    return PointSet(np.where(hit, atom, fill))


def two_interval_sequence(a: float, b: float, n: int) -> PointSet:
    """Deterministic sequence with asymptotic mass ``b`` on [0, a).

    The k-th term goes to [0, a) exactly when floor(k*b) increases, so after
    k terms the left interval holds floor(k*b) of them. Inside each interval
    the terms follow a base-2 van der Corput sequence, rescaled.
    """
    n = _check_n(n)
    if not 0.0 < a < 1.0 or not 0.0 < b < 1.0:
        raise ValueError("a and b must lie in (0, 1)")
    k = np.arange(1, n + 1)
    left = np.floor(k * b) > np.floor((k - 1) * b)
    j_left = np.cumsum(left) - 1
    j_right = np.cumsum(~left) - 1
    out = np.where(
        left,
        a * radical_inverse(2, j_left),
        a + (1.0 - a) * radical_inverse(2, j_right),
    )
    out = np.where(left, np.minimum(out, np.nextafter(a, 0.0)), out)
    return PointSet(np.minimum(out, _BELOW_ONE))
