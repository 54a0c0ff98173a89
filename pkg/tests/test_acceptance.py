"""Exit criteria. Each test records one PASS/FAIL line, printed in the
terminal summary under "acceptance criteria"."""

import statistics
import time

import numpy as np

from paircorr.core import PointSet, pair_correlation_value, pair_count_fast, pair_count_naive
from paircorr.equidist import star_discrepancy
from paircorr.generators import (
    GOLDEN,
    DensitySpec,
    atom_mixture,
    iid_density,
    iid_uniform,
    kronecker,
    rng,
    two_interval_sequence,
)
from paircorr.harness import DEFAULT_S_GRID
from paircorr.spectral import (
    BinnedCounts,
    band_first_row,
    dirichlet_eigenvalue,
    dirichlet_spectrum,
    eigen_residual,
    fejer_eigenvalue,
    fejer_spectrum,
    h_to_f_chain_check,
    lemma1_average,
    lemma1_bound,
    quadratic_form_h,
    quadratic_form_h_spectral,
)

MINUTE = 60.0
SEEDS = (0, 1, 2, 3, 4)


def random_point_set(g: np.random.Generator, max_n: int) -> PointSet:
    n = int(np.exp(g.uniform(0, np.log(max_n + 1))))
    n = max(1, min(n, max_n))
    style = g.integers(0, 4)
    if style == 0:
        return PointSet(g.random(n))
    if style == 1:
        # coarse lattice: many exact ties and duplicates
        return PointSet(g.integers(0, int(g.integers(1, 64)), size=n) / 64)
    if style == 2:
        return PointSet(g.random(n) ** 3)
    return PointSet(np.arange(n) / n)


def test_c01_oracle_equivalence(criterion):
    g = rng(101)
    start = time.perf_counter()
    mismatches = 0
    instances = 0
    for _ in range(10**4):
        ps = random_point_set(g, 2000)
        s = float(g.choice([g.uniform(0, 5), g.uniform(0, ps.n), float(g.integers(0, 10))]))
        mismatches += pair_count_fast(ps, s) != pair_count_naive(ps, s)
        instances += 1
    elapsed = time.perf_counter() - start
    criterion("C01 oracle equivalence", f"{instances} instances, {mismatches} mismatches, {elapsed:.1f}s")
    assert instances == 10**4
    assert mismatches == 0
    assert elapsed < MINUTE


def test_c02_poissonian_baseline(criterion):
    start = time.perf_counter()
    grid = (0.5, 1.0, 2.0, 5.0)
    devs = {s: [] for s in grid}
    for seed in SEEDS:
        ps = iid_uniform(seed, 10**5)
        for s in grid:
            devs[s].append(abs(pair_correlation_value(ps, s) / (2 * s) - 1))
    medians = {s: statistics.median(v) for s, v in devs.items()}
    elapsed = time.perf_counter() - start
    worst = max(medians.values())
    criterion("C02 Poissonian baseline", f"worst median |ratio-1| = {worst:.4f} (<= 0.05), {elapsed:.1f}s")
    assert worst <= 0.05
    assert elapsed < MINUTE


def test_c03_lemma1(criterion):
    g = rng(303)
    start = time.perf_counter()
    violations = 0
    for _ in range(10**4):
        m_bins = int(g.integers(3, 120))
        cap_s = int(g.integers(1, (m_bins - 1) // 2 + 1))
        style = g.integers(0, 3)
        if style == 0:
            counts = g.integers(0, 1000, size=m_bins)
        elif style == 1:
            counts = g.poisson(float(g.uniform(0.1, 20)), size=m_bins)
        else:
            counts = np.zeros(m_bins, dtype=np.int64)
            counts[g.integers(0, m_bins, size=int(g.integers(1, 5)))] = g.integers(1, 100)
        bc = BinnedCounts.from_counts(counts)
        bound = lemma1_bound(bc, cap_s)
        violations += lemma1_average(bc, cap_s) < bound - 1e-9 * bound
    equality_gap = 0.0
    for m_bins in range(3, 120, 7):
        for cap_s in range(1, (m_bins - 1) // 2 + 1):
            bc = BinnedCounts.from_counts([int(g.integers(1, 50))] * m_bins)
            bound = lemma1_bound(bc, cap_s)
            equality_gap = max(equality_gap, abs(lemma1_average(bc, cap_s) - bound) / bound)
    elapsed = time.perf_counter() - start
    criterion(
        "C03 band average bound",
        f"{violations} violations in 10^4, constant-count max rel gap {equality_gap:.1e}, {elapsed:.1f}s",
    )
    assert violations == 0
    assert equality_gap <= 1e-9
    assert elapsed < MINUTE


def test_c04_fejer_nonnegative(criterion):
    start = time.perf_counter()
    lowest = np.inf
    exact_zero_modes = True
    checked = 0
    for m_bins in range(3, 513):
        for cap_s in range(1, (m_bins - 1) // 2 + 1):
            lam = fejer_spectrum(m_bins, cap_s).eigenvalues
            lowest = min(lowest, float(lam.min()))
            exact_zero_modes &= lam[0] == cap_s and fejer_eigenvalue(m_bins, cap_s, 0) == cap_s
            checked += 1
        for s in range(1, (m_bins + 1) // 2 + 1):
            exact_zero_modes &= dirichlet_eigenvalue(m_bins, s, 0) == 2 * s - 1
            exact_zero_modes &= dirichlet_spectrum(m_bins, s).eigenvalues[0] == 2 * s - 1
    elapsed = time.perf_counter() - start
    criterion(
        "C04 Fejer nonnegativity",
        f"{checked} (M, S) spectra, min eigenvalue {lowest:.2e}, zero modes exact: {exact_zero_modes}, {elapsed:.1f}s",
    )
    assert lowest >= -1e-9
    assert exact_zero_modes
    assert elapsed < MINUTE


def test_c05_spectral_oracle(criterion):
    worst_residual = 0.0
    for m_bins in range(1, 65):
        for s in range(1, (m_bins + 1) // 2 + 1):
            row = band_first_row(m_bins, s)
            lam = dirichlet_spectrum(m_bins, s).eigenvalues
            worst_residual = max(worst_residual, eigen_residual(row, lam))
            pointwise = [dirichlet_eigenvalue(m_bins, s, m) for m in range(m_bins)]
            worst_residual = max(worst_residual, eigen_residual(row, pointwise))
    g = rng(505)
    worst_parseval = 0.0
    for _ in range(10**3):
        m_bins = int(g.integers(1, 200))
        bc = BinnedCounts.from_counts(g.integers(0, 500, size=m_bins))
        s = int(g.integers(1, (m_bins + 1) // 2 + 1))
        direct = quadratic_form_h(bc, s)
        spectral_route = quadratic_form_h_spectral(bc, s)
        worst_parseval = max(worst_parseval, abs(spectral_route - direct) / max(direct, 1.0))
    criterion(
        "C05 spectral oracle",
        f"max |A v - lambda v| = {worst_residual:.1e}, max Parseval rel err = {worst_parseval:.1e}",
    )
    assert worst_residual <= 1e-9
    assert worst_parseval <= 1e-6


def test_c06_chain_inequality(criterion):
    g = rng(606)
    violations = 0
    for _ in range(10**4):
        ps = random_point_set(g, 600)
        m_bins = int(g.integers(1, 300))
        s = int(g.integers(1, (m_bins + 1) // 2 + 1))
        lhs, rhs = h_to_f_chain_check(ps, m_bins, s)
        violations += lhs > rhs
    equal = all(
        h_to_f_chain_check(PointSet([x] * n), m_bins, 1) == (n * n, n * n)
        for x, n, m_bins in [(0.3, 10, 10), (0.0, 57, 3), (0.999, 1000, 128)]
    )
    criterion("C06 chain inequality", f"{violations} violations in 10^4, identical-point equality: {equal}")
    assert violations == 0
    assert equal


def test_c07_theorem1_contrapositive(criterion):
    n = 10**5
    skewed = two_interval_sequence(0.5, 0.75, n)
    sup_skewed = max(pair_correlation_value(skewed, s) / (2 * s) for s in DEFAULT_S_GRID)
    sup_uniform = max(
        max(pair_correlation_value(iid_uniform(seed, n), s) / (2 * s) for s in DEFAULT_S_GRID)
        for seed in SEEDS
    )
    criterion(
        "C07 segregation contrapositive",
        f"two-interval sup ratio {sup_skewed:.4f} (>= 1.15, bound 1.25); uniform sup {sup_uniform:.4f} (<= 1.1)",
    )
    assert sup_skewed >= 1.15
    assert sup_uniform <= 1.1


def test_c08_theorem2_density(criterion):
    start = time.perf_counter()
    spec = DensitySpec((0.0, 0.5, 1.0), (2.0, 0.0))
    ratios = {s: [] for s in (1.0, 2.0, 3.0)}
    for seed in SEEDS:
        ps = iid_density(spec, seed, 10**5)
        for s in ratios:
            ratios[s].append(pair_correlation_value(ps, s) / (2 * s))
    medians = {s: statistics.median(v) for s, v in ratios.items()}
    elapsed = time.perf_counter() - start
    criterion(
        "C08 density scaling",
        "median ratios " + ", ".join(f"s={s:g}: {v:.4f}" for s, v in medians.items()) + f" (in [1.8, 2.2]), {elapsed:.1f}s",
    )
    assert all(1.8 <= v <= 2.2 for v in medians.values())
    assert elapsed < MINUTE


def test_c09_theorem2_blowup(criterion):
    per_n = {n: pair_correlation_value(atom_mixture(0.3, 0.5, 0, n), 1) / n for n in (10**3, 10**4, 10**5)}
    criterion(
        "C09 atom blow-up",
        "F_N(1)/N " + ", ".join(f"N={n}: {v:.4f}" for n, v in per_n.items()) + " (in [0.2, 0.3])",
    )
    assert all(0.2 <= v <= 0.3 for v in per_n.values())


def test_c10_kronecker_not_poissonian(criterion):
    ps = kronecker(GOLDEN, 10**5)
    dev = max(abs(pair_correlation_value(ps, s) / (2 * s) - 1) for s in (0.5, 1.0, 2.0, 5.0))
    criterion("C10 Kronecker non-Poissonian", f"max |ratio-1| = {dev:.4f} (>= 0.2)")
    assert dev >= 0.2
    # F_N(0.5) = 0: no two golden-ratio points lie within 0.5/N at N = 10^5
    assert dev == 1.0


def _discrepancy_brute(xs: np.ndarray) -> float:
    n = xs.size
    le = (xs[None, :] <= xs[:, None]).sum(axis=1)
    lt = (xs[None, :] < xs[:, None]).sum(axis=1)
    return float(max(np.max(le / n - xs), np.max(xs - lt / n)))


def test_c11_discrepancy_oracle(criterion):
    g = rng(1111)
    mismatches = 0
    for _ in range(10**3):
        n = int(g.integers(1, 1001))
        if g.random() < 0.3:
            xs = g.integers(0, int(g.integers(1, 50)), size=n) / 50
        else:
            xs = g.random(n)
        ps = PointSet(xs)
        mismatches += star_discrepancy(ps) != _discrepancy_brute(ps.points)
    criterion("C11 discrepancy oracle", f"{mismatches} mismatches in 10^3 sets")
    assert mismatches == 0
