"""Pair-correlation statistics and equidistribution diagnostics for point
sequences on the circle [0, 1)."""

from .core import (
    PairCorrelationCurve,
    PointSet,
    load_points,
    pair_correlation_curve,
    pair_correlation_value,
    pair_count_fast,
    pair_count_naive,
    torus_distance,
)
from .equidist import density_l2_exact, ecdf, estimate_distribution, star_discrepancy, weyl_sum
from .generators import (
    DensitySpec,
    atom_mixture,
    general_weyl,
    iid_density,
    iid_uniform,
    kronecker,
    quadratic_weyl,
    two_interval_sequence,
    van_der_corput,
)
from .spectral import BinnedCounts, bin_counts, lemma1_average, quadratic_form_h

__version__ = "0.1.0"

__all__ = [
    "BinnedCounts",
    "DensitySpec",
    "PairCorrelationCurve",
    "PointSet",
    "atom_mixture",
    "bin_counts",
    "density_l2_exact",
    "ecdf",
    "estimate_distribution",
    "general_weyl",
    "iid_density",
    "iid_uniform",
    "kronecker",
    "lemma1_average",
    "load_points",
    "pair_correlation_curve",
    "pair_correlation_value",
    "pair_count_fast",
    "pair_count_naive",
    "quadratic_form_h",
    "quadratic_weyl",
    "star_discrepancy",
    "torus_distance",
    "two_interval_sequence",
    "van_der_corput",
    "weyl_sum",
]
