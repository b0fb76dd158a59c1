"""Maximum processes of heavy-tail perturbed random walks and their
fractional-Brownian shot-noise limits: samplers, estimators, and path metrics.

The heavy lifting lives in the compiled extension; this package re-exports it.
"""

from ._core import (  # noqa: F401
    FddEstimate,
    FddQuery,
    GridPath,
    KsReport,
    LimitPathSample,
    NoiseParams,
    PerturbedWalk,
    PointSet,
    PsiEstimate,
    extremal_process,
    fbm_covariance,
    fbm_path,
    fdd_estimate,
    fdd_probability,
    ks_two_sample,
    ks_vs_cdf,
    longest_nonneg_gap,
    max_jump,
    max_order_statistic_cdf,
    max_process,
    one_sided_paths,
    partition_modulus,
    psi_curve,
    psi_estimate,
    sample_fgn,
    sample_limit_path,
    sample_perturbation,
    sample_point_process,
    sandwich_middle_path,
    scaled_path,
    self_similarity_test,
    simulate_walk,
    skorohod_j1,
    sup_distance,
    truncated_scaled_path,
    uniform_modulus,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
