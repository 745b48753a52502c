"""Preference-based centrality scores and rankings on dissimilarity spaces.

A point is central when a typical reference draw tends to land closer to
it than to a random opponent. The package estimates pairwise win
probabilities from distances, projects them onto a one-dimensional score
scale by a convex cross-entropy fit, and offers a spectral
stationary-distribution approximation, plus baselines, a simulation
harness, and a CLI.
"""

from ._backend import backend_name, set_backend
from .baselines import (
    baseline_scores,
    mahalanobis_depth_scores,
    neg_l2_scores,
    rp_spatial_scores,
    spatial_depth_scores,
)
from .btl import FitReport, GdConfig, fit_core_gd, gradient, loss
from .errors import ValidationError
from .geometry import (
    DistanceMatrix,
    MetricSpec,
    cross_distance_matrix,
    load_data_matrix,
    load_distance_matrix,
    pairwise_distance_matrix,
)
from .harness import ExperimentConfig, ResultTable, run_experiment
from .metrics import pearson, spearman
from .preference import (
    HALF_WEIGHT,
    STRICT,
    PreferenceMatrix,
    preference_leave_two_out,
    preference_population_1d,
    preference_reference,
)
from .scoring import (
    ExtensionResult,
    KernelSpec,
    kernel_extend,
    median_bandwidth,
    monotone_link_residuals,
    preference_center,
    win_rates,
)
from .spectral import (
    PowerReport,
    build_transition,
    centered_log_scores,
    fit_core_spectral,
    stationary_distribution,
)
from .synth import (
    GaussianMixture,
    Normal1D,
    OracleEstimate,
    SkewALD,
    SkewLaplace1D,
    StudentT,
    log_density,
    monte_carlo_r,
    sample,
)

__version__ = "0.1.0"

__all__ = [
    "DistanceMatrix",
    "ExperimentConfig",
    "ExtensionResult",
    "FitReport",
    "GaussianMixture",
    "GdConfig",
    "HALF_WEIGHT",
    "KernelSpec",
    "MetricSpec",
    "Normal1D",
    "OracleEstimate",
    "PowerReport",
    "PreferenceMatrix",
    "ResultTable",
    "STRICT",
    "SkewALD",
    "SkewLaplace1D",
    "StudentT",
    "ValidationError",
    "backend_name",
    "baseline_scores",
    "build_transition",
    "centered_log_scores",
    "cross_distance_matrix",
    "fit_core_gd",
    "fit_core_spectral",
    "gradient",
    "kernel_extend",
    "load_data_matrix",
    "load_distance_matrix",
    "log_density",
    "loss",
    "mahalanobis_depth_scores",
    "median_bandwidth",
    "monotone_link_residuals",
    "monte_carlo_r",
    "neg_l2_scores",
    "pairwise_distance_matrix",
    "pearson",
    "preference_center",
    "preference_leave_two_out",
    "preference_population_1d",
    "preference_reference",
    "rp_spatial_scores",
    "run_experiment",
    "sample",
    "set_backend",
    "spatial_depth_scores",
    "spearman",
    "stationary_distribution",
    "win_rates",
]
