"""Gini distance statistics for feature-label dependence.

Kernel-induced dependence measures between numerical features and a
categorical label, with exact discrete-distribution oracles, hypothesis
tests (distribution-free bounds and permutation), a power/AUC simulation
harness, and CSV feature screening.
"""

__version__ = "0.1.0"

from . import exceptions
from .estimators import (
    STATISTICS,
    GiniStatistics,
    LabeledDataset,
    class_partition,
    correlation_ratio,
    distance_correlation,
    distance_covariance,
    gini_correlation,
    gini_covariance,
    gini_mean_difference,
    gini_mean_difference_1d,
    gini_statistics,
    plug_in_distance_covariance,
    u_center,
)
from .inference import (
    BoundQuery,
    TestReport,
    asymptotic_ci,
    critical_value,
    deviation_bound,
    permutation_test,
    underperform_bound,
)
from .kernels import (
    DEFAULT_SIGMA2,
    BoundedKernel,
    induced_distance,
    pairwise_distances,
    set_distance,
    set_distance_matrix,
)
from .oracle import (
    DiscreteJoint,
    PopulationGini,
    mc_mean,
    population_dcov,
    population_gini,
    population_variance_v,
)
from .screening import (
    ScreeningConfig,
    FeatureRank,
    demo_csv_path,
    load_csv,
    rank_features,
    run_screening,
    standardize,
)
from .simgen import (
    FAMILIES,
    Component,
    PowerConfig,
    PowerReport,
    allocate_counts,
    draw_component,
    generate_dataset,
    power_and_auc,
    random_proportions,
)

__all__ = [
    "BoundedKernel",
    "BoundQuery",
    "Component",
    "DEFAULT_SIGMA2",
    "DiscreteJoint",
    "FAMILIES",
    "FeatureRank",
    "GiniStatistics",
    "LabeledDataset",
    "PopulationGini",
    "PowerConfig",
    "PowerReport",
    "STATISTICS",
    "ScreeningConfig",
    "TestReport",
    "allocate_counts",
    "asymptotic_ci",
    "class_partition",
    "correlation_ratio",
    "critical_value",
    "demo_csv_path",
    "deviation_bound",
    "distance_correlation",
    "distance_covariance",
    "draw_component",
    "exceptions",
    "generate_dataset",
    "gini_correlation",
    "gini_covariance",
    "gini_mean_difference",
    "gini_mean_difference_1d",
    "gini_statistics",
    "induced_distance",
    "load_csv",
    "mc_mean",
    "pairwise_distances",
    "permutation_test",
    "plug_in_distance_covariance",
    "population_dcov",
    "population_gini",
    "population_variance_v",
    "power_and_auc",
    "random_proportions",
    "rank_features",
    "run_screening",
    "set_distance",
    "set_distance_matrix",
    "standardize",
    "u_center",
    "underperform_bound",
]
