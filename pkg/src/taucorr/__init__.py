"""Rank correlation from concomitants of order statistics.

Sample side: the Kendall coefficient tau_n computed from concomitant
ranks (quadratic reference path and an O(n log n) merge-sort path that
matches it bit for bit on tie-free data), plus the product-moment
coefficient for comparison.

Population side: the moment-free coefficient tau = 4 E F(X, Y) - 1,
computable by Monte Carlo, by quadrature on unit-square supports, by
closed form for the built-in families, and by exact double sum for
discrete laws.  tau_n is an unbiased estimator of tau at every sample
size and converges to it in probability; the replication harness in
:mod:`taucorr.simulate` checks both claims empirically.
"""

from .families import (
    FAMILIES,
    BivariateModel,
    BivariateParetoModel,
    ExponentialParetoModel,
    FgmCopulaModel,
    make_model,
)
from .population import (
    DiscretePmf,
    EstimateWithError,
    prob_iid_copy_below,
    tau_discrete,
    tau_monte_carlo,
    tau_monte_carlo_survival,
    tau_quadrature_unit_square,
)
from .quadrature import gauss_legendre
from .rank_stats import (
    BivariateSample,
    ConcomitantSequence,
    DegenerateSampleError,
    FastTauResult,
    RankVector,
    TieReport,
    concomitant_ranks,
    count_inversions,
    detect_ties,
    kendall_tau_fast,
    kendall_tau_naive,
    pearson_rho_sample,
    sort_with_concomitants,
)
from .simulate import (
    ConvergenceRow,
    ReplicationSummary,
    convergence_table,
    reference_tau,
    replication_streams,
    run_replications,
    unbiasedness_table,
)

__version__ = "0.1.0"

__all__ = [
    "BivariateSample",
    "ConcomitantSequence",
    "RankVector",
    "TieReport",
    "FastTauResult",
    "DegenerateSampleError",
    "sort_with_concomitants",
    "concomitant_ranks",
    "kendall_tau_naive",
    "kendall_tau_fast",
    "count_inversions",
    "pearson_rho_sample",
    "detect_ties",
    "BivariateModel",
    "ExponentialParetoModel",
    "BivariateParetoModel",
    "FgmCopulaModel",
    "make_model",
    "FAMILIES",
    "EstimateWithError",
    "DiscretePmf",
    "tau_monte_carlo",
    "tau_monte_carlo_survival",
    "tau_quadrature_unit_square",
    "tau_discrete",
    "prob_iid_copy_below",
    "gauss_legendre",
    "ReplicationSummary",
    "ConvergenceRow",
    "replication_streams",
    "reference_tau",
    "run_replications",
    "unbiasedness_table",
    "convergence_table",
    "__version__",
]
