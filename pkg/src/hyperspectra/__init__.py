"""Adjacency spectra of non-uniform inhomogeneous random hypergraphs.

A model is a vertex count together with classes (size, probability); every
vertex subset of a class's size appears as a hyperedge independently with
that class's probability.  The package provides the closed-form statistics
of the centered, scaled adjacency matrix, exact samplers for the hypergraph
and for its Gaussian surrogate, spectral summaries against the predicted
semicircle law, and a brute-force oracle for models small enough to
enumerate.
"""

from .errors import BudgetExceededError, DegenerateModelError, SamplerStallError
from .gaussian import (
    SurrogateCoefficients,
    assemble_surrogate,
    sample_surrogate,
    surrogate_coefficients,
)
from .hypergraph import (
    EdgeClass,
    Hypergraph,
    SamplerBudget,
    adjacency,
    center_scale,
    degree_count,
    log_expected_edges,
    read_hypergraph_text,
    sample_hypergraph,
    write_hypergraph_text,
)
from .oracle import ExactCovariances, exact_covariances, exact_eesd_moments
from .spectral import (
    EmpiricalMeasure,
    SemicircleLaw,
    average_esd,
    eigenvalues,
    empirical_stieltjes,
    esd,
    ks_against_cdf,
    ks_distance,
    moment,
    semicircle_cdf,
    semicircle_pdf,
    semicircle_stieltjes,
)
from .theory import (
    ChatterjeeBound,
    CovarianceProfile,
    DerivedStats,
    ModelParams,
    PasturTail,
    Regime,
    RegimeResult,
    bernoulli_tail_second_moment,
    bernoulli_truncated_third_moment,
    chatterjee_bound,
    classify_regime_k2,
    covariance_profile,
    derive_stats,
    gaussian_tail_second_moment,
    gaussian_truncated_third_moment,
    limit_variance,
    log_binomial,
    nonsparsity_log_ratio,
    pastur_lhs_bernoulli,
    pastur_lhs_gaussian,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "ChatterjeeBound",
    "CovarianceProfile",
    "DegenerateModelError",
    "DerivedStats",
    "EdgeClass",
    "EmpiricalMeasure",
    "ExactCovariances",
    "Hypergraph",
    "ModelParams",
    "PasturTail",
    "Regime",
    "RegimeResult",
    "SamplerBudget",
    "SamplerStallError",
    "SemicircleLaw",
    "SurrogateCoefficients",
    "adjacency",
    "assemble_surrogate",
    "average_esd",
    "bernoulli_tail_second_moment",
    "bernoulli_truncated_third_moment",
    "center_scale",
    "chatterjee_bound",
    "classify_regime_k2",
    "covariance_profile",
    "degree_count",
    "derive_stats",
    "eigenvalues",
    "empirical_stieltjes",
    "esd",
    "exact_covariances",
    "exact_eesd_moments",
    "gaussian_tail_second_moment",
    "gaussian_truncated_third_moment",
    "ks_against_cdf",
    "ks_distance",
    "limit_variance",
    "log_binomial",
    "log_expected_edges",
    "moment",
    "nonsparsity_log_ratio",
    "pastur_lhs_bernoulli",
    "pastur_lhs_gaussian",
    "read_hypergraph_text",
    "sample_hypergraph",
    "sample_surrogate",
    "semicircle_cdf",
    "semicircle_pdf",
    "semicircle_stieltjes",
    "surrogate_coefficients",
    "write_hypergraph_text",
    "__version__",
]
