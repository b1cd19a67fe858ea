"""Bivariate copulas: families, samplers, dependence measures and rank-based fitting."""

__version__ = "0.1.0"

from .copulas import (
    ArchimedeanGenerator,
    CopulaFamily,
    CopulaKind,
    JointModel,
    archimedean_cdf,
    check_copula_axioms,
    copula_cdf,
    copula_density,
    copula_log_density,
    frechet_bounds_check,
    hoeffding_covariance,
    inverse_power_generator,
    joint_cdf,
    neg_log_power_generator,
    parse_copula,
    quadrant_dependence,
)
from .dependence import (
    TailCoefficients,
    kendall_tau,
    kendall_tau_from_generator,
    spearman_rho,
    tail_coefficients,
    tail_limit_numeric,
)
from .empirical import (
    RankedSample,
    TiesWarning,
    empirical_copula,
    rank_transform,
    sample_kendall_tau,
    sample_spearman_rho,
)
from .errors import ConvergenceError, DomainError, EstimationRangeError, NoDensityError
from .estimation import (
    BoundaryWarning,
    FitMethod,
    FitResult,
    fit_moments_spearman,
    fit_moments_tau,
    fit_pseudolikelihood,
    invert_tau,
    pseudo_loglikelihood,
)
from .margins import Margin, MarginKind, margin_cdf, margin_pdf, margin_quantile, parse_margin
from .sampling import (
    RandomSource,
    sample_clayton,
    sample_copula,
    sample_gaussian,
    sample_gumbel,
    sample_joint,
    sample_positive_stable,
)
