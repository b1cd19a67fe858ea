"""Rank-based estimation of the copula dependence parameter.

Both estimators consume only a :class:`~copulakit.empirical.RankedSample`,
so they are unchanged by strictly increasing transformations of the data.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import scipy.optimize

from .copulas import CopulaFamily, CopulaKind, PARAMETRIC, copula_log_density
from .dependence import spearman_rho
from .empirical import RankedSample, sample_kendall_tau, sample_spearman_rho
from .errors import DomainError, EstimationRangeError, NoDensityError
from .numerics import minimize_scalar


class FitMethod(Enum):
    MOMENTS_TAU = "mom"
    MOMENTS_SPEARMAN = "mom-spearman"
    PSEUDO_LIKELIHOOD = "mpl"


class BoundaryWarning(UserWarning):
    """The pseudolikelihood optimum sits on the edge of the search interval."""


@dataclass(frozen=True)
class FitResult:
    family: CopulaKind
    estimate: float
    method: FitMethod
    sample_tau: float
    log_pseudolikelihood: float | None = None
    warnings: tuple = field(default_factory=tuple)

    @property
    def copula(self) -> CopulaFamily:
        return CopulaFamily(self.family, self.estimate)

    def as_dict(self) -> dict:
        return {
            "family": self.family.value,
            "method": self.method.value,
            "tau_hat": self.sample_tau,
            "estimate": self.estimate,
            "log_pseudolikelihood": self.log_pseudolikelihood,
            "warnings": list(self.warnings),
        }


def _kind(family) -> CopulaKind:
    if isinstance(family, CopulaFamily):
        return family.kind
    if isinstance(family, CopulaKind):
        return family
    try:
        return CopulaKind(str(family).lower())
    except ValueError:
        raise DomainError(f"unknown copula family {family!r}") from None


def invert_tau(family, tau: float) -> float:
    """Parameter whose closed-form Kendall's tau equals ``tau``."""
    kind = _kind(family)
    if kind is CopulaKind.CLAYTON:
        if not 0.0 < tau < 1.0:
            raise EstimationRangeError(
                f"Clayton needs 0 < tau_hat < 1, got tau_hat={tau:.6f}; "
                "the data may not follow a Clayton copula", tau)
        return 2.0 * tau / (1.0 - tau)
    if kind is CopulaKind.GUMBEL:
        if not 0.0 <= tau < 1.0:
            raise EstimationRangeError(
                f"Gumbel needs 0 <= tau_hat < 1, got tau_hat={tau:.6f}; "
                "the data may not follow a Gumbel copula", tau)
        return 1.0 / (1.0 - tau)
    if kind is CopulaKind.GAUSSIAN:
        if not -1.0 < tau < 1.0:
            raise EstimationRangeError(
                f"Gaussian needs -1 < tau_hat < 1, got tau_hat={tau:.6f}", tau)
        return math.sin(math.pi * tau / 2.0)
    raise DomainError(f"no tau inversion for the {kind.value} copula")


def fit_moments_tau(rs: RankedSample, family) -> FitResult:
    """Method of moments: solve tau(theta) = sample tau."""
    kind = _kind(family)
    tau = sample_kendall_tau(rs)
    notes = ("ties in data; midranks used",) if rs.ties else ()
    return FitResult(kind, invert_tau(kind, tau), FitMethod.MOMENTS_TAU, tau, warnings=notes)


def fit_moments_spearman(rs: RankedSample, family="gauss") -> FitResult:
    """Gaussian-only variant: solve rho_S(rho) = sample Spearman rho numerically."""
    kind = _kind(family)
    if kind is not CopulaKind.GAUSSIAN:
        raise DomainError("the Spearman moment fit is implemented for the Gaussian family only")
    target = sample_spearman_rho(rs)
    if not -1.0 < target < 1.0:
        raise EstimationRangeError(f"sample Spearman rho {target} cannot be inverted", None)
    lim = 0.9999
    f = lambda r: spearman_rho(CopulaFamily.gaussian(r)) - target
    if f(-lim) > 0 or f(lim) < 0:
        raise EstimationRangeError(f"sample Spearman rho {target:.6f} is outside the attainable range", None)
    rho = scipy.optimize.brentq(f, -lim, lim, xtol=1e-10)
    return FitResult(kind, float(rho), FitMethod.MOMENTS_SPEARMAN, sample_kendall_tau(rs))


def pseudo_loglikelihood(rs: RankedSample, family, parameter: float | None) -> float:
    """Sum of log c_theta at the pseudo-observations (R_i/(n+1), S_i/(n+1))."""
    kind = _kind(family)
    if kind in (CopulaKind.FRECHET_LOWER, CopulaKind.FRECHET_UPPER):
        raise NoDensityError(f"the {kind.value} copula has no density")
    c = CopulaFamily(kind, parameter) if kind in PARAMETRIC else CopulaFamily(kind)
    return float(np.sum(copula_log_density(c, rs.u, rs.v)))


# Search intervals in the natural parameter, and the reparametrisation the
# optimiser actually works in.
_GUMBEL_SHIFT = 1e-6
_SEARCH = {
    CopulaKind.CLAYTON: (
        (1e-4, 50.0),
        math.log,
        math.exp,
    ),
    CopulaKind.GUMBEL: (
        (1.0, 50.0),
        lambda t: math.log(t - 1.0 + _GUMBEL_SHIFT),
        lambda s: max(1.0, math.exp(s) + 1.0 - _GUMBEL_SHIFT),
    ),
    CopulaKind.GAUSSIAN: (
        (-0.9999, 0.9999),
        math.atanh,
        math.tanh,
    ),
}


def fit_pseudolikelihood(rs: RankedSample, family, tol: float = 1e-8) -> FitResult:
    """Maximise the pseudo log-likelihood over the family's search interval.

    A :class:`BoundaryWarning` is issued (and recorded on the result) when the
    maximiser lies at an end of the interval.
    """
    kind = _kind(family)
    if kind not in _SEARCH:
        raise DomainError(f"maximum pseudolikelihood needs a parametric family, got {kind.value}")
    if rs.n < 10:
        raise DomainError("maximum pseudolikelihood needs n >= 10")
    (lo, hi), forward, backward = _SEARCH[kind]
    s_lo, s_hi = forward(lo), forward(hi)

    def objective(s):
        value = pseudo_loglikelihood(rs, kind, backward(s))
        return -value if np.isfinite(value) else np.inf

    s_best, neg_ll = minimize_scalar(objective, s_lo, s_hi, tol=tol)
    # The bounded search never evaluates the endpoints exactly; compare them.
    for edge in (s_lo, s_hi):
        edge_value = objective(edge)
        if edge_value < neg_ll:
            s_best, neg_ll = edge, edge_value
    estimate = backward(s_best)

    notes = []
    if rs.ties:
        notes.append("ties in data; midranks used")
    span = s_hi - s_lo
    if min(s_best - s_lo, s_hi - s_best) <= 1e-6 * span:
        edge = lo if s_best - s_lo < s_hi - s_best else hi
        msg = f"pseudolikelihood maximum at search boundary {kind.value}={edge:g}"
        warnings.warn(msg, BoundaryWarning, stacklevel=2)
        notes.append(msg)
    return FitResult(kind, estimate, FitMethod.PSEUDO_LIKELIHOOD, sample_kendall_tau(rs),
                     log_pseudolikelihood=-neg_ll, warnings=tuple(notes))
