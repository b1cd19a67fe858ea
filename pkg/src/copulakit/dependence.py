"""Population dependence measures: Kendall's tau, Spearman's rho, tail dependence."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .copulas import ArchimedeanGenerator, CopulaFamily, CopulaKind, copula_cdf
from .errors import DomainError
from .numerics import integrate, integrate_2d

_GENERATOR_EPS = 1e-10


@dataclass(frozen=True)
class TailCoefficients:
    lambda_lower: float
    lambda_upper: float


def kendall_tau(c: CopulaFamily) -> float:
    """Closed-form Kendall's tau of a family."""
    k, p = c.kind, c.parameter
    if k is CopulaKind.CLAYTON:
        return p / (p + 2.0)
    if k is CopulaKind.GUMBEL:
        return 1.0 - 1.0 / p
    if k is CopulaKind.GAUSSIAN:
        return 2.0 / math.pi * math.asin(p)
    if k is CopulaKind.INDEPENDENCE:
        return 0.0
    if k is CopulaKind.FRECHET_UPPER:
        return 1.0
    return -1.0


def kendall_tau_from_generator(g: ArchimedeanGenerator, quad_points: int = 64,
                               tol: float = 1e-12) -> float:
    """tau = 1 + 4 * integral_0^1 phi(t) / phi'(t) dt.

    The integral runs over [1e-10, 1 - 1e-10]: phi/phi' vanishes at both
    ends for the supplied generators, while evaluating it at t = 1 is 0/0.
    """
    def ratio(t):
        d = g.phi_derivative(t)
        if np.any(d == 0):
            raise DomainError("generator derivative vanishes inside (0, 1)")
        return g.phi(t) / d

    value = integrate(ratio, _GENERATOR_EPS, 1.0 - _GENERATOR_EPS, n=quad_points, tol=tol)
    return 1.0 + 4.0 * value


def _diagonal_breaks(u):
    # C(u, v) - uv is only piecewise smooth for M (kink at v = u) and W (v = 1 - u).
    return np.column_stack([u, 1.0 - u])


def _smoothstep(s):
    return s * s * (3.0 - 2.0 * s)


def _smoothstep_slope(s):
    return 6.0 * s * (1.0 - s)


def spearman_rho(c: CopulaFamily, quad_points: int = 64, tol: float = 1e-10) -> float:
    """rho_S = 12 * double integral of (C(u, v) - uv) over the unit square.

    Integrated in s, t with u = 3s^2 - 2s^3 (same for v). The slope vanishes
    at 0 and 1, which tames the corner singularities of Gaussian and Gumbel
    copulas, and the map commutes with 1 - s so the kinks of M and W stay on
    t = s and t = 1 - s.
    """
    def integrand(s, t):
        u, v = _smoothstep(s), _smoothstep(t)
        return (copula_cdf(c, u, v) - u * v) * _smoothstep_slope(s) * _smoothstep_slope(t)

    return 12.0 * integrate_2d(integrand, (0.0, 1.0), (0.0, 1.0), n=quad_points,
                               tol=tol / 12.0, y_breaks=_diagonal_breaks)


def tail_coefficients(c: CopulaFamily) -> TailCoefficients:
    k, p = c.kind, c.parameter
    if k is CopulaKind.GUMBEL:
        return TailCoefficients(0.0, 2.0 - 2.0 ** (1.0 / p))
    if k is CopulaKind.CLAYTON:
        return TailCoefficients(2.0 ** (-1.0 / p), 0.0)
    if k is CopulaKind.FRECHET_UPPER:
        return TailCoefficients(1.0, 1.0)
    # Gaussian with |rho| < 1, independence and W are tail independent.
    return TailCoefficients(0.0, 0.0)


def tail_limit_numeric(c: CopulaFamily, side: str, u_sequence) -> np.ndarray:
    """Diagonal tail ratios C(u,u)/u (lower) or (1 - 2u + C(u,u))/(1 - u) (upper)."""
    u = np.asarray(u_sequence, dtype=float)
    if np.any((u <= 0) | (u >= 1)):
        raise DomainError("u_sequence must lie strictly inside (0, 1)")
    if len(u) > 1:
        steps = np.diff(u)
        if not (np.all(steps > 0) or np.all(steps < 0)):
            raise DomainError("u_sequence must be strictly monotone")
    diag = copula_cdf(c, u, u)
    if side == "lower":
        ratio = diag / u
    elif side == "upper":
        ratio = (1.0 - 2.0 * u + diag) / (1.0 - u)
    else:
        raise DomainError(f"side must be 'lower' or 'upper', got {side!r}")
    if not np.all(np.isfinite(ratio)):
        raise FloatingPointError("tail ratio overflowed; log-space evaluation failed")
    return ratio
