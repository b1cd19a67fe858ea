"""Bivariate copula families, Archimedean generators and Sklar composition.

Families are immutable ``CopulaFamily`` values; the module-level functions
(``copula_cdf``, ``copula_density`` ...) dispatch on ``family.kind``. All
evaluators broadcast over numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Union

import numpy as np

from .errors import DomainError, NoDensityError
from .margins import Margin, margin_cdf, margin_quantile
from .numerics import bivariate_normal_cdf, integrate_2d, std_normal_quantile


class CopulaKind(Enum):
    INDEPENDENCE = "indep"
    FRECHET_LOWER = "w"
    FRECHET_UPPER = "m"
    CLAYTON = "clayton"
    GUMBEL = "gumbel"
    GAUSSIAN = "gauss"


PARAMETRIC = (CopulaKind.CLAYTON, CopulaKind.GUMBEL, CopulaKind.GAUSSIAN)
WITH_DENSITY = (CopulaKind.INDEPENDENCE,) + PARAMETRIC

_TITLES = {
    CopulaKind.INDEPENDENCE: "Independence Copula",
    CopulaKind.FRECHET_LOWER: "Lower Frechet Copula",
    CopulaKind.FRECHET_UPPER: "Upper Frechet Copula",
    CopulaKind.CLAYTON: "Clayton Copula",
    CopulaKind.GUMBEL: "Gumbel Copula",
    CopulaKind.GAUSSIAN: "Gaussian Copula",
}


@dataclass(frozen=True)
class CopulaFamily:
    """A copula family together with its dependence parameter.

    Clayton takes ``theta > 0``, Gumbel ``theta >= 1`` and Gaussian
    ``-1 < rho < 1``. The independence copula and the two Frechet bounds carry
    no parameter.
    """

    kind: CopulaKind
    parameter: float | None = None

    def __post_init__(self):
        p = self.parameter
        if self.kind in PARAMETRIC:
            if p is None or not math.isfinite(p):
                raise DomainError(f"{self.kind.value} copula needs a finite parameter")
            object.__setattr__(self, "parameter", float(p))
        elif p is not None:
            raise DomainError(f"{self.kind.value} copula takes no parameter")
        if self.kind is CopulaKind.CLAYTON and not p > 0:
            raise DomainError(f"Clayton requires theta > 0, got {p}")
        if self.kind is CopulaKind.GUMBEL and not p >= 1:
            raise DomainError(f"Gumbel requires theta >= 1, got {p}")
        if self.kind is CopulaKind.GAUSSIAN and not -1 < p < 1:
            raise DomainError(f"Gaussian requires -1 < rho < 1, got {p}")

    @classmethod
    def independence(cls):
        return cls(CopulaKind.INDEPENDENCE)

    @classmethod
    def frechet_lower(cls):
        return cls(CopulaKind.FRECHET_LOWER)

    @classmethod
    def frechet_upper(cls):
        return cls(CopulaKind.FRECHET_UPPER)

    @classmethod
    def clayton(cls, theta):
        return cls(CopulaKind.CLAYTON, theta)

    @classmethod
    def gumbel(cls, theta):
        return cls(CopulaKind.GUMBEL, theta)

    @classmethod
    def gaussian(cls, rho):
        return cls(CopulaKind.GAUSSIAN, rho)

    @property
    def title(self) -> str:
        """Plot title such as ``"Clayton Copula, theta = 2.88"``."""
        base = _TITLES[self.kind]
        if self.kind is CopulaKind.GAUSSIAN:
            return f"{base}, rho = {self.parameter:g}"
        if self.kind in PARAMETRIC:
            return f"{base}, theta = {self.parameter:g}"
        return base

    def __str__(self):
        if self.parameter is None:
            return self.kind.value
        return f"{self.kind.value}:{self.parameter:g}"

    def cdf(self, u, v):
        return copula_cdf(self, u, v)

    def density(self, u, v):
        return copula_density(self, u, v)


def parse_copula(text: str) -> CopulaFamily:
    """Parse ``indep``, ``w``, ``m``, ``clayton:<t>``, ``gumbel:<t>`` or ``gauss:<r>``."""
    token = text.strip()
    name, _, arg = token.partition(":")
    try:
        kind = CopulaKind(name.lower())
    except ValueError:
        raise DomainError(f"unknown copula {token!r}") from None
    if kind in PARAMETRIC:
        if not arg:
            raise DomainError(f"copula {token!r} needs a parameter, e.g. {kind.value}:2")
        try:
            value = float(arg)
        except ValueError:
            raise DomainError(f"bad parameter in copula spec {token!r}") from None
        try:
            return CopulaFamily(kind, value)
        except DomainError as exc:
            raise DomainError(f"{token!r}: {exc}") from None
    if arg:
        raise DomainError(f"copula {token!r} takes no parameter")
    return CopulaFamily(kind)


def _unit_square_args(u, v, closed=True):
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    if closed:
        ok = (u >= 0) & (u <= 1) & (v >= 0) & (v <= 1)
        if not np.all(ok):
            raise DomainError("copula arguments must lie in [0, 1]")
    else:
        ok = (u > 0) & (u < 1) & (v > 0) & (v < 1)
        if not np.all(ok):
            raise DomainError("copula density is defined only on the open square (0, 1)^2")
    return u, v


# Below this the direct Clayton/Gumbel formulas risk overflow.
_LOG_SPACE_THRESHOLD = 1e-8


def _clayton_log_sum(u, v, theta):
    """log(u^-theta + v^-theta - 1), switching to log space near the origin."""
    with np.errstate(divide="ignore", over="ignore"):
        a = -theta * np.log(u)
        b = -theta * np.log(v)
    risky = (np.minimum(u, v) < _LOG_SPACE_THRESHOLD) | (np.maximum(a, b) > 600.0)
    out = np.empty(np.shape(a))
    if np.any(~risky):
        s = np.exp(a[~risky]) + np.exp(b[~risky]) - 1.0
        out[~risky] = np.log(s)
    if np.any(risky):
        ar, br = a[risky], b[risky]
        m = np.maximum(ar, br)
        out[risky] = m + np.log(np.exp(ar - m) + np.exp(br - m) - np.exp(-m))
    return out


def _gumbel_a(x, y, theta):
    """(x^theta + y^theta)^(1/theta) without overflow."""
    hi = np.maximum(x, y)
    lo = np.minimum(x, y)
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(hi > 0, lo / np.where(hi > 0, hi, 1.0), 0.0)
    return hi * (1.0 + ratio**theta) ** (1.0 / theta)


def _interior_cdf(c: CopulaFamily, u, v):
    theta = c.parameter
    if c.kind is CopulaKind.CLAYTON:
        return np.exp(-_clayton_log_sum(u, v, theta) / theta)
    if c.kind is CopulaKind.GUMBEL:
        return np.exp(-_gumbel_a(-np.log(u), -np.log(v), theta))
    if c.kind is CopulaKind.GAUSSIAN:
        return bivariate_normal_cdf(std_normal_quantile(u), std_normal_quantile(v), theta)
    raise AssertionError(c.kind)


def copula_cdf(c: CopulaFamily, u, v):
    """C(u, v) on the closed unit square.

    Boundary values come straight from the axioms: C(u, 0) = C(0, v) = 0,
    C(u, 1) = u and C(1, v) = v.
    """
    scalar = np.ndim(u) == 0 and np.ndim(v) == 0
    u, v = _unit_square_args(u, v)
    if c.kind is CopulaKind.INDEPENDENCE:
        out = u * v
    elif c.kind is CopulaKind.FRECHET_LOWER:
        out = np.maximum(u + v - 1.0, 0.0)
        # (1 + v) - 1 need not round back to v
        out = np.where(u == 1.0, v, np.where(v == 1.0, u, out))
    elif c.kind is CopulaKind.FRECHET_UPPER:
        out = np.minimum(u, v)
    else:
        out = np.zeros(u.shape)
        one_u = u == 1.0
        one_v = (v == 1.0) & ~one_u
        out[one_u] = v[one_u]
        out[one_v] = u[one_v]
        inner = (u > 0) & (v > 0) & (u < 1) & (v < 1)
        if np.any(inner):
            out[inner] = _interior_cdf(c, u[inner], v[inner])
    return float(out) if scalar else out


def copula_log_density(c: CopulaFamily, u, v):
    """log c(u, v) on the open unit square."""
    scalar = np.ndim(u) == 0 and np.ndim(v) == 0
    if c.kind not in WITH_DENSITY:
        raise NoDensityError(f"the {c.kind.value} copula is singular and has no density")
    u, v = _unit_square_args(u, v, closed=False)
    theta = c.parameter
    if c.kind is CopulaKind.INDEPENDENCE:
        out = np.zeros(u.shape)
    elif c.kind is CopulaKind.CLAYTON:
        # c = (1 + t) (uv)^(-t-1) (u^-t + v^-t - 1)^(-2 - 1/t)
        out = (math.log1p(theta) - (theta + 1.0) * (np.log(u) + np.log(v))
               - (2.0 + 1.0 / theta) * _clayton_log_sum(u, v, theta))
    elif c.kind is CopulaKind.GUMBEL:
        # c = C (xy)^(t-1) A^(1-2t) (A + t - 1) / (uv),  x = -ln u, A = (x^t + y^t)^(1/t)
        x = -np.log(u)
        y = -np.log(v)
        a = _gumbel_a(x, y, theta)
        out = (-a + x + y + (theta - 1.0) * (np.log(x) + np.log(y))
               + (1.0 - 2.0 * theta) * np.log(a) + np.log(a + theta - 1.0))
    else:
        a = std_normal_quantile(u)
        b = std_normal_quantile(v)
        r2 = theta * theta
        out = (-0.5 * math.log1p(-r2)
               - (r2 * (a * a + b * b) - 2.0 * theta * a * b) / (2.0 * (1.0 - r2)))
    return float(out) if scalar else out


def copula_density(c: CopulaFamily, u, v):
    """The copula density d^2 C / du dv on the open unit square."""
    return np.exp(copula_log_density(c, u, v))


# --------------------------------------------------------------------------
# Archimedean generators


@dataclass(frozen=True)
class ArchimedeanGenerator:
    """A generator phi with its inverse and derivative.

    ``strict`` generators satisfy phi(0) = infinity, so the copula
    phi^-1(phi(u) + phi(v)) is only evaluated on (0, 1].
    """

    phi: Callable
    phi_inverse: Callable
    phi_derivative: Callable
    theta: float
    name: str = "custom"
    strict: bool = True


def inverse_power_generator(theta: float) -> ArchimedeanGenerator:
    """phi(t) = t^-theta - 1. Generates the Clayton family."""
    if not theta > 0:
        raise DomainError(f"inverse power generator needs theta > 0, got {theta}")
    return ArchimedeanGenerator(
        phi=lambda t: np.power(t, -theta) - 1.0,
        phi_inverse=lambda s: np.power(1.0 + s, -1.0 / theta),
        phi_derivative=lambda t: -theta * np.power(t, -theta - 1.0),
        theta=theta,
        name=f"t^-{theta:g} - 1",
    )


def neg_log_power_generator(theta: float) -> ArchimedeanGenerator:
    """phi(t) = (-ln t)^theta. Generates the Gumbel family; theta = 1 gives uv."""
    if not theta >= 1:
        raise DomainError(f"negative-log power generator needs theta >= 1, got {theta}")
    return ArchimedeanGenerator(
        phi=lambda t: np.power(-np.log(t), theta),
        phi_inverse=lambda s: np.exp(-np.power(s, 1.0 / theta)),
        phi_derivative=lambda t: -theta * np.power(-np.log(t), theta - 1.0) / t,
        theta=theta,
        name=f"(-ln t)^{theta:g}",
    )


def archimedean_cdf(g: ArchimedeanGenerator, u, v):
    """phi^-1(phi(u) + phi(v)) for u, v in (0, 1]."""
    scalar = np.ndim(u) == 0 and np.ndim(v) == 0
    u, v = _unit_square_args(u, v)
    if g.strict and (np.any(u == 0) or np.any(v == 0)):
        raise DomainError("archimedean_cdf: phi is unbounded at 0; use u, v in (0, 1]")
    out = np.asarray(g.phi_inverse(g.phi(u) + g.phi(v)), dtype=float)
    return float(out) if scalar else out


# --------------------------------------------------------------------------
# Axiom and bound checks


CopulaLike = Union[CopulaFamily, Callable]


def _evaluator(c: CopulaLike):
    if isinstance(c, CopulaFamily):
        return lambda u, v: copula_cdf(c, u, v)
    return lambda u, v: np.asarray(c(u, v), dtype=float)


def _grid_values(c: CopulaLike, grid_size: int):
    if grid_size < 2:
        raise DomainError("grid_size must be at least 2")
    t = np.linspace(0.0, 1.0, grid_size)
    U, V = np.meshgrid(t, t, indexing="ij")
    return t, _evaluator(c)(U, V)


def worst_rectangle_mass(values: np.ndarray) -> float:
    """Smallest C-mass over every grid rectangle [u_i1, u_i2] x [v_j1, v_j2].

    For a fixed row pair the best j1 < j2 is found with a running maximum,
    so the sweep is O(k^3) rather than O(k^4).
    """
    k = values.shape[0]
    worst = np.inf
    for i1 in range(k - 1):
        d = values[i1 + 1:, :] - values[i1, :]
        running = np.maximum.accumulate(d[:, :-1], axis=1)
        masses = d[:, 1:] - running
        worst = min(worst, float(masses.min()))
    return worst


@dataclass(frozen=True)
class AxiomReport:
    grid_size: int
    grounded_error: float
    margin_error: float
    worst_rectangle_mass: float
    tolerance: float = 1e-12

    @property
    def grounded(self) -> bool:
        return self.grounded_error <= self.tolerance

    @property
    def uniform_margins(self) -> bool:
        return self.margin_error <= self.tolerance

    @property
    def two_increasing(self) -> bool:
        return self.worst_rectangle_mass >= -self.tolerance

    @property
    def passed(self) -> bool:
        return self.grounded and self.uniform_margins and self.two_increasing


def check_copula_axioms(c: CopulaLike, grid_size: int = 51, tolerance: float = 1e-12) -> AxiomReport:
    """Check groundedness, uniform margins and 2-increasingness on a grid.

    ``c`` may be a :class:`CopulaFamily` or any vectorised ``f(u, v)``, which
    makes it possible to confirm that a non-copula fails.
    """
    t, values = _grid_values(c, grid_size)
    grounded = max(np.max(np.abs(values[:, 0])), np.max(np.abs(values[0, :])))
    margins = max(np.max(np.abs(values[:, -1] - t)), np.max(np.abs(values[-1, :] - t)))
    return AxiomReport(
        grid_size=grid_size,
        grounded_error=float(grounded),
        margin_error=float(margins),
        worst_rectangle_mass=worst_rectangle_mass(values),
        tolerance=tolerance,
    )


def frechet_bounds_check(c: CopulaLike, grid_size: int = 101) -> float:
    """Largest violation of W <= C <= M on the grid (<= 0 means none)."""
    t, values = _grid_values(c, grid_size)
    U, V = np.meshgrid(t, t, indexing="ij")
    lower = copula_cdf(CopulaFamily.frechet_lower(), U, V)
    upper = copula_cdf(CopulaFamily.frechet_upper(), U, V)
    return float(np.max(np.maximum(lower - values, values - upper)))


@dataclass(frozen=True)
class QuadrantReport:
    kind: str  # "PQD", "NQD" or "Neither"
    min_gap: float  # min of C - uv over the grid
    max_gap: float  # max of C - uv over the grid


def quadrant_dependence(c: CopulaLike, grid_size: int = 51, tolerance: float = 1e-12) -> QuadrantReport:
    """Classify ``c`` as PQD (C >= uv), NQD (C <= uv) or neither, on a grid.

    Independence satisfies both; it is reported as PQD with zero margin.
    """
    t, values = _grid_values(c, grid_size)
    gap = values - np.outer(t, t)
    lo, hi = float(gap.min()), float(gap.max())
    if lo >= -tolerance:
        kind = "PQD"
    elif hi <= tolerance:
        kind = "NQD"
    else:
        kind = "Neither"
    return QuadrantReport(kind, lo, hi)


# --------------------------------------------------------------------------
# Sklar composition


@dataclass(frozen=True)
class JointModel:
    """A joint distribution F(x, y) = C(F_X(x), F_Y(y))."""

    copula: CopulaFamily
    margin_x: Margin
    margin_y: Margin

    def cdf(self, x, y):
        return joint_cdf(self, x, y)


def joint_cdf(j: JointModel, x, y):
    return copula_cdf(j.copula, margin_cdf(j.margin_x, x), margin_cdf(j.margin_y, y))


def _singular_breaks(j: JointModel):
    """y-locations of the kinks in C(F_X(x), F_Y(y)) for the Frechet bounds."""
    if j.copula.kind not in (CopulaKind.FRECHET_LOWER, CopulaKind.FRECHET_UPPER):
        return None
    eps = 1e-300

    def breaks(x):
        p = np.clip(margin_cdf(j.margin_x, x), eps, 1.0 - 1e-16)
        q = p if j.copula.kind is CopulaKind.FRECHET_UPPER else 1.0 - p
        q = np.clip(q, eps, 1.0 - 1e-16)
        return margin_quantile(j.margin_y, q)[:, None]

    return breaks


def hoeffding_covariance(j: JointModel, quad_points: int = 64, tol: float = 1e-10) -> float:
    """Cov(X, Y) from the integral of F(x, y) - F_X(x) F_Y(y) over the plane.

    The plane is truncated to each margin's central 1 - 2e-10 mass.
    """
    def integrand(x, y):
        fx = margin_cdf(j.margin_x, x)
        fy = margin_cdf(j.margin_y, y)
        return copula_cdf(j.copula, fx, fy) - fx * fy

    return integrate_2d(integrand, j.margin_x.support(), j.margin_y.support(),
                        n=quad_points, tol=tol, y_breaks=_singular_breaks(j))
