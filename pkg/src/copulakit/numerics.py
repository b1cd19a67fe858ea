"""Special functions and generic numerical routines.

Everything here accepts scalars or numpy arrays; scalar input gives a Python
float back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
import scipy.optimize
from scipy.special import erfc

from .errors import ConvergenceError, DomainError

SQRT2 = math.sqrt(2.0)
SQRT2PI = math.sqrt(2.0 * math.pi)


def _as_output(values, scalar):
    return float(values) if scalar else values


def std_normal_cdf(x):
    """Standard normal CDF, computed from the complementary error function.

    ``erfc`` keeps full relative accuracy in the lower tail, so
    ``std_normal_cdf(-8)`` is ~6.2e-16 rather than a rounded zero.
    """
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    return _as_output(0.5 * erfc(-x / SQRT2), scalar)


def std_normal_pdf(x):
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    return _as_output(np.exp(-0.5 * x * x) / SQRT2PI, scalar)


# Acklam's rational approximation, relative error ~1.15e-9 before refinement.
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)
_P_LOW = 0.02425


def _lower_half_quantile(q):
    """Quantile for ``0 < q <= 0.5`` (Acklam start + one Halley step)."""
    x = np.empty_like(q)
    tail = q < _P_LOW
    if np.any(tail):
        t = np.sqrt(-2.0 * np.log(q[tail]))
        num = ((((_C[0] * t + _C[1]) * t + _C[2]) * t + _C[3]) * t + _C[4]) * t + _C[5]
        den = (((_D[0] * t + _D[1]) * t + _D[2]) * t + _D[3]) * t + 1.0
        x[tail] = num / den
    mid = ~tail
    if np.any(mid):
        s = q[mid] - 0.5
        r = s * s
        num = (((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * s
        den = ((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0
        x[mid] = num / den
    # Halley step against the erfc-based CDF.
    e = 0.5 * erfc(-x / SQRT2) - q
    u = e * SQRT2PI * np.exp(0.5 * x * x)
    return x - u / (1.0 + 0.5 * x * u)


def std_normal_quantile(p):
    """Inverse of :func:`std_normal_cdf` on the open interval (0, 1).

    The upper half is obtained by reflection, so the result is exactly
    antisymmetric about ``p = 0.5``.
    """
    scalar = np.ndim(p) == 0
    p = np.asarray(p, dtype=float)
    if np.any(~((p > 0.0) & (p < 1.0))):
        raise DomainError("std_normal_quantile requires 0 < p < 1")
    flat = p.reshape(-1)
    upper = flat > 0.5
    q = np.where(upper, 1.0 - flat, flat)
    x = _lower_half_quantile(q)
    x = np.where(upper, -x, x)
    x[flat == 0.5] = 0.0
    return _as_output(x.reshape(p.shape), scalar)


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on the reference interval [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray

    def __len__(self):
        return len(self.nodes)

    def on_interval(self, a, b):
        """Nodes and weights mapped affinely onto ``[a, b]``."""
        half = 0.5 * (b - a)
        return 0.5 * (a + b) + half * self.nodes, half * self.weights

    def composite(self, a, b, panels):
        """Nodes and weights of the rule repeated over ``panels`` equal pieces."""
        edges = np.linspace(a, b, panels + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[:-1] + edges[1:])
        x = (mid[:, None] + half[:, None] * self.nodes[None, :]).ravel()
        w = (half[:, None] * self.weights[None, :]).ravel()
        return x, w


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> QuadratureRule:
    """The ``n``-point Gauss-Legendre rule, exact for degree ``2n - 1``."""
    if isinstance(n, bool) or int(n) != n or not 2 <= n <= 256:
        raise DomainError(f"gauss_legendre supports 2 <= n <= 256, got {n!r}")
    x, w = np.polynomial.legendre.leggauss(int(n))
    # Enforce exact mirror symmetry; leggauss can differ from it in the last ulp.
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    x.setflags(write=False)
    w.setflags(write=False)
    return QuadratureRule(nodes=x, weights=w)


def integrate(f: Callable, a: float, b: float, n: int = 64, tol: float = 1e-10,
              max_panels: int = 4096) -> float:
    """Composite Gauss-Legendre quadrature of a vectorised ``f`` over ``[a, b]``.

    The panel count doubles until two successive estimates agree to ``tol``.
    """
    rule = gauss_legendre(n)
    panels = 1
    x, w = rule.composite(a, b, panels)
    prev = float(np.dot(w, f(x)))
    while panels < max_panels:
        panels *= 2
        x, w = rule.composite(a, b, panels)
        est = float(np.dot(w, f(x)))
        if abs(est - prev) < tol:
            return est
        prev = est
    raise ConvergenceError(f"quadrature did not reach tol={tol} with {max_panels} panels")


_BLOCK_POINTS = 200_000


def integrate_2d(f: Callable, x_range, y_range, n: int = 64, tol: float = 1e-10,
                 y_breaks: Callable | None = None, max_panels: int = 64) -> float:
    """Tensor Gauss-Legendre quadrature of ``f(x, y)`` over a rectangle.

    ``y_breaks(x)`` may return, for each outer node, points where the
    integrand has a kink in ``y`` (shape ``(len(x), k)``). The inner interval
    is split there so every piece is smooth. The rule is refined by doubling
    the panel count per axis until successive estimates agree to ``tol``.
    """
    xa, xb = x_range
    ya, yb = y_range
    rule = gauss_legendre(n)

    def estimate(panels):
        x, wx = rule.composite(xa, xb, panels)
        if y_breaks is None:
            cuts = np.empty((len(x), 0))
        else:
            cuts = np.sort(np.clip(np.asarray(y_breaks(x), dtype=float).reshape(len(x), -1), ya, yb), axis=1)
        edges = np.hstack([np.full((len(x), 1), ya), cuts, np.full((len(x), 1), yb)])
        ref_x, ref_w = rule.composite(-1.0, 1.0, panels)
        lo, hi = edges[:, :-1], edges[:, 1:]
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        # (outer node, segment, inner node)
        # Evaluated in blocks of outer nodes to bound memory.
        step = max(1, _BLOCK_POINTS // (edges.shape[1] * len(ref_x)))
        total = 0.0
        for i in range(0, len(x), step):
            sl = slice(i, i + step)
            Y = mid[sl, :, None] + half[sl, :, None] * ref_x[None, None, :]
            W = half[sl, :, None] * ref_w[None, None, :] * wx[sl, None, None]
            X = np.broadcast_to(x[sl, None, None], Y.shape)
            total += float(np.sum(W * f(X, Y)))
        return total

    panels = 1
    prev = estimate(panels)
    while panels < max_panels:
        panels *= 2
        est = estimate(panels)
        if abs(est - prev) < tol:
            return est
        prev = est
    raise ConvergenceError(f"2-D quadrature did not reach tol={tol}")


_SHEPPARD_RULE_POINTS = 16


def _sheppard_integral(x, y, rho, tol):
    """(1/2pi) * integral over t in [0, asin(rho)] of the bivariate normal kernel.

    Substituting r = sin(t) removes the (1 - r^2)^(-1/2) endpoint singularity.
    Refinement is per point: only entries not yet converged are re-evaluated.
    """
    end = math.asin(rho)
    rule = gauss_legendre(_SHEPPARD_RULE_POINTS)
    xx = x * x + y * y
    xy = 2.0 * x * y

    def evaluate(idx, panels):
        t, w = rule.composite(0.0, end, panels)
        s = np.sin(t)
        c2 = np.cos(t) ** 2
        expo = -(xx[idx, None] - xy[idx, None] * s[None, :]) / (2.0 * c2[None, :])
        return np.exp(expo) @ w

    panels = 4
    result = evaluate(slice(None), panels)
    active = np.arange(len(x))
    while active.size:
        if panels >= 8192:
            raise ConvergenceError("bivariate normal integral failed to converge")
        panels *= 2
        refined = evaluate(active, panels)
        done = np.abs(refined - result[active]) < tol
        result[active] = refined
        active = active[~done]
    return result / (2.0 * math.pi)


def bivariate_normal_cdf(x, y, rho: float, tol: float = 1e-13):
    """P(Z1 <= x, Z2 <= y) for standard normals with correlation ``rho``.

    Uses Phi(x)Phi(y) plus the integral of the density over the
    correlation, evaluated with adaptive Gauss-Legendre. ``x`` and ``y`` may be
    infinite.
    """
    if not -1.0 < rho < 1.0:
        raise DomainError(f"bivariate_normal_cdf requires |rho| < 1, got {rho}")
    scalar = np.ndim(x) == 0 and np.ndim(y) == 0
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    shape = x.shape
    x = x.ravel()
    y = y.ravel()
    px = std_normal_cdf(x)
    py = std_normal_cdf(y)
    out = np.zeros(x.shape)

    zero = (x == -np.inf) | (y == -np.inf)
    x_top = (x == np.inf) & ~zero
    y_top = (y == np.inf) & ~zero & ~x_top
    out[x_top] = py[x_top]
    out[y_top] = px[y_top]
    finite = ~(zero | x_top | y_top)
    if np.any(finite):
        base = px[finite] * py[finite]
        if rho != 0.0:
            base = base + _sheppard_integral(x[finite], y[finite], rho, tol)
        # The exact value always lies inside the Frechet-Hoeffding envelope.
        lower = np.maximum(px[finite] + py[finite] - 1.0, 0.0)
        upper = np.minimum(px[finite], py[finite])
        out[finite] = np.clip(base, lower, upper)
    return _as_output(out.reshape(shape), scalar)


def minimize_scalar(f: Callable[[float], float], lo: float, hi: float,
                    tol: float = 1e-8, max_evaluations: int = 500):
    """Bounded 1-D minimisation (golden section with parabolic steps).

    Returns ``(argmin, min)``. Raises :class:`ConvergenceError` when the
    evaluation budget runs out.
    """
    if not lo < hi:
        raise DomainError(f"minimize_scalar needs lo < hi, got [{lo}, {hi}]")
    res = scipy.optimize.minimize_scalar(
        f, bounds=(lo, hi), method="bounded",
        options={"xatol": tol, "maxiter": max_evaluations},
    )
    if res.status != 0 or not np.isfinite(res.fun):
        raise ConvergenceError(f"minimize_scalar stopped without converging: {res.message}")
    return float(res.x), float(res.fun)
