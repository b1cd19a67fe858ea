"""Seeded samplers for the copula families and Sklar-composed joint models.

Every sampler is a deterministic function of the uniform stream drawn from a
:class:`RandomSource`; normal variates come from the quantile transform, not
from a rejection method.
"""

from __future__ import annotations

import math

import numpy as np

from .copulas import CopulaFamily, CopulaKind, JointModel
from .errors import DomainError
from .margins import margin_quantile
from .numerics import std_normal_cdf, std_normal_quantile

_HALF_ULP = 0.5 / 2.0**53
_STABLE_GUARD = 1e-12


class RandomSource:
    """A seeded 64-bit generator (PCG64) owned by a single thread.

    Use :meth:`split` to derive independent child streams for parallel work.
    """

    def __init__(self, seed: int = 0, *, _seed_sequence=None):
        if _seed_sequence is None:
            if not 0 <= int(seed) < 2**64:
                raise DomainError("seed must be an unsigned 64-bit integer")
            _seed_sequence = np.random.SeedSequence(int(seed))
        self.seed = int(seed)
        self._seq = _seed_sequence
        self._gen = np.random.Generator(np.random.PCG64(_seed_sequence))

    def split(self, count: int) -> list["RandomSource"]:
        """Child sources via ``SeedSequence.spawn``; they share no state with the parent."""
        return [RandomSource(self.seed, _seed_sequence=s) for s in self._seq.spawn(count)]

    def uniform(self, size=None):
        """Uniforms strictly inside (0, 1): k / 2^53 shifted by half a step."""
        return self._gen.random(size) + _HALF_ULP

    def exponential(self, size=None):
        return -np.log(self.uniform(size))

    def std_normal(self, size=None):
        return std_normal_quantile(self.uniform(size))


def _count(n):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"sample size must be a positive integer, got {n!r}")
    return int(n)


def _open_unit(x):
    """Clamp values that rounded onto 0 or 1 back inside the open interval."""
    return np.clip(x, np.nextafter(0.0, 1.0), np.nextafter(1.0, 0.0))


def clayton_conditional_inverse(u, w, theta):
    """Solve dC(u, v)/du = w for v under the Clayton copula.

    Algebraically this is ((w^(1/(1+theta)) u)^-theta + 1 - u^-theta)^(-1/theta);
    it is evaluated as u * (w^(-theta/(1+theta)) - 1 + u^theta)^(-1/theta),
    which never forms u^-theta and so cannot overflow.
    """
    u = np.asarray(u, dtype=float)
    w = np.asarray(w, dtype=float)
    inner = np.expm1(-theta / (1.0 + theta) * np.log(w)) + np.power(u, theta)
    return u * np.power(inner, -1.0 / theta)


def sample_clayton(rng: RandomSource, n: int, theta: float) -> np.ndarray:
    """Conditional-distribution sampler; returns an ``(n, 2)`` array of (u, v)."""
    n = _count(n)
    CopulaFamily.clayton(theta)
    u = rng.uniform(n)
    w = rng.uniform(n)
    v = _open_unit(clayton_conditional_inverse(u, w, theta))
    return np.column_stack([u, v])


def sample_gaussian(rng: RandomSource, n: int, rho: float) -> np.ndarray:
    n = _count(n)
    CopulaFamily.gaussian(rho)
    z1 = rng.std_normal(n)
    z2 = rng.std_normal(n)
    z2 = rho * z1 + math.sqrt(1.0 - rho * rho) * z2
    return np.column_stack([_open_unit(std_normal_cdf(z1)), _open_unit(std_normal_cdf(z2))])


def sample_positive_stable(rng: RandomSource, alpha: float, size=None):
    """Positive alpha-stable variates with Laplace transform exp(-t^alpha).

    Kanter's representation in V ~ Uniform(0, pi) and E ~ Exp(1). Draws of V
    within 1e-12 of 0 or pi are redrawn.
    """
    if not 0 < alpha <= 1:
        raise DomainError(f"positive stable sampler needs 0 < alpha <= 1, got {alpha}")
    shape = () if size is None else size
    v = math.pi * rng.uniform(shape)
    bad = (v < _STABLE_GUARD) | (v > math.pi - _STABLE_GUARD)
    while np.any(bad):
        v = np.where(bad, math.pi * rng.uniform(shape), v)
        bad = (v < _STABLE_GUARD) | (v > math.pi - _STABLE_GUARD)
    e = rng.exponential(shape)
    if alpha == 1.0:
        s = np.ones(shape)
    else:
        s = (np.sin(alpha * v) / np.sin(v) ** (1.0 / alpha)
             * (np.sin((1.0 - alpha) * v) / e) ** ((1.0 - alpha) / alpha))
    return float(s) if size is None else s


def sample_gumbel(rng: RandomSource, n: int, theta: float) -> np.ndarray:
    """Marshall-Olkin sampler with a positive stable frailty, alpha = 1/theta."""
    n = _count(n)
    CopulaFamily.gumbel(theta)
    alpha = 1.0 / theta
    s = sample_positive_stable(rng, alpha, n)
    e1 = rng.exponential(n)
    e2 = rng.exponential(n)
    u = np.exp(-((e1 / s) ** alpha))
    v = np.exp(-((e2 / s) ** alpha))
    return np.column_stack([_open_unit(u), _open_unit(v)])


def sample_copula(rng: RandomSource, c: CopulaFamily, n: int) -> np.ndarray:
    """Draw ``n`` pseudo-observation pairs from any supported family."""
    n = _count(n)
    if c.kind is CopulaKind.CLAYTON:
        return sample_clayton(rng, n, c.parameter)
    if c.kind is CopulaKind.GUMBEL:
        return sample_gumbel(rng, n, c.parameter)
    if c.kind is CopulaKind.GAUSSIAN:
        return sample_gaussian(rng, n, c.parameter)
    u = rng.uniform(n)
    if c.kind is CopulaKind.INDEPENDENCE:
        v = rng.uniform(n)
    elif c.kind is CopulaKind.FRECHET_UPPER:
        v = u.copy()
    else:
        v = 1.0 - u
    return np.column_stack([u, v])


def sample_joint(rng: RandomSource, j: JointModel, n: int) -> np.ndarray:
    """(x, y) = (F_X^-1(U), F_Y^-1(V)) for (U, V) drawn from the copula."""
    uv = sample_copula(rng, j.copula, n)
    x = margin_quantile(j.margin_x, uv[:, 0])
    y = margin_quantile(j.margin_y, uv[:, 1])
    return np.column_stack([x, y])
