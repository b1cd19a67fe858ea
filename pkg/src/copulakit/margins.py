"""Univariate margins: uniform, exponential, standard normal and lognormal."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError
from .numerics import std_normal_cdf, std_normal_pdf, std_normal_quantile


class MarginKind(Enum):
    UNIFORM = "uniform"
    EXPONENTIAL = "exp"
    STD_NORMAL = "stdnormal"
    LOGNORMAL = "lognormal"


@dataclass(frozen=True)
class Margin:
    """A continuous univariate distribution.

    ``parameter`` is the rate for the exponential and the shape ``s`` of
    ``exp(s * Z)`` for the lognormal; it is ignored otherwise.
    """

    kind: MarginKind
    parameter: float = 1.0

    def __post_init__(self):
        if self.kind in (MarginKind.EXPONENTIAL, MarginKind.LOGNORMAL):
            if not (math.isfinite(self.parameter) and self.parameter > 0):
                raise DomainError(f"{self.kind.value} margin needs a positive parameter, got {self.parameter}")

    @classmethod
    def uniform(cls):
        return cls(MarginKind.UNIFORM)

    @classmethod
    def exponential(cls, rate=1.0):
        return cls(MarginKind.EXPONENTIAL, float(rate))

    @classmethod
    def std_normal(cls):
        return cls(MarginKind.STD_NORMAL)

    @classmethod
    def lognormal(cls, shape=1.0):
        return cls(MarginKind.LOGNORMAL, float(shape))

    def __str__(self):
        if self.kind in (MarginKind.EXPONENTIAL, MarginKind.LOGNORMAL):
            return f"{self.kind.value}:{self.parameter:g}"
        return self.kind.value

    def cdf(self, x):
        return margin_cdf(self, x)

    def quantile(self, p):
        return margin_quantile(self, p)

    def pdf(self, x):
        return margin_pdf(self, x)

    def support(self, mass=1e-10):
        """An interval holding all but ``2 * mass`` of the probability."""
        lo = 0.0 if self.kind is not MarginKind.STD_NORMAL else margin_quantile(self, mass)
        hi = 1.0 if self.kind is MarginKind.UNIFORM else margin_quantile(self, 1.0 - mass)
        return lo, hi


def _scalar_out(values, scalar):
    return float(values) if scalar else values


def margin_cdf(m: Margin, x):
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    if m.kind is MarginKind.UNIFORM:
        out = np.clip(x, 0.0, 1.0)
    elif m.kind is MarginKind.EXPONENTIAL:
        out = -np.expm1(-m.parameter * np.maximum(x, 0.0))
    elif m.kind is MarginKind.STD_NORMAL:
        out = std_normal_cdf(x)
    else:
        with np.errstate(divide="ignore"):
            z = np.where(x > 0, np.log(np.where(x > 0, x, 1.0)) / m.parameter, -np.inf)
        out = std_normal_cdf(z)
    return _scalar_out(out, scalar)


def margin_quantile(m: Margin, p):
    scalar = np.ndim(p) == 0
    p = np.asarray(p, dtype=float)
    if np.any(~((p > 0.0) & (p < 1.0))):
        raise DomainError("margin_quantile requires 0 < p < 1")
    if m.kind is MarginKind.UNIFORM:
        out = p.copy()
    elif m.kind is MarginKind.EXPONENTIAL:
        out = -np.log1p(-p) / m.parameter
    elif m.kind is MarginKind.STD_NORMAL:
        out = std_normal_quantile(p)
    else:
        out = np.exp(m.parameter * std_normal_quantile(p))
    return _scalar_out(out, scalar)


def margin_pdf(m: Margin, x):
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    if m.kind is MarginKind.UNIFORM:
        out = ((x >= 0.0) & (x <= 1.0)).astype(float)
    elif m.kind is MarginKind.EXPONENTIAL:
        out = np.where(x >= 0.0, m.parameter * np.exp(-m.parameter * np.abs(x)), 0.0)
    elif m.kind is MarginKind.STD_NORMAL:
        out = std_normal_pdf(x)
    else:
        s = m.parameter
        pos = x > 0
        safe = np.where(pos, x, 1.0)
        out = np.where(pos, std_normal_pdf(np.log(safe) / s) / (s * safe), 0.0)
    return _scalar_out(out, scalar)


def parse_margin(text: str) -> Margin:
    """Parse ``uniform``, ``exp:<rate>``, ``stdnormal`` or ``lognormal:<s>``."""
    token = text.strip()
    name, _, arg = token.partition(":")
    name = name.lower()
    try:
        if name == "uniform" and not arg:
            return Margin.uniform()
        if name == "stdnormal" and not arg:
            return Margin.std_normal()
        if name == "exp" and arg:
            return Margin.exponential(float(arg))
        if name == "lognormal" and arg:
            return Margin.lognormal(float(arg))
    except ValueError as exc:
        raise DomainError(f"bad margin spec {token!r}: {exc}") from None
    raise DomainError(f"bad margin spec {token!r}")
