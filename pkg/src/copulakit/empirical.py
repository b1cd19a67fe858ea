"""Ranks, pseudo-observations and rank statistics."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .errors import DomainError


class TiesWarning(UserWarning):
    """Emitted when input data contain ties and midranks are used."""


@dataclass(frozen=True)
class RankedSample:
    """Ranks of a bivariate sample and its pseudo-observations R/(n+1), S/(n+1).

    Ranks are 1-based; tied values receive their midrank and set ``ties``.
    """

    ranks_x: np.ndarray
    ranks_y: np.ndarray
    ties: bool = False

    @property
    def n(self) -> int:
        return len(self.ranks_x)

    @property
    def pseudo(self) -> np.ndarray:
        """``(n, 2)`` array of pseudo-observations, strictly inside (0, 1)^2."""
        return np.column_stack([self.ranks_x, self.ranks_y]) / (self.n + 1)

    @property
    def u(self) -> np.ndarray:
        return self.ranks_x / (self.n + 1)

    @property
    def v(self) -> np.ndarray:
        return self.ranks_y / (self.n + 1)


def rank_transform(data) -> RankedSample:
    """Rank each column of an ``(n, 2)`` array-like of (x, y) pairs."""
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise DomainError(f"expected an (n, 2) array of pairs, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise DomainError("rank_transform needs at least 2 observations")
    if np.isnan(arr).any():
        raise DomainError("rank_transform: NaN coordinates are not allowed")
    rx = rankdata(arr[:, 0], method="average")
    ry = rankdata(arr[:, 1], method="average")
    ties = len(np.unique(arr[:, 0])) < len(arr) or len(np.unique(arr[:, 1])) < len(arr)
    if ties:
        warnings.warn("ties in data; midranks used", TiesWarning, stacklevel=2)
    rx.setflags(write=False)
    ry.setflags(write=False)
    return RankedSample(rx, ry, ties)


def empirical_copula(rs: RankedSample, u, v):
    """C_n(u, v) = (1/n) #{i : R_i/(n+1) <= u, S_i/(n+1) <= v}."""
    scalar = np.ndim(u) == 0 and np.ndim(v) == 0
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    pu, pv = rs.u, rs.v
    flat_u, flat_v = u.ravel(), v.ravel()
    out = np.empty(flat_u.shape)
    # Chunked so the (queries x n) indicator matrix stays small.
    step = max(1, 2_000_000 // max(rs.n, 1))
    for start in range(0, len(flat_u), step):
        qu = flat_u[start:start + step, None]
        qv = flat_v[start:start + step, None]
        out[start:start + step] = np.count_nonzero((pu[None, :] <= qu) & (pv[None, :] <= qv), axis=1)
    out = (out / rs.n).reshape(u.shape)
    return float(out) if scalar else out


def concordance_counts(rs: RankedSample) -> tuple[int, int]:
    """Numbers of concordant and discordant pairs, by brute force over all i < j.

    Tied pairs count as neither.
    """
    x = np.asarray(rs.ranks_x)
    y = np.asarray(rs.ranks_y)
    n = len(x)
    concordant = discordant = 0
    block = 256
    for start in range(0, n - 1, block):
        stop = min(start + block, n - 1)
        i = np.arange(start, stop)
        sx = np.sign(x[None, start:] - x[i, None])
        sy = np.sign(y[None, start:] - y[i, None])
        prod = sx * sy
        # keep only j > i
        mask = np.arange(start, n)[None, :] > i[:, None]
        concordant += int(np.count_nonzero((prod > 0) & mask))
        discordant += int(np.count_nonzero((prod < 0) & mask))
    return concordant, discordant


def sample_kendall_tau(rs: RankedSample) -> float:
    """(concordant - discordant) / (n choose 2)."""
    if rs.n < 2:
        raise DomainError("sample_kendall_tau needs n >= 2")
    c, d = concordance_counts(rs)
    return (c - d) / (rs.n * (rs.n - 1) / 2)


def sample_spearman_rho(rs: RankedSample) -> float:
    """Pearson correlation of the two rank vectors."""
    if rs.n < 2:
        raise DomainError("sample_spearman_rho needs n >= 2")
    rx = rs.ranks_x - np.mean(rs.ranks_x)
    ry = rs.ranks_y - np.mean(rs.ranks_y)
    denom = np.sqrt(np.dot(rx, rx) * np.dot(ry, ry))
    if denom == 0:
        raise DomainError("sample_spearman_rho: ranks have zero variance")
    return float(np.dot(rx, ry) / denom)
