"""Semantics-of-information measures.

Utility-weighted and Renyi entropies, divergence-based reconstruction quality
indicators, exponential timeliness, and the weighted accuracy/timeliness
composite value.  All log-based quantities take the base as an explicit
parameter (default 2, i.e. bits) and use the convention ``0 * log 0 = 0``.
"""

from __future__ import annotations

import math

import numpy as np

SUM_TOL = 1e-12


def _as_distribution(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise ValueError("a distribution must be a non-empty 1-d vector")
    if np.any(p < 0.0):
        raise ValueError("probabilities must be non-negative")
    if abs(float(p.sum()) - 1.0) > SUM_TOL:
        raise ValueError("probabilities must sum to 1")
    return p


def _as_weights(w, n: int) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    if w.shape != (n,):
        raise ValueError("weight vector length must match the distribution")
    if np.any(w < 0.0):
        raise ValueError("weights must be non-negative")
    return w


def _check_base(base: float) -> float:
    if not base > 1.0:
        raise ValueError("log base must be > 1")
    return math.log(base)


def weighted_entropy(p, w, base: float = 2.0) -> float:
    """Utility-weighted entropy ``-sum_y w[y] p[y] log(p[y])``.

    The weights encode how much each outcome matters for the goal at hand;
    with unit weights this reduces to Shannon entropy.
    """
    p = _as_distribution(p)
    w = _as_weights(w, p.size)
    log_base = _check_base(base)
    mask = p > 0.0
    return float(-(w[mask] * p[mask] * np.log(p[mask])).sum() / log_base)


def renyi_entropy(p, alpha: float, base: float = 2.0) -> float:
    """Renyi entropy of order ``alpha``: ``log(sum p^alpha) / (1 - alpha)``."""
    p = _as_distribution(p)
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    if alpha == 1.0:
        raise ValueError(
            "alpha = 1 is the Shannon limit; use weighted_entropy with unit weights"
        )
    log_base = _check_base(base)
    power_sum = float((p[p > 0.0] ** alpha).sum())
    return math.log(power_sum) / ((1.0 - alpha) * log_base)


def kl_divergence(p, q, base: float = 2.0) -> float:
    """Kullback-Leibler divergence ``sum p log(p/q)``.

    Returns ``math.inf`` when ``p`` puts mass where ``q`` does not; the
    divergence genuinely diverges there and no finite sentinel is faked.
    """
    p = _as_distribution(p)
    q = _as_distribution(q)
    if p.shape != q.shape:
        raise ValueError("distributions must have the same length")
    log_base = _check_base(base)
    mask = p > 0.0
    if np.any(q[mask] == 0.0):
        return math.inf
    return float((p[mask] * np.log(p[mask] / q[mask])).sum() / log_base)


def total_variation(p, q) -> float:
    """Total variation distance ``0.5 * sum |p - q|``, in [0, 1]."""
    p = _as_distribution(p)
    q = _as_distribution(q)
    if p.shape != q.shape:
        raise ValueError("distributions must have the same length")
    return float(0.5 * np.abs(p - q).sum())


def timeliness(aoi: float, gamma: float) -> float:
    """Exponentially decaying freshness ``exp(-gamma * aoi)``, in (0, 1]."""
    if aoi < 0:
        raise ValueError("age of information cannot be negative")
    if gamma < 0:
        raise ValueError("decay rate must be non-negative")
    return math.exp(-gamma * aoi)


def semantic_value(w1: float, w2: float, accuracy: float, aoi: float, gamma: float) -> float:
    """Composite semantic value: ``w1 * accuracy + w2 * timeliness(aoi, gamma)``."""
    return w1 * accuracy + w2 * timeliness(aoi, gamma)


def time_avg_mse(x, xhat) -> float:
    """Time-averaged mean squared error between two equal-length trajectories.

    For binary 0/1 trajectories this equals the fraction of slots in which
    the two sequences disagree.
    """
    x = np.asarray(x, dtype=float)
    xhat = np.asarray(xhat, dtype=float)
    if x.shape != xhat.shape or x.ndim != 1 or x.size == 0:
        raise ValueError("trajectories must be non-empty and of equal length")
    return float(np.mean((x - xhat) ** 2))
