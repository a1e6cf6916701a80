"""Pearson and Spearman correlation with significance tests.

Spearman assigns mid-ranks to ties and correlates the rank vectors; its
p-value uses the t approximation (t = rho * sqrt((n-2)/(1-rho^2))), matching
common statistical packages. For n <= 8 an exact permutation p-value is
available as a cross-check.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .distributions import student_t_sf_two_sided
from .types import TestResult

__all__ = ["midranks", "pearson", "spearman"]


def midranks(values) -> np.ndarray:
    """Ranks 1..n with tied values sharing the mean of their positions."""
    xs = np.asarray(values, dtype=float)
    order = np.argsort(xs, kind="stable")
    sorted_xs = xs[order]
    run_start = np.r_[True, sorted_xs[1:] != sorted_xs[:-1]]
    run_id = np.cumsum(run_start) - 1
    counts = np.bincount(run_id)
    ends = np.cumsum(counts)
    starts = ends - counts + 1
    run_rank = 0.5 * (starts + ends)
    ranks = np.empty(xs.size, dtype=float)
    ranks[order] = run_rank[run_id]
    return ranks


def _corrcoef(x: np.ndarray, y: np.ndarray) -> float:
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise ValueError("correlation undefined for constant input")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r))


def _t_approx_p(r: float, n: int) -> float:
    if abs(r) >= 1.0:
        return 0.0
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    return student_t_sf_two_sided(t, n - 2)


def _check_xy(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size != y.size:
        raise ValueError(f"length mismatch: {x.size} vs {y.size}")
    if x.size < 3:
        raise ValueError(f"need at least 3 observations, got {x.size}")
    return x, y


def pearson(x, y) -> TestResult:
    """Product-moment correlation with a two-sided t-test p-value."""
    x, y = _check_xy(x, y)
    r = _corrcoef(x, y)
    return TestResult(
        method="pearson",
        statistic=r,
        df1=float(x.size - 2),
        df2=None,
        p_value=_t_approx_p(r, x.size),
    )


def spearman(x, y, exact: bool = False) -> TestResult:
    """Rank correlation (mid-ranks for ties).

    With ``exact=True`` (n <= 8 only) the p-value is the exact permutation
    tail probability of |rho| instead of the t approximation.
    """
    x, y = _check_xy(x, y)
    rx = midranks(x)
    ry = midranks(y)
    rho = _corrcoef(rx, ry)
    if not exact:
        p = _t_approx_p(rho, x.size)
    else:
        if x.size > 8:
            raise ValueError("exact permutation p-value is limited to n <= 8")
        p = _exact_permutation_p(rx, ry, rho)
    return TestResult(
        method="spearman",
        statistic=rho,
        df1=float(x.size - 2),
        df2=None,
        p_value=p,
    )


def _exact_permutation_p(rx: np.ndarray, ry: np.ndarray, rho_obs: float) -> float:
    n = rx.size
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    denom = math.sqrt(float(dx @ dx) * float(dy @ dy))
    threshold = abs(rho_obs) - 1e-12
    hits = 0
    total = 0
    for perm in itertools.permutations(range(n)):
        rho = float(dx @ dy[list(perm)]) / denom
        if abs(rho) >= threshold:
            hits += 1
        total += 1
    return hits / total
