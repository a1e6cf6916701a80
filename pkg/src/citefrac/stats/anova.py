"""Omnibus k-group tests: one-way ANOVA, Welch's robust variant, Kruskal-Wallis."""

from __future__ import annotations

import math

import numpy as np

from .correlation import midranks
from .distributions import chi_squared_cdf, fisher_f_cdf
from .types import TestResult

__all__ = ["kruskal_wallis", "one_way_anova", "welch_anova"]


def _as_groups(groups, min_size=2):
    arrays = [np.asarray(g, dtype=float) for g in groups]
    if len(arrays) < 2:
        raise ValueError(f"need at least 2 groups, got {len(arrays)}")
    for i, g in enumerate(arrays):
        if g.size < min_size:
            raise ValueError(f"group {i} has {g.size} observation(s), need >= {min_size}")
    return arrays


def one_way_anova(groups) -> TestResult:
    """Classic equal-variance F test of equal group means."""
    arrays = _as_groups(groups)
    k = len(arrays)
    n_total = sum(g.size for g in arrays)
    df1 = k - 1
    df2 = n_total - k
    if df2 <= 0:
        raise ValueError("not enough observations for within-group degrees of freedom")

    grand = sum(float(g.sum()) for g in arrays) / n_total
    ss_between = sum(g.size * (float(g.mean()) - grand) ** 2 for g in arrays)
    ss_within = sum(float(((g - g.mean()) ** 2).sum()) for g in arrays)
    ms_between = ss_between / df1
    ms_within = ss_within / df2

    if ms_within == 0.0:
        if ms_between == 0.0:
            # all observations identical: the ratio is undefined
            return TestResult("anova", 0.0, float(df1), float(df2), None)
        return TestResult("anova", math.inf, float(df1), float(df2), 0.0)
    f = ms_between / ms_within
    p = min(1.0, max(0.0, 1.0 - fisher_f_cdf(f, df1, df2)))
    return TestResult("anova", f, float(df1), float(df2), p)


def welch_anova(groups) -> TestResult:
    """Welch's heteroscedasticity-robust test of equal means."""
    arrays = _as_groups(groups)
    k = len(arrays)
    variances = [float(g.var(ddof=1)) for g in arrays]
    for i, v in enumerate(variances):
        if v == 0.0:
            raise ValueError(f"group {i} has zero variance; Welch statistic undefined")

    w = np.array([g.size / v for g, v in zip(arrays, variances)])
    means = np.array([float(g.mean()) for g in arrays])
    w_total = float(w.sum())
    weighted_mean = float((w * means).sum()) / w_total

    numerator = float((w * (means - weighted_mean) ** 2).sum()) / (k - 1)
    lam = sum(
        (1.0 - w_i / w_total) ** 2 / (g.size - 1) for w_i, g in zip(w, arrays)
    )
    denominator = 1.0 + 2.0 * (k - 2) / (k * k - 1.0) * lam
    statistic = numerator / denominator
    df2 = (k * k - 1.0) / (3.0 * lam) if lam > 0 else math.inf

    if statistic == 0.0:
        p = 1.0
    elif math.isinf(df2):
        p = min(1.0, max(0.0, 1.0 - chi_squared_cdf(statistic * (k - 1), k - 1)))
    else:
        p = min(1.0, max(0.0, 1.0 - fisher_f_cdf(statistic, k - 1, df2)))
    return TestResult("welch", statistic, float(k - 1), df2, p)


def kruskal_wallis(groups) -> TestResult:
    """Rank-based test of equal distributions, with tie correction."""
    arrays = _as_groups(groups, min_size=1)
    n_total = sum(g.size for g in arrays)
    if n_total < 3:
        raise ValueError("need at least 3 observations in total")
    k = len(arrays)

    pooled = np.concatenate(arrays)
    ranks = midranks(pooled)
    h = 0.0
    offset = 0
    for g in arrays:
        r = ranks[offset : offset + g.size]
        h += float(r.sum()) ** 2 / g.size
        offset += g.size
    h = 12.0 / (n_total * (n_total + 1.0)) * h - 3.0 * (n_total + 1.0)

    # tie correction: divide by 1 - sum(t^3 - t) / (N^3 - N)
    _, tie_counts = np.unique(pooled, return_counts=True)
    tie_term = float((tie_counts.astype(float) ** 3 - tie_counts).sum())
    correction = 1.0 - tie_term / (n_total**3 - n_total)
    if correction <= 0.0:
        # every observation identical: H undefined
        return TestResult("kruskal_wallis", 0.0, float(k - 1), None, None)
    h = max(0.0, h / correction)

    p = min(1.0, max(0.0, 1.0 - chi_squared_cdf(h, k - 1)))
    return TestResult("kruskal_wallis", h, float(k - 1), None, p)
