"""Pairwise post-hoc tests and homogeneous-subset extraction.

All three methods share the pooled within-group mean square:

* ``bonferroni`` -- pairwise t tests, p multiplied by the number of pairs
  (capped at 1);
* ``tukey`` -- studentized-range test, Tukey-Kramer form for unequal group
  sizes (harmonic mean of the pair's sizes);
* ``scheffe`` -- F-based contrast test, the most conservative for pairs.

Homogeneous subsets are built greedily over the mean ordering: a subset is a
maximal run of consecutive groups whose extreme pair is non-significant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import fisher_f_cdf, student_t_sf_two_sided, studentized_range_sf

__all__ = ["PosthocResult", "posthoc", "POSTHOC_METHODS"]

POSTHOC_METHODS = ("bonferroni", "tukey", "scheffe")


@dataclass(frozen=True)
class PosthocResult:
    method: str
    alpha: float
    groups: tuple[str, ...]
    means: tuple[float, ...]
    pairwise: np.ndarray  # symmetric matrix of adjusted p-values, diagonal 1
    homogeneous_subsets: tuple[tuple[str, ...], ...]

    def pair_p(self, a: str, b: str) -> float:
        i = self.groups.index(a)
        j = self.groups.index(b)
        return float(self.pairwise[i, j])


def posthoc(groups, method: str = "tukey", alpha: float = 0.05, labels=None) -> PosthocResult:
    """Pairwise adjusted p-values and homogeneous subsets for k groups."""
    if method not in POSTHOC_METHODS:
        raise ValueError(f"method must be one of {POSTHOC_METHODS}, got {method!r}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")

    arrays = [np.asarray(g, dtype=float) for g in groups]
    k = len(arrays)
    if k < 2:
        raise ValueError(f"need at least 2 groups, got {k}")
    for i, g in enumerate(arrays):
        if g.size < 2:
            raise ValueError(f"group {i} has {g.size} observation(s), need >= 2")
    if labels is None:
        labels = tuple(f"g{i + 1}" for i in range(k))
    else:
        labels = tuple(str(v) for v in labels)
        if len(labels) != k:
            raise ValueError("labels must match the number of groups")

    sizes = np.array([g.size for g in arrays], dtype=float)
    means = np.array([float(g.mean()) for g in arrays])
    n_total = int(sizes.sum())
    df_error = n_total - k
    ss_within = sum(float(((g - g.mean()) ** 2).sum()) for g in arrays)
    ms_within = ss_within / df_error
    if ms_within <= 0.0:
        raise ValueError("zero within-group variance: post-hoc tests undefined")

    m_pairs = k * (k - 1) // 2
    pmat = np.ones((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            diff = abs(means[i] - means[j])
            inv_n = 1.0 / sizes[i] + 1.0 / sizes[j]
            if method == "bonferroni":
                t = diff / math.sqrt(ms_within * inv_n)
                p = min(1.0, m_pairs * student_t_sf_two_sided(t, df_error))
            elif method == "tukey":
                q = diff / math.sqrt(ms_within * 0.5 * inv_n)
                p = studentized_range_sf(q, k, df_error)
            else:
                f_contrast = diff * diff / (ms_within * inv_n * (k - 1))
                p = min(1.0, max(0.0, 1.0 - fisher_f_cdf(f_contrast, k - 1, df_error)))
            pmat[i, j] = pmat[j, i] = p

    subsets = _homogeneous_subsets(labels, means, pmat, alpha)
    return PosthocResult(
        method=method,
        alpha=alpha,
        groups=labels,
        means=tuple(float(v) for v in means),
        pairwise=pmat,
        homogeneous_subsets=subsets,
    )


def _homogeneous_subsets(labels, means, pmat, alpha):
    order = np.argsort(means, kind="stable")
    k = len(labels)
    subsets: list[tuple[str, ...]] = []
    best_end = -1
    for start in range(k):
        end = start
        for candidate in range(k - 1, start, -1):
            if pmat[order[start], order[candidate]] >= alpha:
                end = candidate
                break
        if end > best_end or not subsets:
            subsets.append(tuple(labels[order[i]] for i in range(start, end + 1)))
            best_end = end
    return tuple(subsets)
