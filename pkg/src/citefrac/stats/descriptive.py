"""Five-number summaries with Tukey-style whiskers, for boxplot output."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..kernels import csum

__all__ = ["SampleSummary", "summarize"]


@dataclass(frozen=True)
class SampleSummary:
    n: int
    mean: float
    sd: float | None
    sem: float | None
    median: float
    q1: float
    q3: float
    whisker_low: float
    whisker_high: float
    outliers: tuple[float, ...]


def summarize(values) -> SampleSummary:
    """Descriptive summary of a sample.

    Quartiles use linear interpolation between order statistics; whiskers
    extend to the most extreme observation within 1.5 IQR of the quartiles
    and anything beyond is reported as an outlier.
    """
    xs = np.asarray(list(values), dtype=float)
    if xs.size == 0:
        raise ValueError("cannot summarize an empty sample")
    n = int(xs.size)
    mean = csum(xs) / n
    if n > 1:
        sd = math.sqrt(csum((xs - mean) ** 2) / (n - 1))
        sem = sd / math.sqrt(n)
    else:
        sd = sem = None

    q1, median, q3 = (float(v) for v in np.percentile(xs, [25.0, 50.0, 75.0]))
    iqr = q3 - q1
    low_fence = q1 - 1.5 * iqr
    high_fence = q3 + 1.5 * iqr

    inside = xs[(xs >= low_fence) & (xs <= high_fence)]
    # fences always contain the quartiles, so `inside` is never empty
    whisker_low = float(inside.min())
    whisker_high = float(inside.max())
    outliers = tuple(float(v) for v in np.sort(xs[(xs < low_fence) | (xs > high_fence)]))

    return SampleSummary(
        n=n,
        mean=float(mean),
        sd=sd,
        sem=sem,
        median=median,
        q1=q1,
        q3=q3,
        whisker_low=whisker_low,
        whisker_high=whisker_high,
        outliers=outliers,
    )
