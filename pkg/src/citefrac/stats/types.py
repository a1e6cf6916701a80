"""Shared result containers for the statistical tests."""

from __future__ import annotations

from dataclasses import dataclass

METHODS = ("pearson", "spearman", "anova", "welch", "kruskal_wallis")


@dataclass(frozen=True)
class TestResult:
    """Outcome of a significance test.

    ``statistic`` is the method's headline number (r, rho, F, H). ``p_value``
    is None when the test is undefined for the data (e.g. all observations
    identical). ``df2`` is None for single-df tests.
    """

    method: str
    statistic: float
    df1: float | None
    df2: float | None
    p_value: float | None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.p_value is not None and not 0.0 <= self.p_value <= 1.0:
            raise ValueError(f"p-value out of range: {self.p_value}")
