"""Statistical machinery: distributions, descriptives, correlation, ANOVA, post-hoc."""

from .anova import kruskal_wallis, one_way_anova, welch_anova
from .correlation import midranks, pearson, spearman
from .descriptive import SampleSummary, summarize
from .distributions import (
    chi_squared_cdf,
    dist_cdf,
    fisher_f_cdf,
    student_t_cdf,
    student_t_sf_two_sided,
    studentized_range_cdf,
    studentized_range_ppf,
    studentized_range_sf,
)
from .posthoc import POSTHOC_METHODS, PosthocResult, posthoc
from .types import TestResult
