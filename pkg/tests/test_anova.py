"""Omnibus tests against hand oracles and independent implementations."""

import math

import numpy as np
import pytest
from scipy import stats as sps

from citefrac.stats import kruskal_wallis, one_way_anova, welch_anova


def brute_force_f(groups):
    """Direct sums-of-squares computation, kept free of the implementation."""
    all_values = [v for g in groups for v in g]
    grand = sum(all_values) / len(all_values)
    ssb = sum(len(g) * (sum(g) / len(g) - grand) ** 2 for g in groups)
    ssw = sum((v - sum(g) / len(g)) ** 2 for g in groups for v in g)
    df1 = len(groups) - 1
    df2 = len(all_values) - len(groups)
    return (ssb / df1) / (ssw / df2), df1, df2


THREE_GROUPS = [
    [12.1, 14.3, 11.8, 13.0, 12.7],
    [15.2, 16.1, 14.8, 15.9],
    [11.0, 10.2, 11.7, 10.9, 11.3, 10.5],
]

HETERO_GROUPS = [
    [10.0, 10.4, 9.8, 10.1],
    [12.0, 14.5, 9.5, 13.0, 11.2],
    [8.0, 8.1, 7.9, 8.2, 8.0, 8.1],
]


class TestOneWayAnova:
    def test_identical_groups(self):
        result = one_way_anova([[1, 2, 3], [1, 2, 3]])
        assert result.statistic == 0.0
        assert result.p_value == 1.0

    def test_perfect_separation(self):
        result = one_way_anova([[0, 0], [10, 10]])
        assert math.isinf(result.statistic)
        assert result.p_value < 1e-12

    def test_all_identical_has_no_p(self):
        result = one_way_anova([[5, 5], [5, 5]])
        assert result.statistic == 0.0
        assert result.p_value is None

    def test_three_group_sums_of_squares_oracle(self):
        result = one_way_anova(THREE_GROUPS)
        f, df1, df2 = brute_force_f(THREE_GROUPS)
        assert result.statistic == pytest.approx(f, rel=1e-12)
        assert (result.df1, result.df2) == (df1, df2)

    def test_matches_scipy(self):
        result = one_way_anova(THREE_GROUPS)
        ref = sps.f_oneway(*THREE_GROUPS)
        assert result.statistic == pytest.approx(ref.statistic, rel=1e-10)
        assert result.p_value == pytest.approx(ref.pvalue, rel=1e-8)

    def test_two_groups_f_is_t_squared(self):
        a = [3.1, 2.8, 3.5, 3.0, 2.9]
        b = [3.9, 4.1, 3.7, 4.4]
        f = one_way_anova([a, b]).statistic
        t = sps.ttest_ind(a, b).statistic
        assert f == pytest.approx(t * t, abs=1e-9)

    def test_degenerate_group_size_rejected(self):
        with pytest.raises(ValueError, match="need >= 2"):
            one_way_anova([[1.0], [2.0, 3.0]])


class TestWelchAnova:
    def test_identical_groups(self):
        result = welch_anova([[1, 2, 3], [1, 2, 3]])
        assert result.statistic == 0.0
        assert result.p_value == 1.0

    def test_formula_transcription_oracle(self):
        # recompute Welch's statistic and df from scratch
        means = [np.mean(g) for g in HETERO_GROUPS]
        ns = [len(g) for g in HETERO_GROUPS]
        vs = [np.var(g, ddof=1) for g in HETERO_GROUPS]
        w = [n / v for n, v in zip(ns, vs)]
        wt = sum(w)
        xt = sum(wi * m for wi, m in zip(w, means)) / wt
        k = 3
        num = sum(wi * (m - xt) ** 2 for wi, m in zip(w, means)) / (k - 1)
        lam = sum((1 - wi / wt) ** 2 / (n - 1) for wi, n in zip(w, ns))
        expect_stat = num / (1 + 2 * (k - 2) / (k * k - 1) * lam)
        expect_df2 = (k * k - 1) / (3 * lam)

        result = welch_anova(HETERO_GROUPS)
        assert result.statistic == pytest.approx(expect_stat, rel=1e-12)
        assert result.df2 == pytest.approx(expect_df2, rel=1e-12)

    def test_numerator_equals_f_on_balanced_homoscedastic_data(self):
        # shifted copies: equal sizes, identical sample variances
        groups = [[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 9.0]]
        f = one_way_anova(groups).statistic
        k = 3
        lam = sum((1 - 1 / k) ** 2 / 2 for _ in groups)
        denom = 1 + 2 * (k - 2) / (k * k - 1) * lam
        assert welch_anova(groups).statistic * denom == pytest.approx(f, abs=1e-9)

    def test_matches_statsmodels(self):
        from statsmodels.stats.oneway import anova_oneway

        ref = anova_oneway(HETERO_GROUPS, use_var="unequal", welch_correction=True)
        result = welch_anova(HETERO_GROUPS)
        assert result.statistic == pytest.approx(ref.statistic, rel=1e-10)
        assert result.p_value == pytest.approx(ref.pvalue, rel=1e-8)

    def test_zero_variance_group_rejected(self):
        with pytest.raises(ValueError, match="zero variance"):
            welch_anova([[1, 1, 1], [2, 3, 4]])


class TestKruskalWallis:
    def test_identical_groups(self):
        result = kruskal_wallis([[1, 2, 3], [1, 2, 3]])
        assert result.statistic == pytest.approx(0.0, abs=1e-12)
        assert result.p_value == pytest.approx(1.0, abs=1e-12)

    def test_separated_small_groups(self):
        # rank sums 6 and 15 give H = 12/42 * (12 + 75) - 21 = 27/7
        result = kruskal_wallis([[1, 2, 3], [4, 5, 6]])
        assert result.statistic == pytest.approx(27.0 / 7.0, abs=1e-12)
        assert result.statistic == pytest.approx(3.857, abs=5e-4)

    def test_matches_scipy_with_ties(self):
        groups = [[1.0, 2.0, 2.0, 4.0], [2.0, 3.0, 5.0], [1.0, 1.0, 6.0, 6.0]]
        result = kruskal_wallis(groups)
        ref = sps.kruskal(*groups)
        assert result.statistic == pytest.approx(ref.statistic, rel=1e-12)
        assert result.p_value == pytest.approx(ref.pvalue, rel=1e-10)

    def test_monotone_transform_invariance(self):
        groups = [[1.0, 5.0, 3.0], [2.0, 8.0], [0.5, 9.0, 4.0]]
        base = kruskal_wallis(groups).statistic
        warped = kruskal_wallis([[math.exp(v) for v in g] for g in groups]).statistic
        assert base == pytest.approx(warped, abs=1e-12)

    def test_all_identical_undefined(self):
        result = kruskal_wallis([[3, 3], [3, 3, 3]])
        assert result.p_value is None

    def test_single_observation_groups_allowed(self):
        result = kruskal_wallis([[1.0], [2.0], [3.0]])
        assert result.p_value is not None
