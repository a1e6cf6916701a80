"""Indicator constructions: means of ratios, ratios of sums, expected rates, FIF."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from citefrac import (
    EmptyWindowError,
    IndicatorError,
    MissingRateError,
    Publication,
    RateTable,
    fractional_impact_factor,
    mean_cpp,
    mean_of_ratios,
    ratio_of_means,
    resolve_expected,
    unit_fractional_scores,
    unit_report,
)
from citefrac.kernels import csum
from conftest import SEVEN_UNIT_ROWS


class TestMeanCpp:
    def test_constant_list(self):
        result = mean_cpp([5, 5, 5, 5])
        assert result.value == 5.0
        assert result.sem == 0.0

    def test_zero_ten(self):
        # sd of {0, 10} is 7.0711 (ddof=1), sem = 7.0711/sqrt(2) = 5.0
        result = mean_cpp([0, 10])
        assert result.value == 5.0
        assert result.sem == pytest.approx(5.0, abs=1e-12)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            mean_cpp([])

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            mean_cpp([3, -1])

    def test_singleton_has_no_sem(self):
        result = mean_cpp([7])
        assert result.value == 7.0
        assert result.sem is None


class TestMeanOfRatios:
    def test_unit_ratios(self):
        result = mean_of_ratios([2, 4], [2, 4])
        assert result.value == 1.0
        assert result.sem == 0.0

    def test_four_zero(self):
        # ratios {2, 0}: sd = 1.4142, sem = 1.0
        result = mean_of_ratios([4, 0], [2, 2])
        assert result.value == 1.0
        assert result.sem == pytest.approx(1.0, abs=1e-12)

    def test_singleton_sem_absent(self):
        result = mean_of_ratios([6], [3])
        assert result.value == 2.0
        assert result.sem is None

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="length mismatch"):
            mean_of_ratios([1, 2], [1.0])

    def test_nonpositive_expected_names_index(self):
        with pytest.raises(ValueError, match="index 1"):
            mean_of_ratios([1, 2], [1.0, 0.0])


class TestRatioOfMeans:
    def test_unit_case(self):
        assert ratio_of_means([2, 4], [2, 4]) == 1.0

    def test_agrees_with_mean_of_ratios_on_symmetric_case(self):
        assert ratio_of_means([4, 0], [2, 2]) == 1.0
        assert mean_of_ratios([4, 0], [2, 2]).value == 1.0

    def test_divergence_from_mean_of_ratios(self):
        # mean-of-ratios and ratio-of-means disagree once expected values vary
        rom = ratio_of_means([9, 1], [1, 9])
        mor = mean_of_ratios([9, 1], [1, 9])
        assert rom == 1.0
        assert mor.value == pytest.approx((9 + 1 / 9) / 2, abs=1e-12)
        assert mor.value == pytest.approx(4.556, abs=1e-3)

    @given(
        st.lists(st.integers(min_value=0, max_value=500), min_size=1, max_size=30),
        st.floats(min_value=0.1, max_value=50.0, allow_nan=False),
    )
    def test_equals_mean_of_ratios_when_expected_constant(self, cits, e):
        expected = [e] * len(cits)
        assert ratio_of_means(cits, expected) == pytest.approx(
            mean_of_ratios(cits, expected).value, rel=1e-12, abs=1e-12
        )

    @given(
        st.lists(
            st.tuples(
                st.integers(min_value=0, max_value=200),
                st.floats(min_value=0.05, max_value=40.0, allow_nan=False),
            ),
            min_size=2,
            max_size=25,
        ),
        st.floats(min_value=0.01, max_value=100.0, allow_nan=False),
        st.randoms(use_true_random=False),
    )
    @settings(max_examples=60)
    def test_scaling_and_permutation_invariance(self, pairs, lam, rnd):
        cits = [c for c, _ in pairs]
        expected = [e for _, e in pairs]
        rom = ratio_of_means(cits, expected)
        mor = mean_of_ratios(cits, expected).value

        # scaling every expected rate by lam divides both indicators by lam
        scaled = [e * lam for e in expected]
        assert ratio_of_means(cits, scaled) * lam == pytest.approx(rom, rel=1e-9)
        assert mean_of_ratios(cits, scaled).value * lam == pytest.approx(mor, rel=1e-9)

        # permutation of papers changes nothing
        order = list(range(len(pairs)))
        rnd.shuffle(order)
        assert ratio_of_means(
            [cits[i] for i in order], [expected[i] for i in order]
        ) == pytest.approx(rom, rel=1e-12)
        assert mean_of_ratios(
            [cits[i] for i in order], [expected[i] for i in order]
        ).value == pytest.approx(mor, rel=1e-12)

    def test_rank_order_invariant_under_rate_scaling(self):
        rng = np.random.default_rng(3)
        units = [
            (rng.integers(0, 60, size=8).tolist(), rng.uniform(0.5, 9.0, size=8).tolist())
            for _ in range(6)
        ]
        plain = [ratio_of_means(c, e) for c, e in units]
        scaled = [ratio_of_means(c, [v * 3.7 for v in e]) for c, e in units]
        assert np.argsort(plain).tolist() == np.argsort(scaled).tolist()


class TestResolveExpected:
    def test_journal_lookup(self):
        pub = Publication("a", 2000, "J1", (), 1)
        assert resolve_expected(pub, RateTable("journal", {"J1": 4.0})) == 4.0

    def test_field_mean(self):
        pub = Publication("a", 2000, "J1", ("F1", "F2"), 1)
        rates = RateTable("field", {"F1": 2.0, "F2": 4.0})
        assert resolve_expected(pub, rates) == 3.0

    def test_missing_journal_named(self):
        pub = Publication("a", 2000, "J?", (), 1)
        with pytest.raises(MissingRateError, match="J\\?"):
            resolve_expected(pub, RateTable("journal", {"J1": 4.0}))

    def test_no_field_codes(self):
        pub = Publication("a", 2000, "J1", (), 1)
        with pytest.raises(IndicatorError, match="no field codes"):
            resolve_expected(pub, RateTable("field", {"F1": 2.0}))


class TestFractionalImpactFactor:
    def test_window_fixture(self, fif_corpus):
        assert fractional_impact_factor(fif_corpus, "JW", 2003) == pytest.approx(
            0.225, abs=1e-12
        )

    def test_no_citations_in_year(self, fif_corpus):
        assert fractional_impact_factor(fif_corpus, "JW", 2002) == 0.0

    def test_empty_window(self, fif_corpus):
        with pytest.raises(EmptyWindowError):
            fractional_impact_factor(fif_corpus, "JW", 1998)

    def test_unknown_journal_named(self, fif_corpus):
        with pytest.raises(IndicatorError, match="NOPE"):
            fractional_impact_factor(fif_corpus, "NOPE", 2003)


class TestUnitReport:
    def test_aggregate_fixture_row(self, aggregate_corpus):
        unit = aggregate_corpus.units["14"]
        row = unit_report(aggregate_corpus, unit)
        assert row.sum_p == 37
        assert row.sum_c == 962
        assert row.mean_cpp.value == pytest.approx(26.00, abs=0.005)
        assert row.cpp_jcsm == 1.86
        assert row.cpp_fcsm == 3.20
        assert row.sum_cf == 30.32
        assert row.mean_cf.value == 0.82
        assert row.mncs is None  # not published for these units

    @pytest.mark.parametrize("row", SEVEN_UNIT_ROWS, ids=lambda r: f"rank-{r['unit']}")
    def test_mean_times_count_consistency(self, aggregate_corpus, row):
        # Avg(c/p) * sum_p reproduces sum_c within published rounding
        report = unit_report(aggregate_corpus, aggregate_corpus.units[row["unit"]])
        assert report.mean_cpp.value * report.sum_p == pytest.approx(report.sum_c, abs=0.5)

    def test_single_paper_unit_all_normalized_one(self, demo_corpus):
        journal = RateTable("journal", {"J2": 2.0})
        field = RateTable("field", {"F2": 2.0})
        unit = demo_corpus.units["U2"]
        row = unit_report(demo_corpus, unit, journal, field)
        assert row.sum_p == 1
        assert row.sum_c == 2
        assert row.mean_citation_score.value == 1.0
        assert row.cpp_jcsm == 1.0
        assert row.cpp_fcsm == 1.0
        assert row.mncs == 1.0

    def test_mean_cf_matches_engine(self, demo_corpus):
        unit = demo_corpus.units["U1"]
        row = unit_report(demo_corpus, unit)
        scores = [s.c_f for s in unit_fractional_scores(demo_corpus, unit)]
        assert row.sum_cf == pytest.approx(csum(scores), abs=1e-15)
        assert row.mean_cf.value == pytest.approx(csum(scores) / row.sum_p, abs=1e-15)

    def test_missing_rates_degrade_to_absent_with_warning(self, demo_corpus):
        unit = demo_corpus.units["U1"]
        sparse = RateTable("journal", {"J9": 1.0})
        with pytest.warns(UserWarning, match="marked absent"):
            row = unit_report(demo_corpus, unit, journal_rates=sparse)
        assert row.mean_citation_score is None
        assert row.cpp_jcsm is None
        assert row.mean_cpp is not None  # unaffected columns survive

    def test_absent_is_none_not_zero(self, aggregate_corpus):
        row = unit_report(aggregate_corpus, aggregate_corpus.units["6"])
        assert row.mncs is None
        assert row.mncs != 0.0
