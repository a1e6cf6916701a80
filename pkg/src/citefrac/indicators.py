"""Normalization indicators for research units.

Covers the plain mean citation rate, normalized means of ratios (normalize
each paper first, then average), ratios of sums (aggregate first, then
normalize), and the fractionally counted journal impact factor. The two
normalization orders disagree as soon as expected rates vary, so both are
exposed side by side.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .corpus import Corpus, Publication, RateTable, Unit
from .fractional import fractional_weight, unit_fractional_scores
from .kernels import csum

__all__ = [
    "EmptyWindowError",
    "IndicatorError",
    "IndicatorWarning",
    "MeanWithError",
    "MissingRateError",
    "UnitIndicators",
    "fractional_impact_factor",
    "mean_cpp",
    "mean_of_ratios",
    "mean_with_sem",
    "ratio_of_means",
    "resolve_expected",
    "unit_report",
]


class IndicatorError(Exception):
    """An indicator could not be computed from the supplied inputs."""


class MissingRateError(IndicatorError):
    def __init__(self, kind: str, key: str):
        self.kind = kind
        self.key = key
        super().__init__(f"missing {kind} rate for key {key!r}")


class EmptyWindowError(IndicatorError):
    pass


class IndicatorWarning(UserWarning):
    """A requested indicator column was degraded to absent."""


@dataclass(frozen=True)
class MeanWithError:
    """Arithmetic mean with its standard error (SD/sqrt(n); absent for n < 2)."""

    value: float
    sem: float | None
    n: int


@dataclass
class UnitIndicators:
    """One row of the per-unit indicator table. ``None`` marks an absent value."""

    unit: str
    label: str
    sum_p: int
    sum_c: int | None = None
    mean_cpp: MeanWithError | None = None
    mean_citation_score: MeanWithError | None = None
    cpp_jcsm: float | None = None
    cpp_fcsm: float | None = None
    mncs: float | None = None
    sum_cf: float | None = None
    mean_cf: MeanWithError | None = None


def mean_with_sem(values) -> MeanWithError:
    """Mean and standard error of a sample (sample SD, ddof = 1)."""
    xs = [float(v) for v in values]
    n = len(xs)
    if n == 0:
        raise ValueError("cannot average an empty sample")
    mean = csum(xs) / n
    if n < 2:
        return MeanWithError(value=mean, sem=None, n=n)
    ss = csum([(x - mean) ** 2 for x in xs])
    sd = math.sqrt(ss / (n - 1))
    return MeanWithError(value=mean, sem=sd / math.sqrt(n), n=n)


def mean_cpp(citation_counts) -> MeanWithError:
    """Mean citations per paper with its standard error."""
    counts = list(citation_counts)
    if not counts:
        raise ValueError("cannot compute mean citations per paper of an empty unit")
    if any(c < 0 for c in counts):
        raise ValueError("citation counts must be non-negative")
    return mean_with_sem(counts)


def _check_pairs(cits, expected):
    cits = list(cits)
    expected = list(expected)
    if len(cits) != len(expected):
        raise ValueError(
            f"length mismatch: {len(cits)} citation counts vs {len(expected)} expected values"
        )
    if not cits:
        raise ValueError("empty input")
    for i, e in enumerate(expected):
        if not e > 0:
            raise ValueError(f"expected value at index {i} must be positive, got {e}")
    return cits, expected


def mean_of_ratios(cits, expected) -> MeanWithError:
    """Mean of per-paper ratios c_i/e_i: normalize first, then average.

    With field rates as the expected values this is the mean normalized
    citation score; with journal rates it is the journal-normalized mean
    citation score.
    """
    cits, expected = _check_pairs(cits, expected)
    return mean_with_sem([c / e for c, e in zip(cits, expected)])


def ratio_of_means(cits, expected) -> float:
    """Ratio of sums sum(c_i)/sum(e_i): aggregate first, then normalize."""
    cits, expected = _check_pairs(cits, expected)
    total_expected = csum(expected)
    if total_expected <= 0:
        raise ValueError("sum of expected values must be positive")
    return csum([float(c) for c in cits]) / total_expected


def resolve_expected(pub: Publication, rates: RateTable) -> float:
    """Expected citation rate of a publication under a rate table.

    Journal tables are a direct lookup; field tables average the rates of all
    of the publication's field codes.
    """
    if rates.kind == "journal":
        if pub.journal not in rates.rates:
            raise MissingRateError("journal", pub.journal)
        return rates.rates[pub.journal]
    if not pub.fields:
        raise IndicatorError(f"publication {pub.id!r} has no field codes")
    missing = [f for f in pub.fields if f not in rates.rates]
    if missing:
        raise MissingRateError("field", missing[0])
    return csum([rates.rates[f] for f in pub.fields]) / len(pub.fields)


def fractional_impact_factor(corpus: Corpus, journal: str, year: int) -> float:
    """Journal impact for year t with a fractionally counted numerator.

    The document set is the journal's publications of years t-1 and t-2; the
    numerator sums the fractional weights of year-t citations those papers
    received, the denominator counts the papers.
    """
    journal_pubs = [p for p in corpus.publications.values() if p.journal == journal]
    if not journal_pubs:
        raise IndicatorError(f"unknown journal {journal!r}")
    window = {p.id for p in journal_pubs if p.year in (year - 1, year - 2)}
    if not window:
        raise EmptyWindowError(
            f"journal {journal!r} has no publications in years {year - 2} and {year - 1}"
        )
    weights = [
        fractional_weight(corpus.publications[edge.citing])
        for edge in corpus.edges
        if edge.cited in window and edge.year == year
    ]
    return csum(weights) / len(window) if weights else 0.0


# ---------------------------------------------------------------------------
# per-unit report rows
# ---------------------------------------------------------------------------


def _given_mean(given, key) -> MeanWithError | None:
    if given is None or key not in given:
        return None
    sem = given.get(key + "_sem")
    return MeanWithError(value=float(given[key]), sem=None if sem is None else float(sem), n=0)


def _given_value(given, key) -> float | None:
    if given is None or key not in given:
        return None
    return float(given[key])


def _warn(unit_id: str, column: str, reason: str) -> None:
    warnings.warn(
        f"unit {unit_id!r}: column {column} marked absent ({reason})",
        IndicatorWarning,
        stacklevel=3,
    )


def unit_report(
    corpus: Corpus,
    unit: Unit,
    journal_rates: RateTable | None = None,
    field_rates: RateTable | None = None,
) -> UnitIndicators:
    """Assemble one indicator row for a unit.

    Columns whose inputs are unavailable (no edges, no scalar counts, missing
    rates) are marked absent, never zero; published aggregates supplied in the
    unit's ``given`` mapping fill such gaps. Computed values take precedence
    over given ones.
    """
    if not unit.pubs:
        raise IndicatorError(f"unit {unit.id!r} has no publications")
    pubs = []
    for pub_id in unit.pubs:
        pub = corpus.publications.get(pub_id)
        if pub is None:
            raise IndicatorError(f"unit {unit.id!r} references unknown publication {pub_id!r}")
        pubs.append(pub)

    given = unit.given
    row = UnitIndicators(unit=unit.id, label=unit.label, sum_p=len(pubs))

    counts = [corpus.citation_count(p.id) for p in pubs]
    if all(c is not None for c in counts):
        row.sum_c = int(sum(counts))
        row.mean_cpp = mean_cpp(counts)
    else:
        row.sum_c = _given_value(given, "sum_c")
        if row.sum_c is not None:
            row.sum_c = int(row.sum_c)
        row.mean_cpp = _given_mean(given, "mean_cpp")
        if row.sum_c is None and row.mean_cpp is None:
            _warn(unit.id, "mean_cpp", "per-paper citation counts unknown")
        counts = None

    def normalized(rates: RateTable):
        if counts is None:
            return None, None, "per-paper citation counts unknown"
        try:
            expected = [resolve_expected(p, rates) for p in pubs]
        except IndicatorError as exc:
            return None, None, str(exc)
        return mean_of_ratios(counts, expected), ratio_of_means(counts, expected), None

    if journal_rates is not None:
        mor, rom, reason = normalized(journal_rates)
        if reason is not None:
            _warn(unit.id, "mean_citation_score/cpp_jcsm", reason)
    else:
        mor = rom = None
    row.mean_citation_score = mor if mor is not None else _given_mean(given, "mean_citation_score")
    row.cpp_jcsm = rom if rom is not None else _given_value(given, "cpp_jcsm")

    if field_rates is not None:
        mor, rom, reason = normalized(field_rates)
        if reason is not None:
            _warn(unit.id, "mncs/cpp_fcsm", reason)
    else:
        mor = rom = None
    row.mncs = mor.value if mor is not None else _given_value(given, "mncs")
    row.cpp_fcsm = rom if rom is not None else _given_value(given, "cpp_fcsm")

    if corpus.has_edges:
        scores = [s.c_f for s in unit_fractional_scores(corpus, unit)]
        row.sum_cf = csum(scores)
        row.mean_cf = mean_with_sem(scores)
    else:
        row.sum_cf = _given_value(given, "sum_cf")
        row.mean_cf = _given_mean(given, "mean_cf")
        if row.sum_cf is None and row.mean_cf is None and given is None:
            _warn(unit.id, "sum_cf/mean_cf", "no citation edges in corpus")

    return row
