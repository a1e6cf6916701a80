"""Fractional citation counting and field-normalization analytics."""

from .corpus import (
    CitationEdge,
    Corpus,
    CorpusError,
    CorpusValidationError,
    ParseError,
    Publication,
    RateTable,
    Unit,
    Violation,
    load_corpus,
    load_rate_tables,
    validate,
    write_corpus,
)
from .fractional import (
    FractionalScore,
    ZeroReferenceError,
    all_fractional_scores,
    benchmark_ratio,
    fractional_score,
    fractional_weight,
    unit_fractional_scores,
)
from .indicators import (
    EmptyWindowError,
    IndicatorError,
    IndicatorWarning,
    MeanWithError,
    MissingRateError,
    UnitIndicators,
    fractional_impact_factor,
    mean_cpp,
    mean_of_ratios,
    ratio_of_means,
    resolve_expected,
    unit_report,
)
from .report import (
    BoxplotRow,
    CorrelationBlock,
    ReportDocument,
    build_boxplots,
    build_correlation_blocks,
    build_indicator_rows,
    build_posthoc,
    render_records,
    render_table,
)

__version__ = "0.1.0"
