"""Assemble indicator tables, correlation blocks and boxplot data; render them.

Two renderings are provided: an aligned human-readable table (values rounded
to two decimals, significance annotated with the usual thresholds) and a
machine-readable line-delimited record stream that carries full precision.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field

from .corpus import Corpus, RateTable, Unit
from .fractional import unit_fractional_scores
from .indicators import (
    IndicatorError,
    IndicatorWarning,
    MeanWithError,
    UnitIndicators,
    resolve_expected,
    unit_report,
)
from .stats.correlation import pearson, spearman
from .stats.descriptive import SampleSummary, summarize
from .stats.posthoc import PosthocResult, posthoc
from .stats.types import TestResult

__all__ = [
    "CorrelationBlock",
    "BoxplotRow",
    "ReportDocument",
    "build_boxplots",
    "build_indicator_rows",
    "build_correlation_blocks",
    "build_posthoc",
    "p_annotation",
    "render_records",
    "render_table",
]

POSTHOC_SCHEMES = ("fractional", "journal-ratio", "field-ratio")


@dataclass(frozen=True)
class CorrelationBlock:
    block: str  # "journal" | "field"
    x_column: str
    y_column: str
    n: int
    spearman: TestResult | None = None
    pearson: TestResult | None = None
    note: str | None = None


@dataclass(frozen=True)
class BoxplotRow:
    unit: str
    panel: str  # "fractional" | "ratio"
    summary: SampleSummary


@dataclass
class ReportDocument:
    rows: list[UnitIndicators] = field(default_factory=list)
    correlations: list[CorrelationBlock] = field(default_factory=list)
    boxplots: list[BoxplotRow] = field(default_factory=list)
    posthoc: list[tuple[str, PosthocResult]] = field(default_factory=list)


def p_annotation(p: float | None, thresholds=(0.01, 0.05)) -> str:
    """Render a p-value in report style: "p < 0.01", "p < 0.05" or "n.s."."""
    if p is None:
        return "p n/a"
    for level in sorted(thresholds):
        if p < level:
            return f"p < {level:g}"
    return "n.s."


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def build_indicator_rows(
    corpus: Corpus,
    journal_rates: RateTable | None = None,
    field_rates: RateTable | None = None,
    sort_by: str = "mean_citation_score",
) -> list[UnitIndicators]:
    """One indicator row per unit, sorted descending by ``sort_by``."""
    rows = [
        unit_report(corpus, unit, journal_rates, field_rates)
        for unit in corpus.units.values()
    ]

    def sort_key(row: UnitIndicators):
        value = getattr(row, sort_by)
        if isinstance(value, MeanWithError):
            value = value.value
        # absent values sort after any number
        return (value is None, -(value if value is not None else 0.0), row.unit)

    if sort_by != "unit" and rows and not hasattr(rows[0], sort_by):
        raise ValueError(f"unknown sort column {sort_by!r}")
    if sort_by == "unit":
        rows.sort(key=lambda r: r.unit)
    else:
        rows.sort(key=sort_key)
    return rows


def _column_pairs(rows, x_column, y_column):
    xs, ys = [], []
    for row in rows:
        x = getattr(row, x_column)
        y = getattr(row, y_column)
        if isinstance(x, MeanWithError):
            x = x.value
        if isinstance(y, MeanWithError):
            y = y.value
        if x is not None and y is not None:
            xs.append(x)
            ys.append(y)
    return xs, ys


def build_correlation_blocks(rows) -> list[CorrelationBlock]:
    """Spearman/Pearson blocks for the journal and field normalization pairs."""
    blocks = []
    for block, x_column, y_column in (
        ("journal", "mean_citation_score", "cpp_jcsm"),
        ("field", "mean_cf", "cpp_fcsm"),
    ):
        xs, ys = _column_pairs(rows, x_column, y_column)
        if len(xs) < 3:
            blocks.append(
                CorrelationBlock(
                    block=block,
                    x_column=x_column,
                    y_column=y_column,
                    n=len(xs),
                    note=f"correlation skipped: {len(xs)} unit(s) carry both columns, need >= 3",
                )
            )
            continue
        blocks.append(
            CorrelationBlock(
                block=block,
                x_column=x_column,
                y_column=y_column,
                n=len(xs),
                spearman=spearman(xs, ys),
                pearson=pearson(xs, ys),
            )
        )
    return blocks


def _per_paper_ratios(corpus: Corpus, unit: Unit, rates: RateTable) -> list[float]:
    ratios = []
    for pub_id in unit.pubs:
        pub = corpus.publications[pub_id]
        count = corpus.citation_count(pub_id)
        if count is None:
            raise IndicatorError(f"publication {pub_id!r} has no citation count")
        ratios.append(count / resolve_expected(pub, rates))
    return ratios


def build_boxplots(corpus: Corpus, rates: RateTable | None = None) -> list[BoxplotRow]:
    """Per-unit five-number summaries: fractional scores and c/e ratios.

    Units lacking the inputs for a panel are skipped for that panel with a
    warning; the output is plot-ready data, not an image.
    """
    out: list[BoxplotRow] = []
    for unit in corpus.units.values():
        if corpus.has_edges:
            scores = [s.c_f for s in unit_fractional_scores(corpus, unit)]
            out.append(BoxplotRow(unit.id, "fractional", summarize(scores)))
        else:
            warnings.warn(
                f"unit {unit.id!r}: fractional panel skipped (no citation edges)",
                IndicatorWarning,
                stacklevel=2,
            )
        if rates is not None:
            try:
                ratios = _per_paper_ratios(corpus, unit, rates)
            except IndicatorError as exc:
                warnings.warn(
                    f"unit {unit.id!r}: ratio panel skipped ({exc})",
                    IndicatorWarning,
                    stacklevel=2,
                )
                continue
            out.append(BoxplotRow(unit.id, "ratio", summarize(ratios)))
    return out


def build_posthoc(
    corpus: Corpus,
    scheme: str,
    method: str = "tukey",
    alpha: float = 0.05,
) -> PosthocResult:
    """Post-hoc comparison of the units under a normalization scheme.

    Schemes: ``fractional`` (per-paper fractional scores), ``journal-ratio``
    and ``field-ratio`` (per-paper observed/expected ratios).
    """
    if scheme not in POSTHOC_SCHEMES:
        raise ValueError(f"scheme must be one of {POSTHOC_SCHEMES}, got {scheme!r}")

    samples: list[list[float]] = []
    labels: list[str] = []
    for unit in corpus.units.values():
        try:
            if scheme == "fractional":
                if not corpus.has_edges:
                    raise IndicatorError("no citation edges in corpus")
                values = [s.c_f for s in unit_fractional_scores(corpus, unit)]
            else:
                kind = "journal" if scheme == "journal-ratio" else "field"
                rates = corpus.rates.get(kind)
                if rates is None:
                    raise IndicatorError(f"no {kind} rate table loaded")
                values = _per_paper_ratios(corpus, unit, rates)
        except IndicatorError as exc:
            warnings.warn(
                f"unit {unit.id!r}: excluded from post-hoc ({exc})",
                IndicatorWarning,
                stacklevel=2,
            )
            continue
        if len(values) < 2:
            warnings.warn(
                f"unit {unit.id!r}: excluded from post-hoc (fewer than 2 papers)",
                IndicatorWarning,
                stacklevel=2,
            )
            continue
        samples.append(values)
        labels.append(unit.id)

    if len(samples) < 2:
        raise IndicatorError(
            f"post-hoc needs >= 2 units with per-paper distributions, got {len(samples)}"
        )
    return posthoc(samples, method=method, alpha=alpha, labels=labels)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _mean_fields(value: MeanWithError | None, key: str) -> dict:
    if value is None:
        return {key: None, key + "_sem": None}
    return {key: value.value, key + "_sem": value.sem}


def to_records(doc: ReportDocument, thresholds=(0.01, 0.05)) -> list[dict]:
    """Flatten a report into machine records (stable keys, full precision)."""
    records: list[dict] = []
    for row in doc.rows:
        record = {
            "kind": "unit_indicators",
            "unit": row.unit,
            "label": row.label,
            "sum_p": row.sum_p,
            "sum_c": row.sum_c,
        }
        record.update(_mean_fields(row.mean_cpp, "mean_cpp"))
        record.update(_mean_fields(row.mean_citation_score, "mean_citation_score"))
        record["cpp_jcsm"] = row.cpp_jcsm
        record["sum_cf"] = row.sum_cf
        record.update(_mean_fields(row.mean_cf, "mean_cf"))
        record["cpp_fcsm"] = row.cpp_fcsm
        record["mncs"] = row.mncs
        records.append(record)
    for block in doc.correlations:
        if block.note is not None:
            records.append(
                {
                    "kind": "correlation_note",
                    "block": block.block,
                    "x": block.x_column,
                    "y": block.y_column,
                    "n": block.n,
                    "note": block.note,
                }
            )
            continue
        for result in (block.spearman, block.pearson):
            records.append(
                {
                    "kind": "correlation",
                    "block": block.block,
                    "x": block.x_column,
                    "y": block.y_column,
                    "n": block.n,
                    "method": result.method,
                    "statistic": result.statistic,
                    "df": result.df1,
                    "p_value": result.p_value,
                    "annotation": p_annotation(result.p_value, thresholds),
                }
            )
    for row in doc.boxplots:
        s = row.summary
        records.append(
            {
                "kind": "boxplot",
                "unit": row.unit,
                "panel": row.panel,
                "n": s.n,
                "mean": s.mean,
                "sd": s.sd,
                "sem": s.sem,
                "median": s.median,
                "q1": s.q1,
                "q3": s.q3,
                "whisker_low": s.whisker_low,
                "whisker_high": s.whisker_high,
                "outliers": list(s.outliers),
            }
        )
    for scheme, result in doc.posthoc:
        k = len(result.groups)
        for i in range(k):
            for j in range(i + 1, k):
                p = float(result.pairwise[i, j])
                records.append(
                    {
                        "kind": "posthoc_pair",
                        "scheme": scheme,
                        "method": result.method,
                        "a": result.groups[i],
                        "b": result.groups[j],
                        "p_adjusted": p,
                        "significant": p < result.alpha,
                    }
                )
        for index, subset in enumerate(result.homogeneous_subsets, start=1):
            records.append(
                {
                    "kind": "homogeneous_subset",
                    "scheme": scheme,
                    "method": result.method,
                    "alpha": result.alpha,
                    "index": index,
                    "groups": list(subset),
                }
            )
    return records


def render_records(doc: ReportDocument, thresholds=(0.01, 0.05)) -> str:
    records = to_records(doc, thresholds)
    if not records:
        return ""
    return "\n".join(json.dumps(r, ensure_ascii=False) for r in records) + "\n"


def _fmt(value, with_sem=False) -> str:
    if value is None:
        return "-"
    if isinstance(value, MeanWithError):
        if with_sem and value.sem is not None:
            return f"{value.value:.2f} (±{value.sem:.2f})"
        return f"{value.value:.2f}"
    if isinstance(value, float):
        return f"{value:.2f}"
    return str(value)


_TABLE_COLUMNS = (
    ("Unit", lambda r: str(r.label)),
    ("Σp", lambda r: _fmt(r.sum_p)),
    ("Σc", lambda r: _fmt(r.sum_c)),
    ("Avg(c/p)", lambda r: _fmt(r.mean_cpp, with_sem=True)),
    ("MeanCitSc", lambda r: _fmt(r.mean_citation_score, with_sem=True)),
    ("CPP/JCSm", lambda r: _fmt(r.cpp_jcsm)),
    ("Σc_f", lambda r: _fmt(r.sum_cf)),
    ("Avg(c_f)", lambda r: _fmt(r.mean_cf, with_sem=True)),
    ("CPP/FCSm", lambda r: _fmt(r.cpp_fcsm)),
    ("MNCS", lambda r: _fmt(r.mncs)),
)


def render_table(doc: ReportDocument, thresholds=(0.01, 0.05)) -> str:
    """Aligned text rendering; numbers rounded to two decimals."""
    lines: list[str] = []
    if doc.rows:
        headers = [name for name, _ in _TABLE_COLUMNS]
        cells = [[fmt(row) for _, fmt in _TABLE_COLUMNS] for row in doc.rows]
        widths = [
            max(len(headers[i]), *(len(c[i]) for c in cells)) if cells else len(headers[i])
            for i in range(len(headers))
        ]
        lines.append("  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)))
        lines.append("  ".join("-" * w for w in widths))
        for c in cells:
            lines.append("  ".join(c[i].ljust(widths[i]) for i in range(len(headers))))
    for block in doc.correlations:
        title = f"{block.block} normalization ({block.x_column} vs {block.y_column})"
        if block.note is not None:
            lines.append(f"{title}: {block.note}")
            continue
        rho = block.spearman
        r = block.pearson
        lines.append(
            f"{title}: Spearman rho = {rho.statistic:.2f}"
            f" ({p_annotation(rho.p_value, thresholds)});"
            f" Pearson r = {r.statistic:.2f} ({p_annotation(r.p_value, thresholds)})"
        )
    for row in doc.boxplots:
        s = row.summary
        outliers = ", ".join(f"{v:.2f}" for v in s.outliers) or "none"
        lines.append(
            f"boxplot {row.unit} [{row.panel}]: n={s.n} median={s.median:.2f}"
            f" q1={s.q1:.2f} q3={s.q3:.2f} whiskers=[{s.whisker_low:.2f},"
            f" {s.whisker_high:.2f}] outliers: {outliers}"
        )
    for scheme, result in doc.posthoc:
        lines.append(
            f"post-hoc ({scheme}, {result.method}, alpha={result.alpha:g}):"
        )
        k = len(result.groups)
        for i in range(k):
            for j in range(i + 1, k):
                p = float(result.pairwise[i, j])
                marker = "*" if p < result.alpha else " "
                lines.append(
                    f"  {result.groups[i]} vs {result.groups[j]}:"
                    f" p_adj = {p:.4f} {marker}"
                )
        for index, subset in enumerate(result.homogeneous_subsets, start=1):
            lines.append(f"  subset {index}: {{{', '.join(subset)}}}")
    if not lines:
        return ""
    return "\n".join(lines) + "\n"
