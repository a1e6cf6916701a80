"""Command-line interface.

Verbs: report, boxplot, posthoc, fif, validate. Output goes to stdout either
as an aligned table (--format table) or line-delimited JSON records
(--format records); warnings go to stderr and do not affect the exit status.
The exit status is nonzero only for hard errors (and for `validate` when the
corpus has violations).
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from .corpus import Corpus, CorpusError, load_corpus, load_rate_tables, validate
from .indicators import IndicatorError, IndicatorWarning, fractional_impact_factor
from .report import (
    POSTHOC_SCHEMES,
    ReportDocument,
    build_boxplots,
    build_correlation_blocks,
    build_indicator_rows,
    build_posthoc,
    render_records,
    render_table,
)
from .stats.posthoc import POSTHOC_METHODS


def _add_common(parser: argparse.ArgumentParser, rates: bool = False) -> None:
    parser.add_argument("--corpus", required=True, help="corpus file (line-delimited records)")
    parser.add_argument(
        "--format",
        choices=("table", "records"),
        default="table",
        help="output style: aligned text or machine records (default: table)",
    )
    if rates:
        parser.add_argument("--journal-rates", help="rate file with journal expected values")
        parser.add_argument("--field-rates", help="rate file with field expected values")


def _load(args) -> Corpus:
    corpus = load_corpus(args.corpus)
    for attr in ("journal_rates", "field_rates"):
        path = getattr(args, attr, None)
        if path:
            corpus.rates.update(load_rate_tables(path))
    return corpus


def _render(doc: ReportDocument, fmt: str, thresholds=(0.01, 0.05)) -> str:
    if fmt == "records":
        return render_records(doc, thresholds)
    return render_table(doc, thresholds)


def _parse_levels(text: str) -> tuple[float, ...]:
    try:
        levels = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise ValueError(f"invalid significance levels {text!r}") from None
    if not levels or any(not 0.0 < lv < 1.0 for lv in levels):
        raise ValueError(f"significance levels must lie in (0, 1): {text!r}")
    return levels


def _cmd_report(args) -> tuple[str, int]:
    corpus = _load(args)
    rows = build_indicator_rows(
        corpus,
        journal_rates=corpus.rates.get("journal"),
        field_rates=corpus.rates.get("field"),
        sort_by=args.sort_by,
    )
    doc = ReportDocument(rows=rows, correlations=build_correlation_blocks(rows))
    return _render(doc, args.format, _parse_levels(args.levels)), 0


def _cmd_boxplot(args) -> tuple[str, int]:
    corpus = _load(args)
    doc = ReportDocument(boxplots=build_boxplots(corpus, corpus.rates.get(args.rates_kind)))
    return _render(doc, args.format), 0


def _cmd_posthoc(args) -> tuple[str, int]:
    corpus = _load(args)
    result = build_posthoc(corpus, scheme=args.scheme, method=args.method, alpha=args.alpha)
    doc = ReportDocument(posthoc=[(args.scheme, result)])
    return _render(doc, args.format), 0


def _cmd_fif(args) -> tuple[str, int]:
    corpus = _load(args)
    value = fractional_impact_factor(corpus, args.journal, args.year)
    if args.format == "records":
        record = {
            "kind": "fractional_impact_factor",
            "journal": args.journal,
            "year": args.year,
            "value": value,
        }
        return json.dumps(record, ensure_ascii=False) + "\n", 0
    return f"fractional impact factor of {args.journal} in {args.year}: {value:.4f}\n", 0


def _cmd_validate(args) -> tuple[str, int]:
    try:
        corpus = load_corpus(args.corpus)
    except CorpusError as exc:
        return f"{exc}\n", 1
    violations = validate(corpus)
    if violations:
        lines = "\n".join(str(v) for v in violations)
        return f"{lines}\n", 1
    return (
        f"OK: {len(corpus.publications)} publication(s), {len(corpus.edges)} edge(s),"
        f" {len(corpus.units)} unit(s)\n",
        0,
    )


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="citefrac",
        description="Fractional citation counting and normalization indicator reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", help="per-unit indicator table with correlation blocks")
    _add_common(p, rates=True)
    p.add_argument(
        "--sort-by",
        default="mean_citation_score",
        help="column to sort rows by, descending (default: mean_citation_score)",
    )
    p.add_argument(
        "--levels",
        default="0.01,0.05",
        help="comma-separated significance annotation thresholds (default: 0.01,0.05)",
    )
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("boxplot", help="five-number summaries per unit, plot-ready")
    _add_common(p, rates=True)
    p.add_argument(
        "--rates-kind",
        choices=("journal", "field"),
        default="journal",
        help="rate table for the ratio panel (default: journal)",
    )
    p.set_defaults(func=_cmd_boxplot)

    p = sub.add_parser("posthoc", help="pairwise unit comparison with homogeneous subsets")
    _add_common(p, rates=True)
    p.add_argument("--scheme", choices=POSTHOC_SCHEMES, required=True)
    p.add_argument("--method", choices=POSTHOC_METHODS, default="tukey")
    p.add_argument("--alpha", type=float, default=0.05)
    p.set_defaults(func=_cmd_posthoc)

    p = sub.add_parser("fif", help="fractionally counted journal impact factor")
    _add_common(p)
    p.add_argument("--journal", required=True)
    p.add_argument("--year", type=int, required=True)
    p.set_defaults(func=_cmd_fif)

    p = sub.add_parser("validate", help="check a corpus file; nonzero exit on violations")
    p.add_argument("--corpus", required=True)
    p.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", IndicatorWarning)
            output, code = args.func(args)
    except (CorpusError, IndicatorError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for item in caught:
        print(f"warning: {item.message}", file=sys.stderr)
    sys.stdout.write(output)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
