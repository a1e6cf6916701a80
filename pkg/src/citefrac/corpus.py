"""Domain model and line-delimited ingestion for citation corpora.

A corpus file is UTF-8 text with one JSON record per line. Every record
carries a ``"kind"`` tag:

* ``pub``  -- ``{"kind": "pub", "id": str, "year": int, "journal": str,
  "fields": [str, ...], "n_refs": int, "citations_received": int?}``.
  ``citations_received`` may be omitted when the raw times-cited count is
  unknown; it is then derived from edges where edges are present.
* ``edge`` -- ``{"kind": "edge", "citing": str, "cited": str, "year": int}``.
* ``unit`` -- ``{"kind": "unit", "id": str, "label": str, "pubs": [str, ...],
  "given": {...}?}``. ``given`` carries published aggregate indicator values
  (e.g. from an external report) that fill columns the corpus itself cannot
  support; computed values always take precedence.
* ``rate`` -- ``{"kind": "rate", "table": "journal"|"field", "key": str,
  "value": float}``. Rates usually live in their own file but are accepted
  inline as well.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Mapping


class CorpusError(Exception):
    """Base error for corpus ingestion and validation."""


class ParseError(CorpusError):
    """A line could not be parsed into a valid record."""

    def __init__(self, path, line_no: int, reason: str):
        self.path = str(path)
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"{self.path}:{line_no}: {reason}")


class CorpusValidationError(CorpusError):
    """A parsed corpus violates referential invariants."""

    def __init__(self, path, violations: list["Violation"]):
        self.path = str(path)
        self.violations = violations
        lines = "\n".join(f"  - {v}" for v in violations)
        super().__init__(
            f"{self.path}: corpus invalid ({len(violations)} violation(s))\n{lines}"
        )


@dataclass(frozen=True)
class Publication:
    id: str
    year: int
    journal: str
    fields: tuple[str, ...] = ()
    n_refs: int = 0
    citations_received: int | None = None


@dataclass(frozen=True)
class CitationEdge:
    citing: str
    cited: str
    year: int


@dataclass(frozen=True)
class Unit:
    id: str
    label: str
    pubs: tuple[str, ...]
    given: Mapping[str, float] | None = None


@dataclass(frozen=True)
class RateTable:
    """Expected citations per paper, keyed by journal or field code."""

    kind: str  # "journal" | "field"
    rates: Mapping[str, float]

    def __post_init__(self):
        if self.kind not in ("journal", "field"):
            raise ValueError(f"rate table kind must be journal or field, got {self.kind!r}")
        for key, value in self.rates.items():
            if not value > 0:
                raise ValueError(f"rate for {key!r} must be positive, got {value}")

    def lookup(self, key: str) -> float:
        try:
            return self.rates[key]
        except KeyError:
            raise KeyError(f"no {self.kind} rate for key {key!r}") from None


@dataclass(frozen=True)
class Violation:
    rule: str
    entity: str
    detail: str = ""

    def __str__(self) -> str:
        text = f"{self.rule}({self.entity})"
        return f"{text}: {self.detail}" if self.detail else text


@dataclass(eq=True)
class Corpus:
    """Immutable-after-load container for publications, edges and units."""

    publications: dict[str, Publication] = field(default_factory=dict)
    edges: tuple[CitationEdge, ...] = ()
    units: dict[str, Unit] = field(default_factory=dict)
    rates: dict[str, RateTable] = field(default_factory=dict)

    @property
    def has_edges(self) -> bool:
        return len(self.edges) > 0

    def in_degree(self, pub_id: str) -> int:
        return len(self.incoming_edges().get(pub_id, ()))

    def incoming_edges(self) -> dict[str, list[CitationEdge]]:
        cached = getattr(self, "_incoming", None)
        if cached is None:
            cached = {}
            for edge in self.edges:
                cached.setdefault(edge.cited, []).append(edge)
            self._incoming = cached
        return cached

    def citation_count(self, pub_id: str) -> int | None:
        """Times-cited count: edges win when present, scalar is the fallback."""
        if self.has_edges:
            return self.in_degree(pub_id)
        return self.publications[pub_id].citations_received


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------


def _want_str(record, key, where):
    value = record.get(key)
    if not isinstance(value, str) or not value:
        raise ValueError(f"{where}.{key} must be a non-empty string")
    return value


def _want_int(record, key, where, minimum=None, default=...):
    if key not in record and default is not ...:
        return default
    value = record.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"{where}.{key} must be an integer")
    if minimum is not None and value < minimum:
        raise ValueError(f"{where}.{key} must be >= {minimum}, got {value}")
    return value


def _want_str_list(record, key, where, default=...):
    if key not in record and default is not ...:
        return default
    value = record.get(key)
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise ValueError(f"{where}.{key} must be a list of strings")
    return tuple(value)


def iter_records(path) -> Iterator[tuple[int, dict]]:
    """Yield (line_number, record) pairs; raise ParseError on bad lines."""
    path = Path(path)
    with path.open("r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            try:
                record = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise ParseError(path, line_no, f"invalid JSON ({exc.msg})") from None
            if not isinstance(record, dict):
                raise ParseError(path, line_no, "record must be a JSON object")
            kind = record.get("kind")
            if kind not in ("pub", "edge", "unit", "rate"):
                raise ParseError(path, line_no, f"unknown record kind {kind!r}")
            yield line_no, record


def _parse_pub(record) -> Publication:
    return Publication(
        id=_want_str(record, "id", "pub"),
        year=_want_int(record, "year", "pub"),
        journal=_want_str(record, "journal", "pub"),
        fields=_want_str_list(record, "fields", "pub", default=()),
        n_refs=_want_int(record, "n_refs", "pub", minimum=0),
        citations_received=_want_int(
            record, "citations_received", "pub", minimum=0, default=None
        ),
    )


def _parse_edge(record) -> CitationEdge:
    return CitationEdge(
        citing=_want_str(record, "citing", "edge"),
        cited=_want_str(record, "cited", "edge"),
        year=_want_int(record, "year", "edge"),
    )


def _parse_unit(record) -> Unit:
    given = record.get("given")
    if given is not None:
        if not isinstance(given, dict):
            raise ValueError("unit.given must be an object")
        for key, value in given.items():
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValueError(f"unit.given[{key!r}] must be a number")
    return Unit(
        id=_want_str(record, "id", "unit"),
        label=record.get("label") or record["id"],
        pubs=_want_str_list(record, "pubs", "unit"),
        given=dict(given) if given else None,
    )


def _parse_rate(record) -> tuple[str, str, float]:
    table = record.get("table")
    if table not in ("journal", "field"):
        raise ValueError(f"rate.table must be journal or field, got {table!r}")
    key = _want_str(record, "key", "rate")
    value = record.get("value")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError("rate.value must be a number")
    if not value > 0:
        raise ValueError(f"rate.value must be positive, got {value}")
    return table, key, float(value)


# ---------------------------------------------------------------------------
# loading / writing / validation
# ---------------------------------------------------------------------------


def load_corpus(path) -> Corpus:
    """Load and validate a corpus file.

    Raises ParseError for malformed lines and duplicate ids (with the line
    number), and CorpusValidationError listing every referential violation.
    """
    publications: dict[str, Publication] = {}
    edges: list[CitationEdge] = []
    units: dict[str, Unit] = {}
    rate_maps: dict[str, dict[str, float]] = {}

    for line_no, record in iter_records(path):
        kind = record["kind"]
        try:
            if kind == "pub":
                pub = _parse_pub(record)
                if pub.id in publications:
                    raise ValueError(f"duplicate pub id {pub.id!r}")
                publications[pub.id] = pub
            elif kind == "edge":
                edges.append(_parse_edge(record))
            elif kind == "unit":
                unit = _parse_unit(record)
                if unit.id in units:
                    raise ValueError(f"duplicate unit id {unit.id!r}")
                units[unit.id] = unit
            else:
                table, key, value = _parse_rate(record)
                bucket = rate_maps.setdefault(table, {})
                if key in bucket:
                    raise ValueError(f"duplicate {table} rate for key {key!r}")
                bucket[key] = value
        except ValueError as exc:
            raise ParseError(path, line_no, str(exc)) from None

    corpus = Corpus(
        publications=publications,
        edges=tuple(edges),
        units=units,
        rates={kind: RateTable(kind, rates) for kind, rates in rate_maps.items()},
    )
    violations = validate(corpus)
    if violations:
        raise CorpusValidationError(path, violations)
    return corpus


def load_rate_tables(path) -> dict[str, RateTable]:
    """Load a rates-only file; returns tables keyed by "journal"/"field"."""
    rate_maps: dict[str, dict[str, float]] = {}
    for line_no, record in iter_records(path):
        if record["kind"] != "rate":
            raise ParseError(path, line_no, "rates file may only contain rate records")
        try:
            table, key, value = _parse_rate(record)
        except ValueError as exc:
            raise ParseError(path, line_no, str(exc)) from None
        bucket = rate_maps.setdefault(table, {})
        if key in bucket:
            raise ParseError(path, line_no, f"duplicate {table} rate for key {key!r}")
        bucket[key] = value
    return {kind: RateTable(kind, rates) for kind, rates in rate_maps.items()}


def write_corpus(corpus: Corpus, path) -> None:
    """Serialize a corpus back to the line-delimited format (round-trips)."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as handle:
        for pub in corpus.publications.values():
            record = {
                "kind": "pub",
                "id": pub.id,
                "year": pub.year,
                "journal": pub.journal,
                "fields": list(pub.fields),
                "n_refs": pub.n_refs,
            }
            if pub.citations_received is not None:
                record["citations_received"] = pub.citations_received
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")
        for edge in corpus.edges:
            handle.write(
                json.dumps(
                    {"kind": "edge", "citing": edge.citing, "cited": edge.cited, "year": edge.year},
                    ensure_ascii=False,
                )
                + "\n"
            )
        for unit in corpus.units.values():
            record = {
                "kind": "unit",
                "id": unit.id,
                "label": unit.label,
                "pubs": list(unit.pubs),
            }
            if unit.given is not None:
                record["given"] = dict(unit.given)
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")
        for table in corpus.rates.values():
            for key, value in table.rates.items():
                handle.write(
                    json.dumps(
                        {"kind": "rate", "table": table.kind, "key": key, "value": value},
                        ensure_ascii=False,
                    )
                    + "\n"
                )


def validate(corpus: Corpus) -> list[Violation]:
    """Check every referential invariant; returns the complete violation list."""
    violations: list[Violation] = []
    pubs = corpus.publications

    for pub_id, pub in pubs.items():
        if not pub_id:
            violations.append(Violation("empty-id", "<pub>", "publication id is empty"))
        if pub.n_refs < 0:
            violations.append(
                Violation("negative-refs", pub_id, f"n_refs = {pub.n_refs}")
            )

    citing_ids = set()
    for i, edge in enumerate(corpus.edges):
        citing_ids.add(edge.citing)
        if edge.citing not in pubs:
            violations.append(
                Violation("dangling-citing", edge.citing, f"edge #{i + 1}")
            )
        if edge.cited not in pubs:
            violations.append(Violation("dangling-cited", edge.cited, f"edge #{i + 1}"))

    for citing_id in sorted(citing_ids):
        pub = pubs.get(citing_id)
        if pub is not None and pub.n_refs < 1:
            violations.append(
                Violation(
                    "zero-reference-citing",
                    citing_id,
                    "publication cites others but has n_refs = 0",
                )
            )

    if corpus.has_edges:
        for pub_id, pub in pubs.items():
            if pub.citations_received is None:
                continue
            observed = corpus.in_degree(pub_id)
            if observed != pub.citations_received:
                violations.append(
                    Violation(
                        "citation-count-mismatch",
                        pub_id,
                        f"citations_received = {pub.citations_received} but"
                        f" {observed} incoming edge(s)",
                    )
                )

    for unit_id, unit in corpus.units.items():
        if not unit.pubs:
            violations.append(Violation("empty-unit", unit_id))
        for pub_id in unit.pubs:
            if pub_id not in pubs:
                violations.append(Violation("dangling-unit-pub", unit_id, pub_id))

    return violations
