"""Fractional counting of citations at the citing-article level.

Every citation a paper receives is weighted by the reciprocal of the citing
paper's reference-list length: a citation arriving from a 6-reference paper
contributes 1/6, one from a 40-reference paper contributes 1/40. Summing the
weights of a paper's incoming citations gives its fractional score, which
normalizes citing-side behavior without any journal classification scheme.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import Corpus, CorpusError, Publication, Unit
from .kernels import accumulate_weighted, csum

__all__ = [
    "FractionalScore",
    "ZeroReferenceError",
    "all_fractional_scores",
    "benchmark_ratio",
    "fractional_score",
    "fractional_weight",
    "unit_fractional_scores",
]


class ZeroReferenceError(CorpusError):
    """A citing paper with an empty reference list cannot be fractionated."""

    def __init__(self, pub_id: str):
        self.pub_id = pub_id
        super().__init__(
            f"zero-reference citing paper {pub_id!r}: cannot fractionate citations"
        )


@dataclass(frozen=True)
class FractionalScore:
    pub: str
    c_f: float


def fractional_weight(citing: Publication) -> float:
    """Weight of one citation from ``citing``: 1 / (its total reference count)."""
    if citing.n_refs < 1:
        raise ZeroReferenceError(citing.id)
    return 1.0 / citing.n_refs


def _score_vector(corpus: Corpus) -> dict[str, float]:
    cached = getattr(corpus, "_fractional_scores", None)
    if cached is not None:
        return cached

    pub_ids = list(corpus.publications)
    index = {pub_id: i for i, pub_id in enumerate(pub_ids)}
    cited_idx = np.empty(len(corpus.edges), dtype=np.int64)
    weights = np.empty(len(corpus.edges), dtype=np.float64)
    for i, edge in enumerate(corpus.edges):
        citing = corpus.publications.get(edge.citing)
        if citing is None:
            raise CorpusError(f"edge cites from unknown publication {edge.citing!r}")
        if edge.cited not in index:
            raise CorpusError(f"edge points to unknown publication {edge.cited!r}")
        weights[i] = fractional_weight(citing)
        cited_idx[i] = index[edge.cited]

    totals = accumulate_weighted(cited_idx, weights, len(pub_ids))
    cached = {pub_id: float(totals[i]) for pub_id, i in index.items()}
    corpus._fractional_scores = cached
    return cached


def all_fractional_scores(corpus: Corpus) -> dict[str, float]:
    """Fractional score of every publication in the corpus (cached)."""
    return dict(_score_vector(corpus))


def fractional_score(corpus: Corpus, pub_id: str) -> FractionalScore:
    """Fractional citation score of one publication."""
    if pub_id not in corpus.publications:
        raise CorpusError(f"unknown publication {pub_id!r}")
    return FractionalScore(pub=pub_id, c_f=_score_vector(corpus)[pub_id])


def unit_fractional_scores(corpus: Corpus, unit: Unit) -> list[FractionalScore]:
    """Per-publication fractional scores of a unit, in the unit's pub order."""
    if not unit.pubs:
        raise CorpusError(f"unit {unit.id!r} has no publications")
    scores = _score_vector(corpus)
    out = []
    for pub_id in unit.pubs:
        if pub_id not in corpus.publications:
            raise CorpusError(f"unit {unit.id!r} references unknown publication {pub_id!r}")
        out.append(FractionalScore(pub=pub_id, c_f=scores[pub_id]))
    return out


def benchmark_ratio(
    unit_scores: list[FractionalScore], reference_scores: list[FractionalScore]
) -> float:
    """Mean fractional score of a unit relative to an arbitrary reference set."""
    if not unit_scores:
        raise ValueError("unit score list is empty")
    if not reference_scores:
        raise ValueError("reference score list is empty")
    unit_mean = csum([s.c_f for s in unit_scores]) / len(unit_scores)
    ref_mean = csum([s.c_f for s in reference_scores]) / len(reference_scores)
    if ref_mean <= 0.0:
        raise ValueError("reference set has zero mean fractional score")
    return unit_mean / ref_mean
