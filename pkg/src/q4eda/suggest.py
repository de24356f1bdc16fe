"""Nominal suggestions: which other keys and datasets to look at next.

Two families. Text suggestions score every key and dataset name against
one retrieved document (literal counting, expansion-term counting, or
embedding cosine). Pattern suggestions score other series against the
anchor finding by Pearson correlation or dynamic time warping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .data import DatasetCollection, Document, Selection
from .nlp import (EmbeddingModel, WeightedTerm, cosine, embed_terms,
                  expand, extract_keywords, tokenize)

NLP_DOC_KEYWORDS = 10  # document keywords fed into the embedding


@dataclass(frozen=True)
class Ranking:
    kind: str  # "dataset" | "key"
    entries: tuple[tuple[str, float], ...]  # sorted score desc, ties A-Z


def _ranking(kind: str, scored: list[tuple[str, float]]) -> Ranking:
    return Ranking(kind, tuple(sorted(scored, key=lambda ns: (-ns[1], ns[0]))))


def _occurrences(tokens: list[str], seq: list[str]) -> int:
    if not seq or len(seq) > len(tokens):
        return 0
    return sum(1 for i in range(len(tokens) - len(seq) + 1)
               if tokens[i:i + len(seq)] == seq)


def _collection_keys(collection: DatasetCollection) -> list[str]:
    seen: dict[str, None] = {}
    for dataset in collection.datasets.values():
        for key in dataset.series:
            seen.setdefault(key)
    return list(seen)


def suggest_from_text(doc: Document, collection: DatasetCollection, mode: str,
                      model: EmbeddingModel, lexicon: dict[str, tuple[str, ...]],
                      stats, k: int = 6) -> tuple[Ranking, Ranking]:
    """-> (dataset ranking, key ranking) for one document. Every
    candidate is scored; zero is a valid score."""
    doc_tokens = tokenize(doc.text)
    datasets = list(collection.datasets)
    keys = _collection_keys(collection)

    if mode == "direct":
        def score(nominal: str) -> float:
            return float(_occurrences(doc_tokens, tokenize(nominal)))
    elif mode == "indirect":
        def score(nominal: str) -> float:
            terms = expand(nominal, model, lexicon, k)
            if not terms:
                return 0.0
            hits = sum(_occurrences(doc_tokens, tokenize(t.term)) for t in terms)
            return hits / len(terms)
    elif mode == "nlp":
        doc_vector = None
        keywords = extract_keywords(doc.text, stats, NLP_DOC_KEYWORDS)
        if keywords:
            top = keywords[0][1]
            weighted = [WeightedTerm(t, s / top) for t, s in keywords]
            try:
                doc_vector = embed_terms(weighted, model)
            except ValueError:
                doc_vector = None

        def score(nominal: str) -> float:
            if doc_vector is None:
                return 0.0
            try:
                return cosine(embed_terms(expand(nominal, model, lexicon, k), model),
                              doc_vector)
            except ValueError:
                return 0.0
    else:
        raise ValueError(f"unknown text suggestion mode {mode!r}")

    return (_ranking("dataset", [(d, score(d)) for d in datasets]),
            _ranking("key", [(c, score(c)) for c in keys]))


def pearson(x, y) -> float:
    """Population-normalized correlation in [-1, 1]."""
    n = len(x)
    if n != len(y):
        raise ValueError("length mismatch")
    if n < 2:
        raise ValueError("need at least two points")
    mean_x = sum(x) / n
    mean_y = sum(y) / n
    cov = sum((a - mean_x) * (b - mean_y) for a, b in zip(x, y)) / n
    var_x = sum((a - mean_x) ** 2 for a in x) / n
    var_y = sum((b - mean_y) ** 2 for b in y) / n
    if var_x == 0.0 or var_y == 0.0:
        raise ValueError("zero variance")
    return cov / math.sqrt(var_x * var_y)


def dtw(x, y) -> float:
    """Unconstrained dynamic time warping, point cost |a - b|."""
    if not x or not y:
        raise ValueError("empty series")
    n, m = len(x), len(y)
    prev = [math.inf] * m
    for i in range(n):
        row = [0.0] * m
        for j in range(m):
            cost = abs(x[i] - y[j])
            if i == 0 and j == 0:
                row[j] = cost
            elif i == 0:
                row[j] = cost + row[j - 1]
            elif j == 0:
                row[j] = cost + prev[j]
            else:
                row[j] = cost + min(prev[j], row[j - 1], prev[j - 1])
        prev = row
    return prev[m - 1]


def dtw_sim(x, y) -> float:
    return 1.0 / (1.0 + dtw(x, y))


def suggest_from_pattern(selection: Selection, collection: DatasetCollection,
                         method: str) -> tuple[Ranking, Ranking]:
    """-> (key ranking, dataset ranking) around the anchor finding, the
    selection's first (dataset, key, range). Pearson drops candidates
    it cannot correlate (length mismatch, zero variance); dtw drops
    only empty slices."""
    if method not in ("pearson", "dtw"):
        raise ValueError(f"unknown pattern suggestion method {method!r}")
    name = selection.dataset_names[0]
    key = selection.keys[0]
    y_a, y_b = selection.year_ranges[0]
    anchor = collection.slice(name, key, y_a, y_b)
    if not anchor:
        raise ValueError(f"empty anchor slice ({name!r}, {key!r}, {y_a}-{y_b})")

    def score(candidate: list[float]) -> float | None:
        if not candidate:
            return None
        if method == "dtw":
            return dtw_sim(anchor, candidate)
        try:
            return pearson(anchor, candidate)
        except ValueError:
            return None

    key_scores = []
    for other, series in collection.datasets[name].series.items():
        if other == key:
            continue
        s = score(series.window(y_a, y_b))
        if s is not None:
            key_scores.append((other, s))
    dataset_scores = []
    for other_name, dataset in collection.datasets.items():
        if other_name == name or key not in dataset.series:
            continue
        s = score(dataset.series[key].window(y_a, y_b))
        if s is not None:
            dataset_scores.append((other_name, s))
    return _ranking("key", key_scores), _ranking("dataset", dataset_scores)
