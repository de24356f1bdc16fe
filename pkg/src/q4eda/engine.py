"""Configuration and the end-to-end pipeline shared by CLI and service.

The engine owns the loaded resources (collection, corpus, index,
vectors, gazetteer, lexicon) and strings the stages together:
selection -> validated -> per-type sub-expressions -> combined query ->
rendered -> executed -> suggestions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources as importlib_resources
from pathlib import Path

from .combine import ConversionBundle, combine
from .convert import (ConverterConfig, Pattern, Trend, convert_country,
                      convert_finding, convert_keyword, convert_years,
                      detect_pattern, detect_trend)
from .data import (DatasetCollection, Document, Gazetteer, Selection,
                   load_collection, load_corpus, load_gazetteer)
from .ir import QueryExpr, print_expr
from .nlp import EmbeddingModel, load_lexicon, load_model
from .render import to_es_simple, to_local
from .search import BackendError, DocHit, EsSettings, Index, build_index
from .search import execute as execute_local
from .search import execute_es
from .stability import StabilityReport, run_stability
from .suggest import Ranking, suggest_from_pattern, suggest_from_text


class SelectionError(ValueError):
    """Selection cannot be served by the loaded resources."""


class UnknownNameError(SelectionError):
    """Dataset, key or collection id not present."""


class InvalidRangeError(SelectionError):
    """Malformed year range or profile."""


class EmptySliceError(SelectionError):
    """A selected triple covers no data points."""


@dataclass(frozen=True)
class EngineConfig:
    manifest: Path
    corpus: Path
    embeddings: Path
    gazetteer: Path | None = None  # None -> bundled file
    antonyms: Path | None = None   # None -> bundled file
    backend: str = "local"         # local | es
    es: EsSettings | None = None
    converter: ConverterConfig = field(default_factory=ConverterConfig)
    top_k: int = 10
    host: str = "127.0.0.1"
    port: int = 8000
    ui_dir: Path | None = None


def load_config(path) -> EngineConfig:
    """JSON config; relative paths resolve against the config file."""
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    base = path.parent

    def resolve(key: str, required: bool = False) -> Path | None:
        value = raw.get(key)
        if value is None:
            if required:
                raise ValueError(f"{path}: missing required config key {key!r}")
            return None
        return (base / value).resolve()

    converter = ConverterConfig(**raw.get("converter", {}))
    es_raw = raw.get("es")
    es = EsSettings(**es_raw) if es_raw else None
    backend = raw.get("backend", "local")
    if backend not in ("local", "es"):
        raise ValueError(f"{path}: unknown backend {backend!r}")
    if backend == "es" and es is None:
        raise ValueError(f"{path}: backend 'es' needs an 'es' section")
    return EngineConfig(
        manifest=resolve("manifest", required=True),
        corpus=resolve("corpus", required=True),
        embeddings=resolve("embeddings", required=True),
        gazetteer=resolve("gazetteer"),
        antonyms=resolve("antonyms"),
        backend=backend,
        es=es,
        converter=converter,
        top_k=int(raw.get("top_k", 10)),
        host=raw.get("host", "127.0.0.1"),
        port=int(raw.get("port", 8000)),
        ui_dir=resolve("ui_dir"),
    )


@dataclass(frozen=True)
class ConvertOutcome:
    expr: QueryExpr
    ir_text: str
    es_text: str
    trend: Trend | None    # of the anchor finding, when it exists
    pattern: Pattern | None
    pf: float | None


@dataclass(frozen=True)
class QueryOutcome:
    conversion: ConvertOutcome
    documents: list[DocHit]
    per_document_suggestions: list[tuple[Ranking, Ranking]]  # (datasets, keys)
    pattern_suggestions: tuple[Ranking, Ranking] | None      # (keys, datasets)


def _bundled(name: str) -> Path:
    return Path(str(importlib_resources.files("q4eda.resources").joinpath(name)))


class Engine:
    def __init__(self, collection: DatasetCollection, corpus: list[Document],
                 model: EmbeddingModel, lexicon: dict[str, tuple[str, ...]],
                 gazetteer: Gazetteer, converter: ConverterConfig | None = None,
                 *, backend: str = "local", es: EsSettings | None = None,
                 top_k: int = 10):
        self.collection = collection
        self.corpus = corpus
        self.documents = {doc.id: doc for doc in corpus}
        self.index: Index = build_index(corpus)
        self.model = model
        self.lexicon = lexicon
        self.gazetteer = gazetteer
        self.converter = converter or ConverterConfig()
        self.backend = backend
        self.es = es
        self.top_k = top_k

    @classmethod
    def from_config(cls, config: EngineConfig) -> "Engine":
        return cls(
            collection=load_collection(config.manifest),
            corpus=load_corpus(config.corpus),
            model=load_model(config.embeddings),
            lexicon=load_lexicon(config.antonyms or _bundled("antonyms.txt")),
            gazetteer=load_gazetteer(config.gazetteer or _bundled("gazetteer.json")),
            converter=config.converter,
            backend=config.backend,
            es=config.es,
            top_k=config.top_k,
        )

    def validate(self, selection: Selection) -> None:
        """Raise a typed SelectionError for anything unservable."""
        for name in selection.dataset_names:
            dataset = self.collection.datasets.get(name)
            if dataset is None:
                raise UnknownNameError(f"unknown dataset {name!r}")
            for key in selection.keys:
                if key not in dataset.series:
                    raise UnknownNameError(f"unknown key {key!r} in dataset {name!r}")
        for name in selection.dataset_names:
            for key in selection.keys:
                for y_a, y_b in selection.year_ranges:
                    if not self.collection.slice(name, key, y_a, y_b):
                        raise EmptySliceError(
                            f"no data for {key!r} in {name!r} between {y_a} and {y_b}")

    def key_expr(self, key: str) -> QueryExpr:
        """Countries go through the gazetteer; anything else expands as
        a keyword."""
        if self.gazetteer.resolve(key) is not None:
            return convert_country(key, self.gazetteer)
        return convert_keyword(key, self.model, self.lexicon, self.converter.neighbor_k)

    def build_bundle(self, selection: Selection) -> ConversionBundle:
        cfg = self.converter
        country_exprs = {key: self.key_expr(key) for key in selection.keys}
        dataset_exprs = {name: convert_keyword(name, self.model, self.lexicon,
                                               cfg.neighbor_k)
                         for name in selection.dataset_names}
        year_exprs = {rng: convert_years(rng[0], rng[1], selection.weight_profile)
                      for rng in selection.year_ranges}
        finding_exprs = {}
        for key in selection.keys:
            for name in selection.dataset_names:
                for rng in selection.year_ranges:
                    values = self.collection.slice(name, key, rng[0], rng[1])
                    finding_exprs[(key, name, rng)] = convert_finding(
                        values, cfg, self.model, self.lexicon)
        return ConversionBundle(country_exprs, dataset_exprs, year_exprs,
                                finding_exprs)

    def _anchor_finding(self, selection: Selection) -> list[float]:
        name = selection.dataset_names[0]
        key = selection.keys[0]
        y_a, y_b = selection.year_ranges[0]
        return self.collection.slice(name, key, y_a, y_b)

    def convert(self, selection: Selection) -> ConvertOutcome:
        self.validate(selection)
        expr = combine(self.build_bundle(selection))
        anchor = self._anchor_finding(selection)
        trend = pattern = pf = None
        if len(anchor) >= 2:
            trend = detect_trend(anchor, self.converter)
            pattern, pf = detect_pattern(anchor, self.converter)
        return ConvertOutcome(expr, print_expr(expr), to_es_simple(expr),
                              trend, pattern, pf)

    def execute(self, expr: QueryExpr, top_k: int | None = None,
                backend: str | None = None) -> list[DocHit]:
        k = top_k or self.top_k
        chosen = backend or self.backend
        if chosen == "local":
            return execute_local(self.index, to_local(expr), k)
        if chosen == "es":
            if self.es is None:
                raise BackendError("es backend requested but not configured")
            return execute_es(self.es, to_es_simple(expr), k)
        raise ValueError(f"unknown backend {chosen!r}")

    def query(self, selection: Selection, *, top_k: int | None = None,
              text_mode: str = "direct", pattern_method: str = "pearson",
              backend: str | None = None) -> QueryOutcome:
        conversion = self.convert(selection)
        documents = self.execute(conversion.expr, top_k, backend)
        per_doc = []
        for hit in documents:
            doc = self.documents.get(hit.doc_id)
            if doc is None:  # hits from a remote backend we never loaded
                per_doc.append((Ranking("dataset", ()), Ranking("key", ())))
                continue
            per_doc.append(suggest_from_text(doc, self.collection, text_mode,
                                             self.model, self.lexicon,
                                             self.index, self.converter.neighbor_k))
        anchor = self._anchor_finding(selection)
        pattern_suggestions = None
        if anchor:
            pattern_suggestions = suggest_from_pattern(selection, self.collection,
                                                       pattern_method)
        return QueryOutcome(conversion, documents, per_doc, pattern_suggestions)

    def run_ids(self, selection: Selection, top_k: int | None = None) -> list[str]:
        """Convert and execute, returning ranked document ids only."""
        expr = combine(self.build_bundle(selection))
        return [hit.doc_id for hit in self.execute(expr, top_k)]

    def stability_report(self, *, top_k: int = 10, top_n: int = 6,
                         window: int = 3) -> StabilityReport:
        return run_stability(
            self.collection,
            lambda selection: self.run_ids(selection, top_k),
            self.converter, top_n=top_n, window=window)
