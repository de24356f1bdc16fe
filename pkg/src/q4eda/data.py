"""Dataset collections, selections, gazetteer and corpus ingestion.

Collections are year-indexed numeric series grouped into named
datasets (wide CSV files listed by a JSON manifest). Everything is
immutable after load; loaders fail loudly with file and line.
"""

from __future__ import annotations

import csv
import difflib
import json
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class Series:
    key: str
    years: tuple[int, ...]   # strictly increasing
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.years) != len(self.values):
            raise ValueError(f"series {self.key!r}: years/values length mismatch")
        if any(b <= a for a, b in zip(self.years, self.years[1:])):
            raise ValueError(f"series {self.key!r}: years not strictly increasing")

    def window(self, y_a: int, y_b: int) -> list[float]:
        """Values at years within [y_a, y_b], year-ordered."""
        return [v for y, v in zip(self.years, self.values) if y_a <= y <= y_b]

    def window_years(self, y_a: int, y_b: int) -> list[int]:
        return [y for y in self.years if y_a <= y <= y_b]


@dataclass(frozen=True)
class Dataset:
    name: str
    series: dict[str, Series]


@dataclass(frozen=True)
class DatasetCollection:
    id: str
    datasets: dict[str, Dataset]

    def slice(self, name: str, key: str, y_a: int, y_b: int) -> list[float]:
        """The finding F: values of (name, key) within [y_a, y_b].
        Unknown name/key raises; an empty window is the caller's call."""
        dataset = self.datasets.get(name)
        if dataset is None:
            raise KeyError(f"unknown dataset {name!r}")
        series = dataset.series.get(key)
        if series is None:
            raise KeyError(f"unknown key {key!r} in dataset {name!r}")
        return series.window(y_a, y_b)


@dataclass(frozen=True)
class Selection:
    """A visual selection: which series and which year ranges."""

    dataset_names: tuple[str, ...]
    keys: tuple[str, ...]
    year_ranges: tuple[tuple[int, int], ...]
    weight_profile: str = "uniform"  # uniform | gaussian

    def __post_init__(self):
        if not self.dataset_names or not self.keys or not self.year_ranges:
            raise ValueError("selection needs at least one dataset, key and range")
        if self.weight_profile not in ("uniform", "gaussian"):
            raise ValueError(f"unknown weight profile {self.weight_profile!r}")
        for y_a, y_b in self.year_ranges:
            if y_a > y_b:
                raise ValueError(f"bad year range ({y_a}, {y_b})")


@dataclass(frozen=True)
class CountryEntry:
    name: str
    synonyms: tuple[str, ...]
    region: str | None
    region_weight: float = 0.5


class Gazetteer:
    """Country name -> synonyms/region, with reverse-synonym lookup."""

    def __init__(self, entries: dict[str, CountryEntry]):
        self.entries = entries
        self._reverse: dict[str, str] = {}
        for name, entry in entries.items():
            for synonym in entry.synonyms:
                self._reverse.setdefault(synonym, name)

    def resolve(self, name: str) -> CountryEntry | None:
        """Case-insensitive lookup by canonical name or synonym."""
        needle = name.strip().lower()
        if needle in self.entries:
            return self.entries[needle]
        canonical = self._reverse.get(needle)
        return self.entries[canonical] if canonical else None

    def near_matches(self, name: str, n: int = 3) -> list[str]:
        pool = list(self.entries) + list(self._reverse)
        return difflib.get_close_matches(name.strip().lower(), pool, n=n)


@dataclass(frozen=True)
class Document:
    id: str
    title: str
    body: str
    url: str | None = None

    @property
    def text(self) -> str:
        return f"{self.title} {self.body}"


def _parse_csv(path: Path) -> dict[str, Series]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty dataset file")
    header = rows[0]
    if len(header) < 2:
        raise ValueError(f"{path}:1: header needs a key column and at least one year")
    years = []
    for col, cell in enumerate(header[1:], start=2):
        try:
            years.append(int(cell))
        except ValueError:
            raise ValueError(f"{path}:1: non-numeric year header {cell!r} "
                             f"(column {col})") from None
    series: dict[str, Series] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or not any(cell.strip() for cell in row):
            continue
        key = row[0].strip().lower()
        if not key:
            raise ValueError(f"{path}:{lineno}: empty key")
        if key in series:
            raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
        point_years, point_values = [], []
        for year, cell in zip(years, row[1:]):
            cell = cell.strip()
            if not cell:
                continue  # sparse series are allowed
            try:
                value = float(cell)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: non-numeric value {cell!r} "
                                 f"for year {year}") from None
            point_years.append(year)
            point_values.append(value)
        series[key] = Series(key, tuple(point_years), tuple(point_values))
    return series


def load_collection(manifest_path) -> DatasetCollection:
    """Manifest: JSON {id, datasets: {name: csv_path}}, CSV paths
    relative to the manifest."""
    manifest_path = Path(manifest_path)
    with open(manifest_path, encoding="utf-8") as fh:
        manifest = json.load(fh)
    if "id" not in manifest or "datasets" not in manifest:
        raise ValueError(f"{manifest_path}: manifest needs 'id' and 'datasets'")
    datasets = {}
    for name, rel in manifest["datasets"].items():
        name = name.strip().lower()
        csv_path = manifest_path.parent / rel
        datasets[name] = Dataset(name, _parse_csv(csv_path))
    return DatasetCollection(str(manifest["id"]), datasets)


def load_gazetteer(path) -> Gazetteer:
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    entries = {}
    for name, body in raw.items():
        name = name.strip().lower()
        region = body.get("region")
        entries[name] = CountryEntry(
            name=name,
            synonyms=tuple(s.strip().lower() for s in body.get("synonyms", [])),
            region=region.strip().lower() if region else None,
            region_weight=float(body.get("region_weight", 0.5)),
        )
    return Gazetteer(entries)


def load_corpus(path) -> list[Document]:
    """JSONL corpus, one {"id","title","body","url"} object per line."""
    documents = []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: bad JSON ({exc.msg})") from None
            if "id" not in raw or "body" not in raw:
                raise ValueError(f"{path}:{lineno}: document needs 'id' and 'body'")
            doc_id = str(raw["id"])
            if doc_id in seen:
                raise ValueError(f"{path}:{lineno}: duplicate document id {doc_id!r}")
            seen.add(doc_id)
            documents.append(Document(
                id=doc_id,
                title=str(raw.get("title", "")),
                body=str(raw["body"]),
                url=raw.get("url"),
            ))
    return documents
