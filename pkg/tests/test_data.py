import json
from importlib import resources

import pytest

from q4eda.data import (Selection, Series, load_collection, load_corpus,
                        load_gazetteer)


class TestSeries:
    def test_window(self):
        s = Series("x", (1850, 1852, 1855), (1.0, 2.0, 3.0))
        assert s.window(1851, 1855) == [2.0, 3.0]
        assert s.window_years(1851, 1855) == [1852, 1855]
        assert s.window(1900, 1910) == []

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="length mismatch"):
            Series("x", (1850,), (1.0, 2.0))

    def test_years_must_increase(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            Series("x", (1850, 1850), (1.0, 2.0))


class TestSelection:
    def test_defaults(self):
        s = Selection(("life expectancy",), ("united states",), ((1850, 1860),))
        assert s.weight_profile == "uniform"

    @pytest.mark.parametrize("kwargs", [
        dict(dataset_names=(), keys=("a",), year_ranges=((1, 2),)),
        dict(dataset_names=("d",), keys=(), year_ranges=((1, 2),)),
        dict(dataset_names=("d",), keys=("a",), year_ranges=()),
    ])
    def test_empty_component_rejected(self, kwargs):
        with pytest.raises(ValueError, match="at least one"):
            Selection(**kwargs)

    def test_reversed_range_rejected(self):
        with pytest.raises(ValueError, match=r"bad year range \(1870, 1860\)"):
            Selection(("d",), ("a",), ((1870, 1860),))

    def test_unknown_profile_rejected(self):
        with pytest.raises(ValueError, match="unknown weight profile"):
            Selection(("d",), ("a",), ((1, 2),), weight_profile="bell")


class TestLoadCollection:
    def test_fixture_manifest(self, collection):
        assert collection.id == "historical-indicators"
        assert set(collection.datasets) == {"life expectancy", "democracy index"}
        us = collection.datasets["life expectancy"].series["united states"]
        assert us.years[0] == 1850 and us.years[-1] == 1930
        assert len(us.years) == 81

    def test_slice_and_errors(self, collection):
        window = collection.slice("life expectancy", "united states", 1917, 1919)
        assert window == [54.0, 47.0, 55.0]
        with pytest.raises(KeyError, match="unknown dataset"):
            collection.slice("rainfall", "united states", 1900, 1910)
        with pytest.raises(KeyError, match="unknown key"):
            collection.slice("life expectancy", "atlantis", 1900, 1910)

    def test_sparse_cells_skipped(self, tmp_path):
        csv_file = tmp_path / "d.csv"
        csv_file.write_text("country,1850,1851,1852\nfoo,1.0,,3.0\n")
        manifest = tmp_path / "m.json"
        manifest.write_text(json.dumps({"id": "t", "datasets": {"d": "d.csv"}}))
        series = load_collection(manifest).datasets["d"].series["foo"]
        assert series.years == (1850, 1852)
        assert series.values == (1.0, 3.0)

    def test_keys_lowercased(self, tmp_path):
        csv_file = tmp_path / "d.csv"
        csv_file.write_text("country,1850\nFrance,1.0\n")
        manifest = tmp_path / "m.json"
        manifest.write_text(json.dumps({"id": "t", "datasets": {"D": "d.csv"}}))
        coll = load_collection(manifest)
        assert "d" in coll.datasets
        assert "france" in coll.datasets["d"].series

    @pytest.mark.parametrize("csv_text,fragment", [
        ("", "empty dataset file"),
        ("country\n", "header needs a key column"),
        ("country,abc\n", "non-numeric year header 'abc'"),
        ("country,1850\n,1.0\n", ":2: empty key"),
        ("country,1850\na,1.0\na,2.0\n", "duplicate key 'a'"),
        ("country,1850\na,x\n", "non-numeric value 'x' for year 1850"),
    ])
    def test_csv_errors_carry_location(self, tmp_path, csv_text, fragment):
        csv_file = tmp_path / "d.csv"
        csv_file.write_text(csv_text)
        manifest = tmp_path / "m.json"
        manifest.write_text(json.dumps({"id": "t", "datasets": {"d": "d.csv"}}))
        with pytest.raises(ValueError, match=fragment):
            load_collection(manifest)

    def test_manifest_shape_checked(self, tmp_path):
        manifest = tmp_path / "m.json"
        manifest.write_text(json.dumps({"datasets": {}}))
        with pytest.raises(ValueError, match="manifest needs 'id' and 'datasets'"):
            load_collection(manifest)


@pytest.fixture(scope="module")
def gazetteer():
    return load_gazetteer(
        resources.files("q4eda.resources").joinpath("gazetteer.json"))


class TestGazetteer:

    def test_resolve_canonical(self, gazetteer):
        entry = gazetteer.resolve("United States")
        assert entry is not None
        assert entry.synonyms == ("united states of america", "american",
                                  "america", "usa")
        assert entry.region == "north america"
        assert entry.region_weight == 0.5

    def test_resolve_by_synonym(self, gazetteer):
        assert gazetteer.resolve("USA").name == "united states"
        assert gazetteer.resolve("  uk ").name == "united kingdom"

    def test_unknown_returns_none_with_near_matches(self, gazetteer):
        assert gazetteer.resolve("atlantis") is None
        assert "sweden" in gazetteer.near_matches("sweeden")


class TestLoadCorpus:
    def test_fixture_corpus(self, fixtures_dir):
        docs = load_corpus(fixtures_dir / "corpus.jsonl")
        assert len(docs) == 25
        assert len({d.id for d in docs}) == 25
        first = docs[0]
        assert first.text == f"{first.title} {first.body}"
        assert first.url.startswith("https://")

    def test_blank_lines_skipped(self, tmp_path):
        p = tmp_path / "c.jsonl"
        p.write_text('\n{"id": "a", "body": "text"}\n\n')
        docs = load_corpus(p)
        assert len(docs) == 1 and docs[0].title == "" and docs[0].url is None

    @pytest.mark.parametrize("text,fragment", [
        ('{"id": "a"}\n', "document needs 'id' and 'body'"),
        ('not json\n', ":1: bad JSON"),
        ('{"id": "a", "body": "x"}\n{"id": "a", "body": "y"}\n',
         ":2: duplicate document id 'a'"),
    ])
    def test_corpus_errors(self, tmp_path, text, fragment):
        p = tmp_path / "c.jsonl"
        p.write_text(text)
        with pytest.raises(ValueError, match=fragment):
            load_corpus(p)
