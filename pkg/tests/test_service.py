import time

import pytest
from fastapi.testclient import TestClient

from q4eda.service import create_app

BRUSH_BODY = {
    "dataset_names": ["life expectancy"],
    "keys": ["united states"],
    "year_ranges": [[1860, 1866]],
}


@pytest.fixture(scope="module")
def client(engine):
    return TestClient(create_app(engine))


class TestHealth:
    def test_shape(self, client):
        got = client.get("/v1/health")
        assert got.status_code == 200
        payload = got.json()
        assert payload["status"] == "ok"
        assert payload["resources"] == {
            "collections": 1, "datasets": 2, "documents": 25, "vocabulary": 80}


class TestCollections:
    def test_list(self, client):
        assert client.get("/v1/collections").json() == ["historical-indicators"]

    def test_datasets(self, client):
        got = client.get("/v1/collections/historical-indicators/datasets")
        assert got.status_code == 200
        by_name = {d["name"]: d for d in got.json()}
        assert set(by_name) == {"life expectancy", "democracy index"}
        life = by_name["life expectancy"]
        assert "united states" in life["keys"]
        assert life["year_min"] == 1850 and life["year_max"] == 1930

    def test_unknown_collection_404(self, client):
        got = client.get("/v1/collections/nope/datasets")
        assert got.status_code == 404
        payload = got.json()
        assert payload["code"] == "not_found"
        assert set(payload) == {"code", "message", "detail"}


class TestSeries:
    def test_fetch(self, client):
        got = client.get("/v1/series",
                         params={"dataset": "Life Expectancy", "key": "Chile"})
        assert got.status_code == 200
        payload = got.json()
        assert payload["dataset"] == "life expectancy"
        assert payload["key"] == "chile"
        assert payload["years"][0] == 1850
        assert len(payload["years"]) == len(payload["values"])

    def test_unknown_dataset_404(self, client):
        got = client.get("/v1/series", params={"dataset": "x", "key": "chile"})
        assert got.status_code == 404 and got.json()["code"] == "not_found"

    def test_unknown_key_404(self, client):
        got = client.get("/v1/series",
                         params={"dataset": "life expectancy", "key": "x"})
        assert got.status_code == 404 and got.json()["code"] == "not_found"


class TestConvert:
    def test_brush(self, client):
        got = client.post("/v1/convert", json=BRUSH_BODY)
        assert got.status_code == 200
        payload = got.json()
        assert payload["ir_text"].startswith("(((united states)^2")
        assert payload["trend"] == "neutral"
        assert payload["pattern"] == "valley"
        assert payload["pf"] < -1.5
        assert "+" in payload["es_query"]

    def test_names_normalized(self, client):
        body = dict(BRUSH_BODY, dataset_names=["  Life Expectancy "],
                    keys=["United States"])
        assert client.post("/v1/convert", json=body).status_code == 200

    def test_unknown_name_400(self, client):
        body = dict(BRUSH_BODY, keys=["atlantis"])
        got = client.post("/v1/convert", json=body)
        assert got.status_code == 400
        assert got.json()["code"] == "unknown_name"

    def test_unknown_collection_400(self, client):
        body = dict(BRUSH_BODY, collection="other")
        got = client.post("/v1/convert", json=body)
        assert got.status_code == 400
        assert got.json()["code"] == "unknown_name"

    def test_reversed_range_400(self, client):
        body = dict(BRUSH_BODY, year_ranges=[[1870, 1860]])
        got = client.post("/v1/convert", json=body)
        assert got.status_code == 400
        assert got.json()["code"] == "invalid_range"

    def test_empty_slice_422(self, client):
        body = dict(BRUSH_BODY, year_ranges=[[1700, 1710]])
        got = client.post("/v1/convert", json=body)
        assert got.status_code == 422
        assert got.json()["code"] == "empty_slice"

    def test_malformed_body_422(self, client):
        got = client.post("/v1/convert", json={"keys": ["united states"]})
        assert got.status_code == 422  # pydantic validation


class TestQuery:
    def test_brush_documents(self, client):
        got = client.post("/v1/query", json=dict(BRUSH_BODY, top_k=5))
        assert got.status_code == 200
        payload = got.json()
        ids = [d["doc_id"] for d in payload["documents"]]
        assert set(ids) == {
            "civil-war-outbreak", "antietam-mortality", "gettysburg-toll",
            "wilderness-campaign", "appomattox-aftermath"}
        first = payload["documents"][0]
        assert first["title"] and first["url"].startswith("https://")
        assert len(payload["per_document_suggestions"]) == 5
        block = payload["per_document_suggestions"][0]
        assert block["datasets"]["kind"] == "dataset"
        assert block["keys"]["kind"] == "key"

    def test_pattern_suggestions_block(self, client):
        got = client.post("/v1/query",
                          json=dict(BRUSH_BODY, pattern_method="pearson"))
        payload = got.json()
        keys = payload["pattern_suggestions"]["keys"]["entries"]
        assert [keys[0][0], keys[1][0]] == ["sweden", "united kingdom"]
        datasets = payload["pattern_suggestions"]["datasets"]["entries"]
        assert datasets[0][0] == "democracy index"

    def test_text_modes_accepted(self, client):
        for mode in ["direct", "indirect", "nlp"]:
            got = client.post("/v1/query", json=dict(BRUSH_BODY, text_mode=mode))
            assert got.status_code == 200, mode

    def test_unconfigured_es_backend_502(self, client):
        got = client.post("/v1/query", json=dict(BRUSH_BODY, backend="es"))
        assert got.status_code == 502
        assert got.json()["code"] == "backend_error"

    def test_bad_enum_422(self, client):
        got = client.post("/v1/query", json=dict(BRUSH_BODY, text_mode="psychic"))
        assert got.status_code == 422


class TestStabilityJobs:
    def poll(self, client, job_id, timeout=30.0):
        deadline = time.monotonic() + timeout
        while time.monotonic() < deadline:
            state = client.get(f"/v1/stability/{job_id}").json()
            if state["status"] != "running":
                return state
            time.sleep(0.05)
        raise AssertionError("stability job never settled")

    def test_lifecycle(self, client):
        got = client.post("/v1/stability", json={"top_n": 6, "window": 3})
        assert got.status_code == 200
        job_id = got.json()["job_id"]
        assert got.json()["status"] == "running"
        state = self.poll(client, job_id)
        assert state["status"] == "done"
        report = state["report"]
        assert report["query_count"] == 73
        assert report["overall_mean"] == pytest.approx(0.875)
        assert report["per_pattern_type"]["peak"]["mean"] == 1.0

    def test_even_window_rejected(self, client):
        got = client.post("/v1/stability", json={"window": 2})
        assert got.status_code == 400
        assert got.json()["code"] == "invalid_range"

    def test_unknown_job_404(self, client):
        got = client.get("/v1/stability/deadbeef")
        assert got.status_code == 404
        assert got.json()["code"] == "not_found"


class TestUiMount:
    def test_absent_without_ui_dir(self, client):
        assert client.get("/ui").status_code == 404

    def test_mounted_when_configured(self, engine, tmp_path):
        (tmp_path / "index.html").write_text("<h1>charts</h1>")
        ui_client = TestClient(create_app(engine, ui_dir=tmp_path))
        got = ui_client.get("/ui/")
        assert got.status_code == 200
        assert "charts" in got.text
