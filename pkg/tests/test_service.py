from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from rplkit.service import create_app


@pytest.fixture()
def client(tmp_path):
    app = create_app(store_path=tmp_path / "runs.jsonl")
    return TestClient(app)


def run_body(source: str, tool: str = "simulate", **profile) -> dict:
    merged = {"efficiency": 100, "availability": 100, "cases": 1, "sims": 10, "seed": 1}
    merged.update(profile)
    return {"source": source, "fileName": "supply_chain.rpl", "tool": tool, "profile": merged}


def test_examples_listing(client):
    names = client.get("/api/examples").json()
    assert "supply_chain.rpl" in names
    got = client.get("/api/examples/supply_chain.rpl")
    assert got.status_code == 200
    assert got.json()["source"].startswith("//")
    assert client.get("/api/examples/missing.rpl").status_code == 404


def test_post_simulate_run(client, supply_source):
    response = client.post("/api/runs", json=run_body(supply_source))
    assert response.status_code == 201
    payload = response.json()
    assert payload["violations"]["total"] == 10  # one per run, cases=1
    assert payload["time"]["min"] in (200, 400)
    assert len(payload["execId"]) == 8


def test_runs_listing_empty(client):
    response = client.get("/api/runs")
    assert response.status_code == 200
    assert response.json() == []


def test_unknown_exec_id_is_404(client):
    assert client.get("/api/runs/deadbeef").status_code == 404


def test_invalid_profile_is_422(client, supply_source):
    body = run_body(supply_source, availability=150)
    assert client.post("/api/runs", json=body).status_code == 422
    body = run_body(supply_source, efficiency=0)
    assert client.post("/api/runs", json=body).status_code == 422


def test_parse_failure_is_400_with_diagnostics(client):
    body = run_body("module M; {\n    Int x = ;\n}")
    response = client.post("/api/runs", json=body)
    assert response.status_code == 400
    diags = response.json()["diagnostics"]
    assert diags and {"line", "column", "severity", "message"} <= set(diags[0])


def test_runtime_failure_is_500_with_context(client, supply_source):
    body = run_body(supply_source, availability=0)
    response = client.post("/api/runs", json=body)
    assert response.status_code == 500
    payload = response.json()
    assert "deadlock" in payload["error"]
    assert payload["context"]["tool"] == "simulate"


def test_failed_runs_leave_no_record(client, supply_source):
    client.post("/api/runs", json=run_body(supply_source, availability=0))
    client.post("/api/runs", json={**run_body(supply_source), "source": "module M; { Int }"})
    assert client.get("/api/runs").json() == []


def test_overview_rows_newest_first(client, supply_source):
    first = client.post("/api/runs", json=run_body(supply_source)).json()["execId"]
    second = client.post("/api/runs", json=run_body(supply_source, seed=2)).json()["execId"]
    rows = client.get("/api/runs").json()
    assert [r["execId"] for r in rows] == [second, first]
    assert set(rows[0]) == {"execId", "file", "sims", "efficiency", "availability",
                            "cases", "time", "cost"}


def test_identical_posts_get_salted_ids(client, supply_source):
    body = run_body(supply_source)
    first = client.post("/api/runs", json=body).json()["execId"]
    second = client.post("/api/runs", json=body).json()["execId"]
    assert first != second
    assert len(client.get("/api/runs").json()) == 2


def test_round_trip_preserved_across_restart(tmp_path, supply_source):
    store = tmp_path / "runs.jsonl"
    client1 = TestClient(create_app(store_path=store))
    exec_id = client1.post("/api/runs", json=run_body(supply_source)).json()["execId"]
    before = client1.get(f"/api/runs/{exec_id}").content
    rows_before = client1.get("/api/runs").content

    client2 = TestClient(create_app(store_path=store))
    after = client2.get(f"/api/runs/{exec_id}").content
    rows_after = client2.get("/api/runs").content
    assert before == after
    assert rows_before == rows_after


def test_peak_and_time_runs(client, supply_source):
    peak = client.post("/api/runs", json=run_body(supply_source, tool="peak", sims=3))
    assert peak.status_code == 201
    assert peak.json()["perCategory"]["Van"]["observed"] == 1
    timed = client.post("/api/runs", json=run_body(supply_source, tool="time"))
    assert timed.status_code == 201
    assert timed.json()["evaluations"][0]["sequential"] == 400
    rows = client.get("/api/runs").json()
    peak_row = next(r for r in rows if r["execId"] == peak.json()["execId"])
    assert peak_row["time"] is None and peak_row["cost"] is None


def test_outline_endpoint(client, supply_source):
    response = client.get("/api/outline", params={"source": supply_source})
    assert response.status_code == 200
    entries = response.json()["entries"]
    assert {"kind": "class", "name": "Retailer",
            "line": 7, "column": 1} in entries
    bad = client.get("/api/outline", params={"source": "module M; { Int }"})
    assert bad.status_code == 400
    assert bad.json()["diagnostics"]


def test_charts_endpoint(client, supply_source):
    client.post("/api/runs", json=run_body(supply_source))
    series = client.get("/api/charts").json()
    assert len(series["time"]) == 1
    assert series["cost"][0]["millions"] == pytest.approx(
        series["cost"][0]["value"] / 1_000_000)


def test_presets_cover_all_tools(client):
    presets = client.get("/api/presets").json()
    assert {p["tool"] for p in presets} == {"simulate", "peak", "time"}


def test_run_timeout_yields_504(tmp_path, supply_source):
    app = create_app(store_path=tmp_path / "runs.jsonl", run_timeout=0.0)
    client = TestClient(app)
    response = client.post("/api/runs", json=run_body(supply_source))
    assert response.status_code == 504


def test_store_path_defaults_to_env(tmp_path, monkeypatch, supply_source):
    journal = tmp_path / "env-runs.jsonl"
    monkeypatch.setenv("RPL_STORE", str(journal))
    client = TestClient(create_app())
    response = client.post("/api/runs", json=run_body(supply_source, sims=2))
    assert response.status_code == 201
    assert journal.exists()
