from __future__ import annotations

import json

import pytest

from rplkit.store import DuplicateExecIdError, RunRecord, RunStore, chart_series, overview_rows


def record(exec_id: str, avg_cost: str = "100.00", avg_time: str = "10.00") -> RunRecord:
    return RunRecord(
        exec_id=exec_id,
        file_name="m.rpl",
        tool="simulate",
        num_sims=10,
        efficiency=100,
        availability=100,
        cases=1,
        time_stats={"min": 5, "max": 15, "avg": avg_time},
        cost_stats={"min": 50, "max": 150, "avg": avg_cost},
        created_at="2026-01-01T00:00:00+00:00",
        payload={"execId": exec_id, "file": "m.rpl"},
    )


def test_append_then_get_round_trip(tmp_path):
    store = RunStore(tmp_path / "runs.jsonl")
    store.append(record("aaaa0001"))
    got = store.get("aaaa0001")
    assert got is not None
    assert got.payload == {"execId": "aaaa0001", "file": "m.rpl"}


def test_list_preserves_insertion_order(tmp_path):
    store = RunStore(tmp_path / "runs.jsonl")
    store.append(record("aaaa0001"))
    store.append(record("aaaa0002"))
    assert [r.exec_id for r in store.list()] == ["aaaa0001", "aaaa0002"]


def test_duplicate_exec_id_rejected(tmp_path):
    store = RunStore(tmp_path / "runs.jsonl")
    store.append(record("aaaa0001"))
    with pytest.raises(DuplicateExecIdError):
        store.append(record("aaaa0001"))


def test_reload_from_disk(tmp_path):
    path = tmp_path / "runs.jsonl"
    RunStore(path).append(record("aaaa0001"))
    again = RunStore(path)
    assert [r.exec_id for r in again.list()] == ["aaaa0001"]
    assert again.get("aaaa0001").payload["file"] == "m.rpl"


def test_corrupt_line_skipped_with_warning(tmp_path, caplog):
    path = tmp_path / "runs.jsonl"
    store = RunStore(path)
    store.append(record("aaaa0001"))
    store.append(record("aaaa0002"))
    lines = path.read_text().splitlines()
    lines.insert(1, "{ not json at all")
    path.write_text("\n".join(lines) + "\n")
    with caplog.at_level("WARNING"):
        reloaded = RunStore(path)
    assert [r.exec_id for r in reloaded.list()] == ["aaaa0001", "aaaa0002"]
    assert any("corrupt" in message for message in caplog.messages)


def test_fresh_exec_id_salts_collisions(tmp_path):
    store = RunStore(tmp_path / "runs.jsonl")
    assert store.fresh_exec_id("aaaa0001") == "aaaa0001"
    store.append(record("aaaa0001"))
    salted = store.fresh_exec_id("aaaa0001")
    assert salted != "aaaa0001"
    assert len(salted) == 8
    int(salted, 16)


def test_overview_rows_project_eight_columns(tmp_path):
    rows = overview_rows([record("aaaa0001")])
    assert rows == [{
        "execId": "aaaa0001", "file": "m.rpl", "sims": 10, "efficiency": 100,
        "availability": 100, "cases": 1,
        "time": {"min": 5, "max": 15, "avg": "10.00"},
        "cost": {"min": 50, "max": 150, "avg": "100.00"},
    }]


def test_chart_series_empty():
    assert chart_series([]) == {"time": [], "cost": []}


def test_chart_series_millions_scaling():
    series = chart_series([record("aaaa0001", avg_cost="2212500.00")])
    assert series["cost"][0]["millions"] == 2.2125
    assert series["cost"][0]["value"] == 2212500.0


def test_chart_series_order_and_length():
    records = [record(f"aaaa000{i}") for i in range(1, 4)]
    series = chart_series(records)
    assert [e["execId"] for e in series["time"]] == ["aaaa0001", "aaaa0002", "aaaa0003"]
    assert len(series["cost"]) == 3


def test_non_simulate_records_skip_charts(tmp_path):
    peak = RunRecord("bbbb0001", "m.rpl", "peak", 1, 100, 100, 1, None, None,
                     "2026-01-01T00:00:00+00:00", {"execId": "bbbb0001"})
    series = chart_series([peak, record("aaaa0001")])
    assert len(series["time"]) == 1


def test_journal_lines_are_json(tmp_path):
    path = tmp_path / "runs.jsonl"
    RunStore(path).append(record("aaaa0001"))
    line = path.read_text().splitlines()[0]
    data = json.loads(line)
    assert data["execId"] == "aaaa0001"
    assert data["payload"]["file"] == "m.rpl"
