from __future__ import annotations

import json

import pytest

from rplkit.cli import main
from rplkit.corpus import load_example


@pytest.fixture()
def supply_file(tmp_path):
    path = tmp_path / "supply.rpl"
    path.write_text(load_example("supply_chain.rpl"), encoding="utf-8")
    return str(path)


def test_check_ok(supply_file, capsys):
    assert main(["check", supply_file]) == 0
    assert "OK" in capsys.readouterr().out


def test_check_reports_diagnostics(tmp_path, capsys):
    bad = tmp_path / "bad.rpl"
    bad.write_text("module M;\n{\n    Int x = ;\n}\n")
    assert main(["check", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "error" in out and ":3:" in out


def test_simulate_json(supply_file, capsys):
    code = main(["simulate", supply_file, "--efficiency", "100", "--availability", "100",
                 "--cases", "1", "--sims", "10", "--seed", "7", "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["sims"] == 10
    assert payload["violations"]["total"] == 10
    assert payload["file"] == "supply.rpl"


def test_simulate_human_output(supply_file, capsys):
    assert main(["simulate", supply_file, "--sims", "3"]) == 0
    out = capsys.readouterr().out
    assert "deadline violations" in out
    assert "check_goods" in out


def test_missing_file_is_exit_2(capsys):
    assert main(["simulate", "missing.rpl"]) == 2
    assert "no such file" in capsys.readouterr().err


def test_unknown_flag_is_exit_64(supply_file, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["simulate", supply_file, "--frobnicate"])
    assert exc.value.code == 64
    assert "usage" in capsys.readouterr().err


def test_no_command_is_usage(capsys):
    assert main([]) == 64


def test_runtime_error_is_exit_2(supply_file, capsys):
    assert main(["simulate", supply_file, "--availability", "0", "--sims", "1"]) == 2
    assert "deadlock" in capsys.readouterr().err


def test_peak_json(supply_file, capsys):
    code = main(["peak", supply_file, "--cases", "2", "--sims", "3", "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["perCategory"]["Van"]["exact"] == 2


def test_peak_no_exact(supply_file, capsys):
    assert main(["peak", supply_file, "--no-exact", "--sims", "2", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["perCategory"]["Van"]["exact"] is None


def test_time_json(supply_file, capsys):
    code = main(["time", supply_file, "--efficiency", "70", "--cases", "4", "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["evaluations"][0]["sequential"] == 2280
    assert payload["sequential"].startswith("(CONC_CASES*")


def test_store_flag_appends(supply_file, tmp_path, capsys):
    journal = tmp_path / "runs.jsonl"
    assert main(["simulate", supply_file, "--sims", "2", "--store", str(journal), "--json"]) == 0
    assert main(["simulate", supply_file, "--sims", "2", "--store", str(journal), "--json"]) == 0
    lines = journal.read_text().splitlines()
    assert len(lines) == 2
    ids = [json.loads(line)["execId"] for line in lines]
    assert len(set(ids)) == 2  # second run got a salted id
