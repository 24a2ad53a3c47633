"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines.
"""

from __future__ import annotations

import time

from fastapi.testclient import TestClient

from conftest import CORPUS, load, make_profile
from rplkit.bounds import PARAMS, beval, build_equations, solve
from rplkit.corpus import load_example
from rplkit.parser import load_program
from rplkit.peak import exact_peak, observed_peak, static_peak_bound
from rplkit.printer import pretty
from rplkit.profiles import preprocess, preprocess_symbolic
from rplkit.service import create_app
from rplkit.simulate import json_text, result_json, simulate_many, simulate_once


def test_accept_parse_fidelity(supply_source):
    started = time.perf_counter()
    program, diags = load_program(preprocess(supply_source, make_profile()))
    assert program is not None
    assert diags == [], [str(d) for d in diags]
    for name in CORPUS:
        text = preprocess(load_example(name), make_profile(cases=2))
        parsed, d = load_program(text)
        assert parsed is not None, (name, d)
        reparsed, d2 = load_program(pretty(parsed))
        assert d2 == []
        assert reparsed == parsed, name
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0, f"parse fidelity took {elapsed:.2f}s"
    print(f"\nPASS: parse fidelity (zero diagnostics, corpus round-trip, {elapsed * 1000:.0f} ms)")


def test_accept_trace_oracle(supply_source, check_goods_line):
    profile = make_profile()
    program = load(supply_source, profile)
    outcomes = set()
    for seed in range(20):
        run = simulate_once(program, profile, seed)
        assert run.violations == {("check_goods", check_goods_line): 1}
        if run.exec_time == 200:
            outcomes.add(1)
        else:
            assert run.exec_time == 400
            assert run.financial_cost == 2_212_500
            outcomes.add(0)
    assert outcomes == {0, 1}, "both random(1) outcomes must be exercised"
    print("\nPASS: trace oracle (200 when goods found; 400 and cost 2,212,500 otherwise; "
          "one violation at the check_goods call)")


def test_accept_aggregation(supply_source, check_goods_line):
    profile = make_profile(sims=10)
    program = load(supply_source, profile)
    agg = simulate_many(program, profile)
    assert agg.total_violations == 10
    assert agg.per_site_violations == {("check_goods", check_goods_line): 10}
    tmin, tmax, tavg = agg.time_stats
    assert tmin in (200, 400) and tmax in (200, 400)
    assert tmin <= tavg <= tmax
    cmin, cmax, cavg = agg.cost_stats
    assert cmin <= cavg <= cmax
    print("\nPASS: aggregation (10 sims, 10 violations, time bounds in {200,400}, min<=avg<=max)")


def test_accept_determinism(supply_source):
    profile = make_profile(sims=10)
    program = load(supply_source, profile)
    a = json_text(result_json(simulate_many(program, profile, file_name="supply_chain.rpl")))
    b = json_text(result_json(simulate_many(program, profile, file_name="supply_chain.rpl")))
    assert a == b
    print("\nPASS: determinism (same inputs, byte-identical result JSON)")


def test_accept_peak_sandwich(supply_source):
    exhaustive_time = 0.0
    for cases in (1, 2, 4):
        profile = make_profile(tool="peak", cases=cases, sims=5)
        program = load(supply_source, profile)
        observed = observed_peak(program, profile)
        started = time.perf_counter()
        exact, _truncated, _ = exact_peak(program, profile, budget=300_000)
        if cases <= 2:
            exhaustive_time += time.perf_counter() - started
        static = static_peak_bound(program, profile)
        for cat in ("Van", "Driver", "Helper"):
            assert observed[cat] <= exact[cat] <= static[cat], (cases, cat)
        if cases == 1:
            assert observed == exact == static == {"Van": 1, "Driver": 1, "Helper": 1}
    for name in ("parallel_holds.rpl", "chained_holds.rpl"):
        profile = make_profile(tool="peak", sims=5)
        program = load(load_example(name), profile)
        observed = observed_peak(program, profile)
        exact, _truncated, _ = exact_peak(program, profile)
        static = static_peak_bound(program, profile)
        for cat in static:
            assert observed.get(cat, 0) <= exact[cat] <= static[cat], (name, cat)
    assert exhaustive_time < 30.0, f"exhaustive search took {exhaustive_time:.1f}s at cases<=2"
    print(f"\nPASS: peak sandwich (observed<=exact<=static on cases 1/2/4 and fixtures; "
          f"all equal 1 at cases=1; exhaustive {exhaustive_time:.2f}s at cases<=2)")


def test_accept_time_bound_soundness(supply_source):
    report = None
    expected = {(100, 1): 400, (100, 8): 3200, (70, 1): 570, (70, 4): 2280}
    sym_profile = make_profile(tool="time")
    symbolic, diags = load_program(preprocess_symbolic(supply_source, sym_profile),
                                   predeclared=PARAMS)
    assert symbolic is not None, diags
    report = solve(build_equations(symbolic))
    for (eff, cases), bound_value in expected.items():
        assert beval(report.sequential, eff, cases) == bound_value, (eff, cases)
        profile = make_profile(efficiency=eff, cases=cases, sims=20, seed=1)
        program = load(supply_source, profile)
        agg = simulate_many(program, profile)
        assert all(r.exec_time <= bound_value for r in agg.runs), (eff, cases)
    print("\nPASS: time-bound soundness (bounds 400/3200/570/2280; "
          "20 seeds per profile all within bound)")


def test_accept_monotonicity(supply_source):
    previous = 0
    values = []
    for eff in (100, 90, 80, 70, 60, 50):
        profile = make_profile(efficiency=eff, sims=1, seed=11)
        program = load(supply_source, profile)
        t = simulate_once(program, profile, 11).exec_time
        values.append(t)
        assert t >= previous, values
        previous = t
    print(f"\nPASS: monotonicity (execution time {values} non-decreasing as efficiency drops)")


def test_accept_service_contract(tmp_path, supply_source):
    store = tmp_path / "runs.jsonl"
    body = {
        "source": supply_source,
        "fileName": "supply_chain.rpl",
        "tool": "simulate",
        "profile": {"efficiency": 100, "availability": 100, "cases": 1, "sims": 10, "seed": 1},
    }
    client = TestClient(create_app(store_path=store))
    created = client.post("/api/runs", json=body)
    assert created.status_code == 201
    exec_id = created.json()["execId"]
    before = client.get(f"/api/runs/{exec_id}").content

    restarted = TestClient(create_app(store_path=store))
    after = restarted.get(f"/api/runs/{exec_id}").content
    assert before == after

    assert restarted.get("/api/runs/ffffffff").status_code == 404
    bad_profile = {**body, "profile": {**body["profile"], "availability": 999}}
    assert restarted.post("/api/runs", json=bad_profile).status_code == 422
    bad_source = {**body, "source": "module M; { Int }"}
    assert restarted.post("/api/runs", json=bad_source).status_code == 400
    print("\nPASS: service contract (bit-for-bit across restart; 400/404/422 as specified)")
