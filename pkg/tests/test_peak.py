from __future__ import annotations

import pytest

from conftest import load, make_profile
from rplkit.corpus import load_example
from rplkit.errors import BudgetExceededError, UnboundedLoopError
from rplkit.peak import (
    build_task_dag,
    exact_peak,
    observed_peak,
    peak_report,
    static_peak_bound,
)

ALL_ONE = {"Van": 1, "Driver": 1, "Helper": 1}


def test_observed_single_case(supply_source):
    prof = make_profile(tool="peak", sims=5)
    program = load(supply_source, prof)
    assert observed_peak(program, prof) == ALL_ONE


def test_observed_empty_main():
    prof = make_profile(tool="peak")
    program = load(load_example("minimal.rpl"), prof)
    assert observed_peak(program, prof) == {}


def test_exact_equals_observed_single_case(supply_source):
    prof = make_profile(tool="peak", sims=5)
    program = load(supply_source, prof)
    exact, truncated, explored = exact_peak(program, prof)
    assert exact == ALL_ONE
    assert not truncated
    assert explored >= 2  # at least the two random(1) outcomes


def test_exact_parallel_holds_overlap():
    prof = make_profile(tool="peak")
    program = load(load_example("parallel_holds.rpl"), prof)
    exact, truncated, _ = exact_peak(program, prof)
    assert exact == {"Van": 2}
    assert not truncated


def test_exact_chained_holds_never_overlap():
    prof = make_profile(tool="peak")
    program = load(load_example("chained_holds.rpl"), prof)
    exact, truncated, _ = exact_peak(program, prof)
    assert exact == {"Van": 1}
    assert not truncated


def test_exact_is_schedule_order_independent(supply_source):
    prof = make_profile(tool="peak", cases=2)
    program = load(supply_source, prof)
    forward, _t1, _ = exact_peak(program, prof)
    backward, _t2, _ = exact_peak(program, prof, reverse_options=True)
    assert forward == backward


def test_exact_budget_exhaustion_raises(supply_source):
    prof = make_profile(tool="peak", cases=2)
    program = load(supply_source, prof)
    with pytest.raises(BudgetExceededError):
        exact_peak(program, prof, budget=0)


def test_static_chain_is_one():
    prof = make_profile(tool="peak")
    program = load(load_example("chained_holds.rpl"), prof)
    assert static_peak_bound(program, prof) == {"Van": 1}


def test_static_parallel_is_two():
    prof = make_profile(tool="peak")
    program = load(load_example("parallel_holds.rpl"), prof)
    assert static_peak_bound(program, prof) == {"Van": 2}


def test_static_never_exceeds_total_requested(supply_source):
    prof = make_profile(tool="peak", cases=4)
    program = load(supply_source, prof)
    bound = static_peak_bound(program, prof)
    nodes = build_task_dag(program)
    for cat, value in bound.items():
        total = sum(n.hold_profile.get(cat, 0) for n in nodes.values())
        assert value <= total


def test_task_dag_shape_single_case(supply_source):
    program = load(supply_source, make_profile(cases=1))
    nodes = build_task_dag(program)
    by_method: dict[str, list] = {}
    for node in nodes.values():
        by_method.setdefault(node.method_name, []).append(node)
    assert len(by_method["check_goods"]) == 1
    assert len(by_method["deliver_goods"]) == 2  # one per branch arm
    assert len(by_method["order_goods"]) == 1
    check = by_method["check_goods"][0]
    for node in by_method["deliver_goods"] + by_method["order_goods"]:
        assert check.key in node.preds
    # the two deliveries sit on opposite branch arms
    then_excl = by_method["deliver_goods"][0].excl
    else_excl = by_method["deliver_goods"][1].excl
    assert then_excl and else_excl and then_excl != else_excl
    assert by_method["check_goods"][0].hold_profile == {"Helper": 1}
    assert by_method["order_goods"][0].hold_profile == {"Driver": 1, "Van": 1, "Helper": 1}


def test_task_dag_unrolls_cases(supply_source):
    program = load(supply_source, make_profile(cases=3))
    nodes = build_task_dag(program)
    spawned = [n for n in nodes.values() if n.method_name == "process_order"]
    assert len(spawned) == 3
    # no ordering between cases
    for a in spawned:
        for b in spawned:
            assert a.key not in b.preds


def test_unbounded_loop_rejected():
    src = """
module M;
{
    Int going = 1;
    while (going == 1) {
        going = random(1);
    }
}
"""
    program = load(src)
    with pytest.raises(UnboundedLoopError):
        build_task_dag(program)


@pytest.mark.parametrize("cases", [1, 2, 4])
def test_sandwich_supply_chain(supply_source, cases):
    prof = make_profile(tool="peak", cases=cases, sims=5)
    program = load(supply_source, prof)
    observed = observed_peak(program, prof)
    exact, _truncated, _ = exact_peak(program, prof, budget=300_000)
    static = static_peak_bound(program, prof)
    for cat in ("Van", "Driver", "Helper"):
        assert observed[cat] <= exact[cat] <= static[cat], (cases, cat)


@pytest.mark.parametrize("name", ["parallel_holds.rpl", "chained_holds.rpl"])
def test_sandwich_fixtures(name):
    prof = make_profile(tool="peak", sims=5)
    program = load(load_example(name), prof)
    observed = observed_peak(program, prof)
    exact, _truncated, _ = exact_peak(program, prof)
    static = static_peak_bound(program, prof)
    for cat in static:
        assert observed.get(cat, 0) <= exact[cat] <= static[cat]


def test_peak_report_shape(supply_source):
    prof = make_profile(tool="peak", cases=2, sims=3)
    program = load(supply_source, prof)
    report = peak_report(program, prof)
    payload = report.to_json()
    assert set(payload) == {"perCategory", "exploredSchedules", "truncated"}
    assert set(payload["perCategory"]) == {"Van", "Driver", "Helper"}
    entry = payload["perCategory"]["Van"]
    assert set(entry) == {"observed", "exact", "static"}


def test_peak_report_without_exact(supply_source):
    prof = make_profile(tool="peak", sims=2)
    program = load(supply_source, prof)
    payload = peak_report(program, prof, with_exact=False).to_json()
    assert payload["perCategory"]["Van"]["exact"] is None


def test_exact_budget_truncation_is_lower_bound(supply_source):
    prof = make_profile(tool="peak", cases=2)
    program = load(supply_source, prof)
    full, _t, _ = exact_peak(program, prof)
    partial, truncated, explored = exact_peak(program, prof, budget=60)
    assert truncated
    assert explored >= 1
    for cat in full:
        assert partial[cat] <= full[cat]
