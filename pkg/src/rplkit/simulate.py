"""Seeded simulation runs and cross-run aggregation.

`simulate_once` is a pure function of (program, profile, seed): the whole
run, including scheduling and `random(n)`, draws from one splitmix64
stream, so identical inputs give bit-identical results. `simulate_many`
runs seeds seed+0 .. seed+(n-1) and aggregates.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .machine import Machine, SimulationError
from .printer import pretty
from .profiles import Profile
from .resources import apply_availability, categories
from .syntax import Program


@dataclass
class SimRunResult:
    exec_time: int
    financial_cost: int
    violations: dict[tuple[str, int], int]
    peak_by_category: dict[str, int]
    seed_used: int
    total_cost_work: int = 0
    leftover_holds: tuple[int, ...] = ()


@dataclass
class AggregateResult:
    exec_id: str
    file_name: str
    profile: Profile
    time_stats: tuple[int, int, Fraction]  # min, max, exact average
    cost_stats: tuple[int, int, Fraction]
    total_violations: int
    per_site_violations: dict[tuple[str, int], int]
    peaks: dict[str, int]
    runs: list[SimRunResult] = field(default_factory=list)


class RunFailure(SimulationError):
    """A run inside simulate_many failed; carries the failing run index."""

    def __init__(self, run_index: int, seed: int, cause: SimulationError):
        self.run_index = run_index
        self.seed = seed
        self.cause = cause
        super().__init__(f"run {run_index} (seed {seed}) failed: {cause}")


def simulate_once(program: Program, profile: Profile, seed: int,
                  deadline_anchor: str = "enable") -> SimRunResult:
    pool = apply_availability(program.resources, profile.availability_pct)
    return _run(program, pool, seed, deadline_anchor)


def _run(program: Program, pool, seed: int, deadline_anchor: str) -> SimRunResult:
    machine = Machine(program, pool, seed=seed, deadline_anchor=deadline_anchor)
    status = machine.settle()
    while status == "choice":
        options = machine.options()
        pick = machine.rng.below(len(options)) if len(options) > 1 else 0
        machine.execute(options[pick])
        status = machine.settle()
    return SimRunResult(
        exec_time=machine.clock,
        financial_cost=machine.financial_cost,
        violations=dict(machine.violations),
        peak_by_category=dict(machine.peaks),
        seed_used=seed,
        total_cost_work=machine.total_cost_work,
        leftover_holds=machine.leftover_holds(),
    )


def _stats(values: list[int]) -> tuple[int, int, Fraction]:
    return min(values), max(values), Fraction(sum(values), len(values))


def exec_id_for(program: Program, profile: Profile, tool: str = "simulate") -> str:
    """8 lowercase hex chars derived from the canonical source and the
    profile; a pure function of the inputs."""
    payload = "\x00".join([
        tool,
        pretty(program),
        str(profile.efficiency_pct),
        str(profile.availability_pct),
        str(profile.conc_cases),
        str(profile.num_sims),
        str(profile.seed),
    ])
    return hashlib.sha256(payload.encode()).hexdigest()[:8]


def simulate_many(program: Program, profile: Profile, file_name: str = "model.rpl",
                  deadline_anchor: str = "enable") -> AggregateResult:
    profile = profile.validated()
    pool = apply_availability(program.resources, profile.availability_pct)
    runs: list[SimRunResult] = []
    for i in range(profile.num_sims):
        seed = (profile.seed + i) % (2**64)
        try:
            runs.append(_run(program, pool, seed, deadline_anchor))
        except SimulationError as exc:
            raise RunFailure(i, seed, exc) from exc
    per_site: dict[tuple[str, int], int] = {}
    for r in runs:
        for site, count in r.violations.items():
            per_site[site] = per_site.get(site, 0) + count
    peaks = {c: 0 for c in categories(program.resources)}
    for r in runs:
        for cat, n in r.peak_by_category.items():
            if n > peaks.get(cat, 0):
                peaks[cat] = n
    return AggregateResult(
        exec_id=exec_id_for(program, profile, "simulate"),
        file_name=file_name,
        profile=profile,
        time_stats=_stats([r.exec_time for r in runs]),
        cost_stats=_stats([r.financial_cost for r in runs]),
        total_violations=sum(per_site.values()),
        per_site_violations=per_site,
        peaks=peaks,
        runs=runs,
    )


def violation_markers(agg: AggregateResult) -> list[tuple[int, int]]:
    """(line, count) markers for the editor gutter, sorted by line."""
    by_line: dict[int, int] = {}
    for (_method, line), count in agg.per_site_violations.items():
        if count > 0:
            by_line[line] = by_line.get(line, 0) + count
    return sorted(by_line.items())


def format_avg(value: Fraction) -> str:
    """Exact rational rendered with two decimals, ties rounded up."""
    scaled = value * 100
    cents = (scaled.numerator * 2 + scaled.denominator) // (scaled.denominator * 2)
    return f"{cents // 100}.{cents % 100:02d}"


def result_json(agg: AggregateResult) -> dict:
    """Wire form; field names are fixed for the service and the UI."""
    per_site = sorted(agg.per_site_violations.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    return {
        "execId": agg.exec_id,
        "file": agg.file_name,
        "sims": agg.profile.num_sims,
        "efficiency": agg.profile.efficiency_pct,
        "availability": agg.profile.availability_pct,
        "cases": agg.profile.conc_cases,
        "time": {
            "min": agg.time_stats[0],
            "max": agg.time_stats[1],
            "avg": format_avg(agg.time_stats[2]),
        },
        "cost": {
            "min": agg.cost_stats[0],
            "max": agg.cost_stats[1],
            "avg": format_avg(agg.cost_stats[2]),
        },
        "violations": {
            "total": agg.total_violations,
            "perSite": [
                {"method": method, "line": line, "count": count}
                for (method, line), count in per_site
            ],
        },
        "peaks": dict(agg.peaks),
    }


def json_text(payload: dict) -> str:
    """Canonical serialization used wherever byte-stable output matters."""
    return json.dumps(payload, separators=(",", ":"))
