"""Tool pipeline shared by the CLI and the HTTP service: preprocess,
parse, run the selected tool, and shape the wire payload."""

from __future__ import annotations

from .bounds import PARAMS, build_equations, check_bound, solve
from .diagnostics import Diagnostic, ParseError
from .parser import load_program
from .peak import peak_report
from .printer import pretty
from .profiles import Profile, preprocess, preprocess_symbolic
from .simulate import exec_id_for, result_json, simulate_many
from .syntax import outline


def check_source(source: str, profile: Profile | None = None) -> list[Diagnostic]:
    """Diagnostics for a model as the editor sees it (placeholders are
    substituted with defaults first, since they are not part of the grammar)."""
    profile = profile or Profile()
    text = preprocess(source, profile)
    _program, diags = load_program(text)
    return diags


def outline_source(source: str, profile: Profile | None = None):
    profile = profile or Profile()
    text = preprocess(source, profile)
    program, diags = load_program(text)
    if program is None:
        raise ParseError([d for d in diags if d.severity == "error"])
    return outline(program)


def _parse_or_raise(text: str, predeclared: tuple[str, ...] = ()):
    program, diags = load_program(text, predeclared=predeclared)
    if program is None:
        raise ParseError([d for d in diags if d.severity == "error"])
    return program


def run_simulation(source: str, file_name: str, profile: Profile,
                   deadline_anchor: str = "enable") -> dict:
    program = _parse_or_raise(preprocess(source, profile))
    agg = simulate_many(program, profile, file_name=file_name, deadline_anchor=deadline_anchor)
    return result_json(agg)


def run_peak(source: str, file_name: str, profile: Profile,
             budget: int = 200_000, with_exact: bool = True) -> dict:
    program = _parse_or_raise(preprocess(source, profile))
    report = peak_report(program, profile, budget=budget, with_exact=with_exact)
    payload = {"execId": exec_id_for(program, profile, "peak"), "file": file_name}
    payload.update(report.to_json())
    return payload


def run_time(source: str, file_name: str, profile: Profile) -> dict:
    symbolic = _parse_or_raise(preprocess_symbolic(source, profile), predeclared=PARAMS)
    report = solve(build_equations(symbolic))
    report.evaluations.append(report.evaluate(profile.efficiency_pct, profile.conc_cases))
    payload = {"execId": exec_id_for(symbolic, profile, "time"), "file": file_name}
    payload.update(report.to_json())
    return payload


def run_tool(source: str, file_name: str, profile: Profile, **kwargs) -> dict:
    if profile.tool == "simulate":
        return run_simulation(source, file_name, profile, **kwargs)
    if profile.tool == "peak":
        return run_peak(source, file_name, profile, **kwargs)
    if profile.tool == "time":
        return run_time(source, file_name, profile)
    raise ValueError(f"unknown tool '{profile.tool}'")


def verify_time_bound(source: str, profile: Profile) -> dict:
    """Convenience: closed-form bound plus the empirical check at the
    profile's parameters."""
    symbolic = _parse_or_raise(preprocess_symbolic(source, profile), predeclared=PARAMS)
    report = solve(build_equations(symbolic))
    concrete = _parse_or_raise(preprocess(source, profile))
    check = check_bound(concrete, profile, report)
    return {
        "bound": check.bound,
        "holds": check.ok,
        "runs": check.runs,
        "maxObserved": max(check.exec_times) if check.exec_times else 0,
    }


def canonical_source(source: str, profile: Profile) -> str:
    return pretty(_parse_or_raise(preprocess(source, profile)))
