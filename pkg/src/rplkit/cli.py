"""Command-line front end.

Exit codes: 0 success, 1 the model has diagnostics, 2 runtime/analysis
failure, 64 usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .diagnostics import ParseError
from .errors import AnalysisError
from .machine import SimulationError
from .profiles import Profile, ProfileError, UnknownPlaceholder
from .simulate import json_text
from .store import RunStore, record_for
from .workbench import check_source, run_peak, run_simulation, run_time

EX_OK = 0
EX_DIAGNOSTICS = 1
EX_FAILURE = 2
EX_USAGE = 64


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: A003 - argparse API
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EX_USAGE)


def _add_profile_flags(p: argparse.ArgumentParser, with_sims: bool = True) -> None:
    p.add_argument("--efficiency", type=int, default=100, help="resource efficiency percent (>= 1)")
    p.add_argument("--availability", type=int, default=100, help="resource availability percent (0..100)")
    p.add_argument("--cases", type=int, default=1, help="number of concurrent cases (>= 1)")
    if with_sims:
        p.add_argument("--sims", type=int, default=10, help="number of simulation runs")
    p.add_argument("--seed", type=int, default=1, help="seed for the deterministic run streams")
    p.add_argument("--json", action="store_true", help="print the JSON payload instead of text")
    p.add_argument("--store", metavar="PATH", default=None,
                   help="append the run to this journal (default: $RPL_STORE if set)")


def build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(prog="rplkit", description="RPL workflow workbench")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p_check = sub.add_parser("check", parents=[], help="parse and validate a model")
    p_check.add_argument("file")

    p_sim = sub.add_parser("simulate", help="run seeded simulations")
    p_sim.add_argument("file")
    _add_profile_flags(p_sim)

    p_peak = sub.add_parser("peak", help="peak resource analysis")
    p_peak.add_argument("file")
    _add_profile_flags(p_peak)
    p_peak.add_argument("--budget", type=int, default=200_000,
                        help="state budget for the exhaustive search")
    p_peak.add_argument("--no-exact", action="store_true",
                        help="skip the exhaustive search")

    p_time = sub.add_parser("time", help="closed-form worst-case time bound")
    p_time.add_argument("file")
    _add_profile_flags(p_time, with_sims=False)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--port", type=int, default=None,
                         help="port (default: $RPL_PORT or 8000)")
    p_serve.add_argument("--store", metavar="PATH", default=None,
                         help="journal path (default: $RPL_STORE or runs.jsonl)")
    p_serve.add_argument("--ui", metavar="DIR", default=None,
                         help="serve a built front end from this directory")
    return parser


def _read_file(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _profile(args: argparse.Namespace, tool: str) -> Profile:
    return Profile(
        tool=tool,
        efficiency_pct=args.efficiency,
        availability_pct=args.availability,
        conc_cases=args.cases,
        num_sims=getattr(args, "sims", 1),
        seed=args.seed,
    ).validated()


def _maybe_store(args: argparse.Namespace, payload: dict, tool: str, profile: Profile) -> None:
    path = args.store or os.environ.get("RPL_STORE")
    if not path:
        return
    store = RunStore(path)
    payload["execId"] = store.fresh_exec_id(payload["execId"])
    store.append(record_for(payload, tool, profile))


def _print_simulation(payload: dict) -> None:
    print(f"Execution {payload['execId']}")
    print(f"  file: {payload['file']}  sims: {payload['sims']}  efficiency: {payload['efficiency']}"
          f"  availability: {payload['availability']}  cases: {payload['cases']}")
    t, c = payload["time"], payload["cost"]
    print(f"  time: min {t['min']}  max {t['max']}  avg {t['avg']}")
    print(f"  cost: min {c['min']}  max {c['max']}  avg {c['avg']}")
    print(f"  deadline violations: {payload['violations']['total']}")
    for site in payload["violations"]["perSite"]:
        print(f"    {site['method']} (line {site['line']}): {site['count']}")
    peaks = "  ".join(f"{cat}={n}" for cat, n in payload["peaks"].items())
    print(f"  peak allocation: {peaks}")


def _print_peak(payload: dict) -> None:
    print(f"Execution {payload['execId']}")
    print(f"  file: {payload['file']}")
    print(f"  {'category':<12}{'observed':>9}{'exact':>9}{'static':>9}")
    for cat, entry in payload["perCategory"].items():
        exact = "-" if entry["exact"] is None else entry["exact"]
        print(f"  {cat:<12}{entry['observed']:>9}{exact!s:>9}{entry['static']:>9}")
    note = " (budget exhausted: exact values are lower bounds)" if payload["truncated"] else ""
    print(f"  explored schedules: {payload['exploredSchedules']}{note}")


def _print_time(payload: dict) -> None:
    print(f"Execution {payload['execId']}")
    print(f"  file: {payload['file']}")
    print(f"  sequential bound:    {payload['sequential']}")
    print(f"  critical-path bound: {payload['criticalPath']}")
    for ev in payload["evaluations"]:
        print(f"  at EFFICIENCY={ev['EFFICIENCY']} CONC_CASES={ev['CONC_CASES']}: "
              f"sequential={ev['sequential']}  criticalPath={ev['criticalPath']}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EX_USAGE
    try:
        if args.command == "check":
            source = _read_file(args.file)
            diags = check_source(source)
            for d in diags:
                print(f"{args.file}:{d}")
            if any(d.severity == "error" for d in diags):
                return EX_DIAGNOSTICS
            print("OK")
            return EX_OK
        if args.command == "serve":
            from .service import serve

            port = args.port or int(os.environ.get("RPL_PORT", "8000"))
            serve(port, store_path=args.store, ui_dir=args.ui)
            return EX_OK
        source = _read_file(args.file)
        file_name = Path(args.file).name
        if args.command == "simulate":
            profile = _profile(args, "simulate")
            payload = run_simulation(source, file_name, profile)
            _maybe_store(args, payload, "simulate", profile)
            if args.json:
                print(json_text(payload))
            else:
                _print_simulation(payload)
            return EX_OK
        if args.command == "peak":
            profile = _profile(args, "peak")
            payload = run_peak(source, file_name, profile, budget=args.budget,
                               with_exact=not args.no_exact)
            _maybe_store(args, payload, "peak", profile)
            if args.json:
                print(json_text(payload))
            else:
                _print_peak(payload)
            return EX_OK
        if args.command == "time":
            profile = _profile(args, "time")
            payload = run_time(source, file_name, profile)
            _maybe_store(args, payload, "time", profile)
            if args.json:
                print(json_text(payload))
            else:
                _print_time(payload)
            return EX_OK
        parser.error(f"unknown command {args.command!r}")
    except FileNotFoundError as exc:
        print(f"error: no such file: {exc.filename}", file=sys.stderr)
        return EX_FAILURE
    except UnknownPlaceholder as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_DIAGNOSTICS
    except ParseError as exc:
        for d in exc.diagnostics:
            print(f"{args.file}:{d}", file=sys.stderr)
        return EX_DIAGNOSTICS
    except (SimulationError, AnalysisError, ProfileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_FAILURE
    return EX_OK


if __name__ == "__main__":
    sys.exit(main())
