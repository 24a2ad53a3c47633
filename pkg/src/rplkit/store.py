"""Append-only run history: one JSON record per line, durable on append.

The journal backs the Console Overview: each record carries the eight
overview columns (id, file, executions, efficiency, availability, cases,
time stats, cost stats) plus the full result payload. Corrupt lines are
skipped with a warning; they never take the store down.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

log = logging.getLogger(__name__)


class DuplicateExecIdError(ValueError):
    pass


@dataclass(frozen=True)
class RunRecord:
    exec_id: str
    file_name: str
    tool: str
    num_sims: int
    efficiency: int
    availability: int
    cases: int
    time_stats: dict | None
    cost_stats: dict | None
    created_at: str
    payload: dict

    def to_json(self) -> dict:
        return {
            "execId": self.exec_id,
            "file": self.file_name,
            "tool": self.tool,
            "sims": self.num_sims,
            "efficiency": self.efficiency,
            "availability": self.availability,
            "cases": self.cases,
            "time": self.time_stats,
            "cost": self.cost_stats,
            "createdAt": self.created_at,
            "payload": self.payload,
        }

    @staticmethod
    def from_json(data: dict) -> "RunRecord":
        return RunRecord(
            exec_id=data["execId"],
            file_name=data["file"],
            tool=data["tool"],
            num_sims=data["sims"],
            efficiency=data["efficiency"],
            availability=data["availability"],
            cases=data["cases"],
            time_stats=data.get("time"),
            cost_stats=data.get("cost"),
            created_at=data.get("createdAt", ""),
            payload=data["payload"],
        )


def record_for(payload: dict, tool: str, profile) -> RunRecord:
    return RunRecord(
        exec_id=payload["execId"],
        file_name=payload.get("file", "model.rpl"),
        tool=tool,
        num_sims=profile.num_sims,
        efficiency=profile.efficiency_pct,
        availability=profile.availability_pct,
        cases=profile.conc_cases,
        time_stats=payload.get("time") if tool == "simulate" else None,
        cost_stats=payload.get("cost") if tool == "simulate" else None,
        created_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        payload=payload,
    )


class RunStore:
    """JSONL journal with an in-memory index; appends are serialized
    through one lock, reads see a consistent snapshot."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._records: list[RunRecord] = []
        self._ids: set[str] = set()
        self._load()

    def _load(self) -> None:
        if not self.path.exists():
            return
        for lineno, line in enumerate(self.path.read_text(encoding="utf-8").splitlines(), 1):
            if not line.strip():
                continue
            try:
                record = RunRecord.from_json(json.loads(line))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                log.warning("skipping corrupt journal line %s:%d (%s)", self.path, lineno, exc)
                continue
            self._records.append(record)
            self._ids.add(record.exec_id)

    def append(self, record: RunRecord) -> None:
        with self._lock:
            if record.exec_id in self._ids:
                raise DuplicateExecIdError(record.exec_id)
            self.path.parent.mkdir(parents=True, exist_ok=True)
            line = json.dumps(record.to_json(), separators=(",", ":"))
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")
                fh.flush()
                os.fsync(fh.fileno())
            self._records.append(record)
            self._ids.add(record.exec_id)

    def list(self) -> list[RunRecord]:
        with self._lock:
            return list(self._records)

    def get(self, exec_id: str) -> RunRecord | None:
        with self._lock:
            for record in self._records:
                if record.exec_id == exec_id:
                    return record
        return None

    def fresh_exec_id(self, base: str) -> str:
        """Collision-salt a deterministic id so repeated identical runs can
        coexist in the journal."""
        with self._lock:
            if base not in self._ids:
                return base
            salt = 1
            while True:
                candidate = hashlib.sha256(f"{base}:{salt}".encode()).hexdigest()[:8]
                if candidate not in self._ids:
                    return candidate
                salt += 1


def overview_rows(records: list[RunRecord]) -> list[dict]:
    """The eight overview columns, one row per run, as pure projections."""
    return [
        {
            "execId": r.exec_id,
            "file": r.file_name,
            "sims": r.num_sims,
            "efficiency": r.efficiency,
            "availability": r.availability,
            "cases": r.cases,
            "time": r.time_stats,
            "cost": r.cost_stats,
        }
        for r in records
    ]


def chart_series(records: list[RunRecord]) -> dict:
    """Average time and cost per run for the overview charts, insertion
    ordered; costs also scaled to millions for display."""
    time_series = []
    cost_series = []
    for r in records:
        if r.time_stats is None or r.cost_stats is None:
            continue
        avg_time = float(r.time_stats["avg"])
        avg_cost = float(r.cost_stats["avg"])
        time_series.append({"execId": r.exec_id, "value": avg_time})
        cost_series.append({"execId": r.exec_id, "value": avg_cost,
                            "millions": avg_cost / 1_000_000})
    return {"time": time_series, "cost": cost_series}
