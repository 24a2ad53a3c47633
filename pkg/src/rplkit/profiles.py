"""Tool profiles and placeholder substitution.

A model may reference `$AVAILABILITY`, `$EFFICIENCY` and `$CONC_CASES`;
before parsing, each placeholder is textually replaced with the value of
the matching profile field. The time analysis keeps `$EFFICIENCY` and
`$CONC_CASES` symbolic instead, so its bounds stay parametric.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

TOOLS = ("simulate", "peak", "time")

PARAM_EFFICIENCY = "EFFICIENCY"
PARAM_CONC_CASES = "CONC_CASES"
PARAM_AVAILABILITY = "AVAILABILITY"

_PLACEHOLDER_RE = re.compile(r"\$([A-Za-z_][A-Za-z0-9_]*)")

MAX_SEED = 2**64 - 1


class UnknownPlaceholder(Exception):
    def __init__(self, name: str, line: int):
        self.name = name
        self.line = line
        super().__init__(f"line {line}: unknown placeholder ${name}")


class ProfileError(ValueError):
    pass


@dataclass(frozen=True)
class Profile:
    tool: str = "simulate"
    efficiency_pct: int = 100
    availability_pct: int = 100
    conc_cases: int = 1
    num_sims: int = 1
    seed: int = 1

    def validated(self) -> "Profile":
        if self.tool not in TOOLS:
            raise ProfileError(f"unknown tool '{self.tool}'")
        if self.efficiency_pct < 1:
            raise ProfileError("efficiency must be >= 1")
        if not 0 <= self.availability_pct <= 100:
            raise ProfileError("availability must be in [0, 100]")
        if self.conc_cases < 1:
            raise ProfileError("concurrent cases must be >= 1")
        if self.num_sims < 1:
            raise ProfileError("number of simulations must be >= 1")
        if not 0 <= self.seed <= MAX_SEED:
            raise ProfileError("seed must fit in an unsigned 64-bit integer")
        return self

    def with_tool(self, tool: str) -> "Profile":
        return replace(self, tool=tool)


def _substitute(source: str, mapping: dict[str, str]) -> str:
    out: list[str] = []
    last = 0
    line = 1
    for m in _PLACEHOLDER_RE.finditer(source):
        name = m.group(1)
        line += source.count("\n", last, m.start())
        last = m.start()
        if name not in mapping:
            raise UnknownPlaceholder(name, line)
    # a lone '$' (the resource-group separator) never matches the pattern
    def repl(m: re.Match) -> str:
        return mapping[m.group(1)]

    return _PLACEHOLDER_RE.sub(repl, source)


def preprocess(source: str, profile: Profile) -> str:
    """Replace every placeholder with the decimal value of the matching
    profile field; output contains no placeholders (idempotent)."""
    return _substitute(source, {
        PARAM_AVAILABILITY: str(profile.availability_pct),
        PARAM_EFFICIENCY: str(profile.efficiency_pct),
        PARAM_CONC_CASES: str(profile.conc_cases),
    })


def preprocess_symbolic(source: str, profile: Profile) -> str:
    """Placeholder substitution for the time analysis: `$EFFICIENCY` and
    `$CONC_CASES` become free parameter identifiers; `$AVAILABILITY` is
    still substituted (the time bounds ignore resource availability)."""
    return _substitute(source, {
        PARAM_AVAILABILITY: str(profile.availability_pct),
        PARAM_EFFICIENCY: PARAM_EFFICIENCY,
        PARAM_CONC_CASES: PARAM_CONC_CASES,
    })


@dataclass(frozen=True)
class ProfilePreset:
    name: str
    description: str
    profile: Profile


PRESETS: tuple[ProfilePreset, ...] = (
    ProfilePreset(
        "quick-look",
        "single case, ideal resources, ten trials",
        Profile(tool="simulate", efficiency_pct=100, availability_pct=100, conc_cases=1, num_sims=10, seed=1),
    ),
    ProfilePreset(
        "degraded-resources",
        "reduced efficiency and availability under moderate load",
        Profile(tool="simulate", efficiency_pct=70, availability_pct=75, conc_cases=4, num_sims=25, seed=7),
    ),
    ProfilePreset(
        "stress",
        "many concurrent cases against half the pool",
        Profile(tool="simulate", efficiency_pct=100, availability_pct=50, conc_cases=8, num_sims=25, seed=11),
    ),
    ProfilePreset(
        "peak-single-case",
        "exact and static peaks for one case",
        Profile(tool="peak", efficiency_pct=100, availability_pct=100, conc_cases=1, num_sims=5, seed=1),
    ),
    ProfilePreset(
        "peak-two-cases",
        "exhaustive peak search over two concurrent cases",
        Profile(tool="peak", efficiency_pct=100, availability_pct=100, conc_cases=2, num_sims=5, seed=1),
    ),
    ProfilePreset(
        "time-ideal",
        "worst-case bound at full efficiency, single case",
        Profile(tool="time", efficiency_pct=100, availability_pct=100, conc_cases=1, num_sims=1, seed=1),
    ),
    ProfilePreset(
        "time-degraded",
        "worst-case bound at 70% efficiency, four cases",
        Profile(tool="time", efficiency_pct=70, availability_pct=100, conc_cases=4, num_sims=1, seed=1),
    ),
)


def preset(name: str) -> ProfilePreset:
    for p in PRESETS:
        if p.name == name:
            return p
    raise KeyError(name)
