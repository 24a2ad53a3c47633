from __future__ import annotations

import pytest

from rplkit.corpus import load_example
from rplkit.parser import load_program
from rplkit.profiles import Profile, preprocess

CORPUS = ["supply_chain.rpl", "minimal.rpl", "parallel_holds.rpl", "chained_holds.rpl"]


def make_profile(tool: str = "simulate", efficiency: int = 100, availability: int = 100,
                 cases: int = 1, sims: int = 1, seed: int = 1) -> Profile:
    return Profile(tool=tool, efficiency_pct=efficiency, availability_pct=availability,
                   conc_cases=cases, num_sims=sims, seed=seed)


def load(source: str, profile: Profile | None = None):
    profile = profile or make_profile()
    program, diags = load_program(preprocess(source, profile))
    assert program is not None, [str(d) for d in diags]
    return program


def line_of(source: str, needle: str) -> int:
    for i, line in enumerate(source.splitlines(), 1):
        if needle in line:
            return i
    raise AssertionError(f"{needle!r} not found")


@pytest.fixture(scope="session")
def supply_source() -> str:
    return load_example("supply_chain.rpl")


@pytest.fixture(scope="session")
def check_goods_line(supply_source: str) -> int:
    return line_of(supply_source, "!check_goods")
