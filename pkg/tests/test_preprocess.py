from __future__ import annotations

import pytest

from conftest import make_profile
from rplkit.profiles import Profile, ProfileError, UnknownPlaceholder, preprocess, preprocess_symbolic
from rplkit.resources import ResourceDescriptor, ResourceGroup, apply_availability


def group(category: str, count: int, start_id: int = 1, cost: int = 100) -> ResourceGroup:
    return ResourceGroup(category, tuple(
        ResourceDescriptor(start_id + i, category, 10, cost, 1) for i in range(count)
    ))


def test_efficiency_placeholder_substitution():
    src = "cost(truncate(150*(100/$EFFICIENCY)));"
    out = preprocess(src, make_profile(efficiency=100))
    assert out == "cost(truncate(150*(100/100)));"


def test_no_placeholders_is_identity():
    src = "module M;\n{\n}\n"
    assert preprocess(src, make_profile()) == src


def test_conc_cases_placeholder():
    assert preprocess("Int max = $CONC_CASES;", make_profile(cases=8)) == "Int max = 8;"


def test_availability_placeholder():
    assert preprocess("x $AVAILABILITY", make_profile(availability=75)) == "x 75"


def test_unknown_placeholder_rejected():
    with pytest.raises(UnknownPlaceholder) as exc:
        preprocess("a\nb $WHATEVER\n", make_profile())
    assert exc.value.name == "WHATEVER"
    assert exc.value.line == 2


def test_group_separator_dollar_untouched():
    src = "Resources:\nVan,1,1,1\n$\nDriver,1,1,1\n"
    assert preprocess(src, make_profile()) == src


def test_preprocess_idempotent(supply_source):
    prof = make_profile(efficiency=70, availability=50, cases=3)
    once = preprocess(supply_source, prof)
    assert "$EFFICIENCY" not in once and "$CONC_CASES" not in once
    assert preprocess(once, prof) == once


def test_symbolic_preprocess_keeps_parameters(supply_source):
    out = preprocess_symbolic(supply_source, make_profile(efficiency=70, cases=4))
    assert "(100 / EFFICIENCY)" in out
    assert "Int max = CONC_CASES;" in out
    assert "$" in out  # the resource separators stay


def test_availability_floor_prefix():
    groups = (group("Van", 8),)
    pool = apply_availability(groups, 50)
    vans = [d for d in pool if d.category == "Van"]
    assert [d.available for d in vans] == [True] * 4 + [False] * 4


@pytest.mark.parametrize("pct", range(0, 101, 7))
def test_availability_floor_count_property(pct):
    groups = (group("Van", 8), group("Driver", 5, start_id=9), group("Helper", 3, start_id=14))
    pool = apply_availability(groups, pct)
    for cat, n in (("Van", 8), ("Driver", 5), ("Helper", 3)):
        available = [d for d in pool if d.category == cat and d.available]
        assert len(available) == (n * pct) // 100
        # prefix rule: the available ones are those with the lowest ids
        ids = sorted(d.rid for d in pool if d.category == cat)
        assert sorted(d.rid for d in available) == ids[: len(available)]


def test_availability_100_is_identity():
    groups = (group("Van", 3),)
    pool = apply_availability(groups, 100)
    assert all(d.available for d in pool)


def test_availability_0_empties_pool():
    pool = apply_availability((group("Helper", 4),), 0)
    assert not any(d.available for d in pool)


def test_profile_validation():
    with pytest.raises(ProfileError):
        Profile(efficiency_pct=0).validated()
    with pytest.raises(ProfileError):
        Profile(availability_pct=101).validated()
    with pytest.raises(ProfileError):
        Profile(conc_cases=0).validated()
    with pytest.raises(ProfileError):
        Profile(num_sims=0).validated()
    with pytest.raises(ProfileError):
        Profile(seed=2**64).validated()
    with pytest.raises(ProfileError):
        Profile(tool="prove").validated()
    assert Profile().validated() == Profile()
