"""Shared-resource model: descriptors, declaration groups, availability
reduction, and the deterministic matcher used by `hold`.

Each resource carries four qualities (category, efficiency, cost per time
unit, extra quality) plus an availability flag. Identifiers are 1-based in
declaration order across the whole pool.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class ResourceDescriptor:
    rid: int
    category: str
    efficiency: int
    cost_per_unit: int
    extra_quality: int
    available: bool = True


@dataclass(frozen=True)
class ResourceGroup:
    """Consecutive declarations of the same category."""

    category: str
    descriptors: tuple[ResourceDescriptor, ...]


@dataclass(frozen=True)
class RequestUnit:
    """One requested resource: category must match exactly, efficiency must
    be at least ``min_efficiency``."""

    min_efficiency: int
    category: str


def flatten(groups: tuple[ResourceGroup, ...]) -> tuple[ResourceDescriptor, ...]:
    out: list[ResourceDescriptor] = []
    for g in groups:
        out.extend(g.descriptors)
    return tuple(out)


def categories(groups: tuple[ResourceGroup, ...]) -> list[str]:
    """Category names in first-declaration order."""
    seen: list[str] = []
    for g in groups:
        if g.category not in seen:
            seen.append(g.category)
    return seen


def apply_availability(groups: tuple[ResourceGroup, ...], availability_pct: int) -> tuple[ResourceDescriptor, ...]:
    """Reduce the pool to the configured availability percentage.

    Per category with n declared resources, exactly floor(n * pct / 100) are
    marked available: the prefix in ascending id order. The rest stay
    unavailable for the entire run, which keeps runs reproducible.
    """
    if not 0 <= availability_pct <= 100:
        raise ValueError(f"availability must be in [0, 100], got {availability_pct}")
    by_cat: dict[str, list[ResourceDescriptor]] = {}
    for d in flatten(groups):
        by_cat.setdefault(d.category, []).append(d)
    flags: dict[int, bool] = {}
    for cat, descs in by_cat.items():
        descs.sort(key=lambda d: d.rid)
        keep = (len(descs) * availability_pct) // 100
        for i, d in enumerate(descs):
            flags[d.rid] = i < keep
    return tuple(replace(d, available=flags[d.rid]) for d in flatten(groups))


def _rank(d: ResourceDescriptor) -> tuple[int, int]:
    # cheapest first, then lowest id; makes matching fully deterministic
    return (d.cost_per_unit, d.rid)


def match_units(units: list[RequestUnit], candidates: list[ResourceDescriptor]) -> list[int] | None:
    """Assign each request unit a distinct matching resource, or None.

    Units are satisfied in request order; each takes the best-ranked
    candidate that still leaves the remaining units satisfiable, so the
    result is the deterministic lexicographically-best complete assignment.
    """
    chosen: list[int] = []
    used: set[int] = set()

    def fits(u: RequestUnit, d: ResourceDescriptor) -> bool:
        return d.category == u.category and d.efficiency >= u.min_efficiency

    def solve(i: int) -> bool:
        if i == len(units):
            return True
        for d in sorted(candidates, key=_rank):
            if d.rid in used or not fits(units[i], d):
                continue
            used.add(d.rid)
            chosen.append(d.rid)
            if solve(i + 1):
                return True
            used.discard(d.rid)
            chosen.pop()
        return False

    if solve(0):
        return chosen
    return None
