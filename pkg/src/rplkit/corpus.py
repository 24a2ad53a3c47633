"""Bundled example models."""

from __future__ import annotations

from importlib import resources


def example_names() -> list[str]:
    root = resources.files(__package__) / "corpus"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".rpl"))


def load_example(name: str) -> str:
    if "/" in name or "\\" in name or not name.endswith(".rpl"):
        raise KeyError(name)
    path = resources.files(__package__) / "corpus" / name
    if not path.is_file():
        raise KeyError(name)
    return path.read_text(encoding="utf-8")
