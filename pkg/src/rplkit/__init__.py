"""rplkit: parse, simulate and analyse RPL workflow models."""

from .diagnostics import Diagnostic, ParseError
from .parser import load_program, parse_program, parse_source
from .printer import pretty
from .profiles import PRESETS, Profile, ProfilePreset, preprocess, preprocess_symbolic
from .resources import ResourceDescriptor, ResourceGroup, apply_availability
from .simulate import (
    AggregateResult,
    SimRunResult,
    result_json,
    simulate_many,
    simulate_once,
    violation_markers,
)
from .syntax import Program, SourceSpan, outline

__version__ = "0.1.0"

__all__ = [
    "AggregateResult",
    "Diagnostic",
    "ParseError",
    "PRESETS",
    "Profile",
    "ProfilePreset",
    "Program",
    "ResourceDescriptor",
    "ResourceGroup",
    "SimRunResult",
    "SourceSpan",
    "apply_availability",
    "load_program",
    "outline",
    "parse_program",
    "parse_source",
    "preprocess",
    "preprocess_symbolic",
    "pretty",
    "result_json",
    "simulate_many",
    "simulate_once",
    "violation_markers",
    "__version__",
]
