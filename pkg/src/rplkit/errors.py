"""Errors shared by the static analyses."""

from __future__ import annotations


class AnalysisError(Exception):
    pass


class UnboundedLoopError(AnalysisError):
    """A loop's iteration count cannot be established."""


class UnsupportedRecursionError(AnalysisError):
    """The call graph has a cycle; only non-recursive models are analysed."""


class BudgetExceededError(AnalysisError):
    """The exhaustive search ran out of budget before completing any execution."""
