"""Diagnostics shared by the parser and the semantic checker."""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import SourceSpan


@dataclass(frozen=True)
class Diagnostic:
    span: SourceSpan
    severity: str  # "error" | "warning"
    message: str

    def to_json(self) -> dict:
        return {
            "line": self.span.line,
            "column": self.span.column,
            "severity": self.severity,
            "message": self.message,
        }

    def __str__(self) -> str:
        return f"{self.span.line}:{self.span.column}: {self.severity}: {self.message}"


def error(span: SourceSpan, message: str) -> Diagnostic:
    return Diagnostic(span, "error", message)


def warning(span: SourceSpan, message: str) -> Diagnostic:
    return Diagnostic(span, "warning", message)


class ParseError(Exception):
    """Raised by parse_program when the source has errors."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        first = diagnostics[0] if diagnostics else None
        super().__init__(str(first) if first else "parse failed")
