"""Tokenizer for RPL source text.

`//` comments run to end of line. `$` is a valid token only inside the
Resources trailer, where a line containing just `$` separates groups.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .diagnostics import Diagnostic, error
from .syntax import SourceSpan

KEYWORDS = {
    "module", "interface", "class", "implements", "if", "else", "while",
    "return", "await", "new", "hold", "release", "cost", "after", "dl",
    "Resources",
}

_TOKEN_SPEC = [
    ("COMMENT", r"//[^\n]*"),
    ("WS", r"[ \t\r]+"),
    ("NEWLINE", r"\n"),
    ("INT", r"\d+"),
    ("IDENT", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("OP", r"==|!=|<=|>=|&&|\|\||[{}()\[\]<>,;:?.!=+\-*/$]"),
    ("MISMATCH", r"."),
]

_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pat})" for name, pat in _TOKEN_SPEC))


@dataclass(frozen=True)
class Token:
    kind: str  # keyword text, "INT", "IDENT", operator text, or "EOF"
    text: str
    span: SourceSpan


def tokenize(source: str) -> tuple[list[Token], list[Diagnostic]]:
    tokens: list[Token] = []
    diags: list[Diagnostic] = []
    line = 1
    line_start = 0
    for m in _TOKEN_RE.finditer(source):
        kind = m.lastgroup
        text = m.group()
        col = m.start() - line_start + 1
        if kind == "NEWLINE":
            line += 1
            line_start = m.end()
            continue
        if kind in ("WS", "COMMENT"):
            continue
        span = SourceSpan(line, col, len(text))
        if kind == "MISMATCH":
            diags.append(error(span, f"unexpected character {text!r}"))
            continue
        if kind == "INT":
            tokens.append(Token("INT", text, span))
        elif kind == "IDENT":
            tokens.append(Token(text if text in KEYWORDS else "IDENT", text, span))
        else:
            tokens.append(Token(text, text, span))
    eof_span = SourceSpan(line, len(source) - line_start + 1, 0)
    tokens.append(Token("EOF", "", eof_span))
    return tokens, diags
