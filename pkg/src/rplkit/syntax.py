"""Abstract syntax for RPL workflow models.

Every statement and expression node carries a SourceSpan so that later
stages (diagnostics, deadline-violation markers) can point back into the
source. Spans are excluded from structural equality: two parses of the
same model compare equal even when formatting differs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .resources import ResourceGroup


@dataclass(frozen=True)
class SourceSpan:
    """1-based line/column position plus the length of the anchoring token."""

    line: int
    column: int
    length: int = 1


UNKNOWN_SPAN = SourceSpan(0, 0, 0)


def _span_field() -> SourceSpan:
    return field(default=UNKNOWN_SPAN, compare=False, repr=False)  # type: ignore[return-value]


# ---------------------------------------------------------------- types

class Type:
    """Base class for declared types."""


@dataclass(frozen=True)
class IntType(Type):
    def __str__(self) -> str:
        return "Int"


@dataclass(frozen=True)
class BoolType(Type):
    def __str__(self) -> str:
        return "Bool"


@dataclass(frozen=True)
class FutType(Type):
    inner: Type

    def __str__(self) -> str:
        return f"Fut<{self.inner}>"


@dataclass(frozen=True)
class ListType(Type):
    inner: Type

    def __str__(self) -> str:
        return f"List<{self.inner}>"


@dataclass(frozen=True)
class PairType(Type):
    first: Type
    second: Type

    def __str__(self) -> str:
        return f"Pair<{self.first},{self.second}>"


@dataclass(frozen=True)
class NamedType(Type):
    """An interface or class type, referenced by name."""

    name: str

    def __str__(self) -> str:
        return self.name


INT = IntType()
BOOL = BoolType()


# ---------------------------------------------------------------- expressions

class Expr:
    """Base class for expressions."""


@dataclass
class IntLit(Expr):
    value: int
    span: SourceSpan = _span_field()


@dataclass
class VarRead(Expr):
    name: str
    span: SourceSpan = _span_field()


@dataclass
class Unary(Expr):
    op: str  # "!" or "-"
    operand: Expr
    span: SourceSpan = _span_field()


@dataclass
class Binary(Expr):
    op: str  # + - * / == != < <= > >= && ||
    left: Expr
    right: Expr
    span: SourceSpan = _span_field()


@dataclass
class Call(Expr):
    """Built-in call: truncate, random, fst, snd, Pair, appendright, head,
    tail, isEmpty, ResEfficiency."""

    func: str
    args: tuple[Expr, ...]
    span: SourceSpan = _span_field()


@dataclass
class ListLit(Expr):
    items: tuple[Expr, ...]
    span: SourceSpan = _span_field()


@dataclass
class SetLit(Expr):
    """`set[...]` constraint group; used to describe one requested resource."""

    items: tuple[Expr, ...]
    span: SourceSpan = _span_field()


@dataclass
class NilLit(Expr):
    span: SourceSpan = _span_field()


# ------------------------------------------------------ right-hand sides
# These may appear only as the value of a declaration or assignment.

@dataclass
class AsyncCall(Expr):
    method: str
    args: tuple[Expr, ...]  # first argument is the callee object
    after_futs: tuple[str, ...]
    deadline: Expr
    span: SourceSpan = _span_field()


@dataclass
class NewObject(Expr):
    class_name: str
    span: SourceSpan = _span_field()


@dataclass
class HoldCall(Expr):
    request: Expr  # evaluates to a list of constraint sets
    span: SourceSpan = _span_field()


@dataclass
class GetValue(Expr):
    fut: str
    span: SourceSpan = _span_field()


# ---------------------------------------------------------------- statements

class Stmt:
    """Base class for statements."""


@dataclass
class Block:
    stmts: tuple[Stmt, ...]
    span: SourceSpan = _span_field()


@dataclass
class VarDecl(Stmt):
    name: str
    type: Type
    init: Expr | None
    span: SourceSpan = _span_field()


@dataclass
class Assign(Stmt):
    name: str
    value: Expr
    span: SourceSpan = _span_field()


@dataclass
class AwaitStmt(Stmt):
    fut: str
    span: SourceSpan = _span_field()


@dataclass
class IfStmt(Stmt):
    cond: Expr
    then_block: Block
    else_block: Block | None
    span: SourceSpan = _span_field()


@dataclass
class WhileStmt(Stmt):
    cond: Expr
    body: Block
    span: SourceSpan = _span_field()


@dataclass
class CostStmt(Stmt):
    amount: Expr
    span: SourceSpan = _span_field()


@dataclass
class ReleaseStmt(Stmt):
    value: Expr
    span: SourceSpan = _span_field()


@dataclass
class ReturnStmt(Stmt):
    value: Expr
    span: SourceSpan = _span_field()


# ---------------------------------------------------------------- declarations

@dataclass
class MethodSig:
    name: str
    return_type: Type
    params: tuple[tuple[str, Type], ...]
    span: SourceSpan = _span_field()


@dataclass
class MethodDecl:
    name: str
    return_type: Type
    params: tuple[tuple[str, Type], ...]
    body: Block
    span: SourceSpan = _span_field()


@dataclass
class FieldDecl:
    name: str
    type: Type
    init: Expr | None
    span: SourceSpan = _span_field()


@dataclass
class InterfaceDecl:
    name: str
    sigs: tuple[MethodSig, ...]
    span: SourceSpan = _span_field()


@dataclass
class ClassDecl:
    name: str
    interface: str
    fields: tuple[FieldDecl, ...]
    methods: tuple[MethodDecl, ...]
    span: SourceSpan = _span_field()


@dataclass
class Program:
    module_name: str
    interfaces: tuple[InterfaceDecl, ...]
    classes: tuple[ClassDecl, ...]
    main: Block
    resources: tuple[ResourceGroup, ...]

    def interface(self, name: str) -> InterfaceDecl | None:
        for i in self.interfaces:
            if i.name == name:
                return i
        return None

    def cls(self, name: str) -> ClassDecl | None:
        for c in self.classes:
            if c.name == name:
                return c
        return None


def outline(program: Program) -> list[tuple[str, str, SourceSpan]]:
    """Structural overview: one (kind, name, span) entry per interface,
    class and method, ordered by source position."""
    entries: list[tuple[str, str, SourceSpan]] = []
    for iface in program.interfaces:
        entries.append(("interface", iface.name, iface.span))
    for cls in program.classes:
        entries.append(("class", cls.name, cls.span))
        for m in cls.methods:
            entries.append(("method", m.name, m.span))
    entries.sort(key=lambda e: (e[2].line, e[2].column))
    return entries
