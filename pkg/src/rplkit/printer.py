"""Canonical pretty printer. `parse(pretty(p))` is structurally equal to
`p`; the canonical text also feeds the execution-id hash."""

from __future__ import annotations

from .resources import ResourceGroup
from .syntax import (
    Assign,
    AsyncCall,
    AwaitStmt,
    Binary,
    Block,
    Call,
    CostStmt,
    Expr,
    GetValue,
    HoldCall,
    IfStmt,
    IntLit,
    ListLit,
    NewObject,
    NilLit,
    Program,
    ReleaseStmt,
    ReturnStmt,
    SetLit,
    Stmt,
    Unary,
    VarDecl,
    VarRead,
    WhileStmt,
)

_IND = "    "

# parenthesize by precedence; higher binds tighter
_PREC = {
    "||": 1, "&&": 2, "==": 3, "!=": 3,
    "<": 4, "<=": 4, ">": 4, ">=": 4,
    "+": 5, "-": 5, "*": 6, "/": 6,
}


def format_expr(expr: Expr, parent_prec: int = 0) -> str:
    if isinstance(expr, IntLit):
        return str(expr.value)
    if isinstance(expr, VarRead):
        return expr.name
    if isinstance(expr, NilLit):
        return "Nil"
    if isinstance(expr, Unary):
        return f"{expr.op}{format_expr(expr.operand, 7)}"
    if isinstance(expr, Binary):
        prec = _PREC[expr.op]
        text = f"{format_expr(expr.left, prec)} {expr.op} {format_expr(expr.right, prec + 1)}"
        return f"({text})" if prec < parent_prec else text
    if isinstance(expr, Call):
        return f"{expr.func}({', '.join(format_expr(a) for a in expr.args)})"
    if isinstance(expr, ListLit):
        return f"list[{', '.join(format_expr(a) for a in expr.items)}]"
    if isinstance(expr, SetLit):
        return f"set[{', '.join(format_expr(a) for a in expr.items)}]"
    if isinstance(expr, AsyncCall):
        args = ", ".join(format_expr(a) for a in expr.args)
        after = ""
        if expr.after_futs:
            after = " after " + " ".join(expr.after_futs)
        else:
            after = " after"
        return f"!{expr.method}({args}){after} dl {format_expr(expr.deadline)}"
    if isinstance(expr, NewObject):
        return f"new {expr.class_name}()"
    if isinstance(expr, HoldCall):
        return f"hold({format_expr(expr.request)})"
    if isinstance(expr, GetValue):
        return f"{expr.fut}.get"
    raise TypeError(f"cannot print {type(expr).__name__}")


def _stmt_lines(stmt: Stmt, indent: str) -> list[str]:
    if isinstance(stmt, VarDecl):
        if stmt.init is None:
            return [f"{indent}{stmt.type} {stmt.name};"]
        return [f"{indent}{stmt.type} {stmt.name} = {format_expr(stmt.init)};"]
    if isinstance(stmt, Assign):
        return [f"{indent}{stmt.name} = {format_expr(stmt.value)};"]
    if isinstance(stmt, AwaitStmt):
        return [f"{indent}await {stmt.fut}?;"]
    if isinstance(stmt, CostStmt):
        return [f"{indent}cost({format_expr(stmt.amount)});"]
    if isinstance(stmt, ReleaseStmt):
        return [f"{indent}release({format_expr(stmt.value)});"]
    if isinstance(stmt, ReturnStmt):
        return [f"{indent}return {format_expr(stmt.value)};"]
    if isinstance(stmt, IfStmt):
        lines = [f"{indent}if ({format_expr(stmt.cond)}) {{"]
        lines += _block_lines(stmt.then_block, indent + _IND)
        if stmt.else_block is not None:
            lines.append(f"{indent}}} else {{")
            lines += _block_lines(stmt.else_block, indent + _IND)
        lines.append(f"{indent}}}")
        return lines
    if isinstance(stmt, WhileStmt):
        lines = [f"{indent}while ({format_expr(stmt.cond)}) {{"]
        lines += _block_lines(stmt.body, indent + _IND)
        lines.append(f"{indent}}}")
        return lines
    raise TypeError(f"cannot print {type(stmt).__name__}")


def _block_lines(block: Block, indent: str) -> list[str]:
    lines: list[str] = []
    for s in block.stmts:
        lines += _stmt_lines(s, indent)
    return lines


def _resources_lines(groups: tuple[ResourceGroup, ...]) -> list[str]:
    if not groups:
        return []
    lines = ["Resources:"]
    for gi, group in enumerate(groups):
        if gi > 0:
            lines.append("$")
        for d in group.descriptors:
            lines.append(f"{d.category},{d.efficiency},{d.cost_per_unit},{d.extra_quality}")
    return lines


def pretty(program: Program) -> str:
    lines: list[str] = [f"module {program.module_name};"]
    for iface in program.interfaces:
        lines.append(f"interface {iface.name} {{")
        for sig in iface.sigs:
            params = ", ".join(f"{t} {n}" for n, t in sig.params)
            lines.append(f"{_IND}{sig.return_type} {sig.name}({params});")
        lines.append("}")
    for cls in program.classes:
        lines.append(f"class {cls.name} implements {cls.interface} {{")
        for f in cls.fields:
            if f.init is None:
                lines.append(f"{_IND}{f.type} {f.name};")
            else:
                lines.append(f"{_IND}{f.type} {f.name} = {format_expr(f.init)};")
        for m in cls.methods:
            params = ", ".join(f"{t} {n}" for n, t in m.params)
            lines.append(f"{_IND}{m.return_type} {m.name}({params}) {{")
            lines += _block_lines(m.body, _IND * 2)
            lines.append(f"{_IND}}}")
        lines.append("}")
    lines.append("{")
    lines += _block_lines(program.main, _IND)
    lines.append("}")
    lines += _resources_lines(program.resources)
    return "\n".join(lines) + "\n"
