"""Semantic validation of parsed programs.

Checks declaration consistency (classes implement their interfaces, types
exist), scoping (variables declared before use, no duplicate declarations
in a block), call-site validity (method declared on the callee's static
type, arity match), future discipline (`await`/`get`/`after` only on
declared futures) and return paths. Produces diagnostics; never raises.
"""

from __future__ import annotations

from .diagnostics import Diagnostic, error
from .syntax import (
    Assign,
    AsyncCall,
    AwaitStmt,
    Block,
    ClassDecl,
    CostStmt,
    Expr,
    FutType,
    GetValue,
    HoldCall,
    IfStmt,
    IntType,
    MethodDecl,
    NamedType,
    NewObject,
    Program,
    ReleaseStmt,
    ReturnStmt,
    Type,
    VarDecl,
    WhileStmt,
)

_BUILTINS = {
    "truncate": 1,
    "random": 1,
    "fst": 1,
    "snd": 1,
    "Pair": 2,
    "appendright": 2,
    "head": 1,
    "tail": 1,
    "isEmpty": 1,
    "ResEfficiency": 1,
}


class _Scope:
    def __init__(self, parent: "_Scope | None" = None):
        self.parent = parent
        self.names: dict[str, Type] = {}

    def declare(self, name: str, typ: Type) -> bool:
        if name in self.names:
            return False
        self.names[name] = typ
        return True

    def lookup(self, name: str) -> Type | None:
        scope: _Scope | None = self
        while scope is not None:
            if name in scope.names:
                return scope.names[name]
            scope = scope.parent
        return None


class _Checker:
    def __init__(self, program: Program, predeclared: tuple[str, ...]):
        self.program = program
        self.diags: list[Diagnostic] = []
        self.call_targets: dict[int, tuple[tuple[str, str], ...]] = {}
        self.interfaces = {i.name: i for i in program.interfaces}
        self.classes = {c.name: c for c in program.classes}
        self.predeclared = predeclared

    def err(self, span, message) -> None:
        self.diags.append(error(span, message))

    # ------------------------------------------------------------ types

    def check_type(self, typ: Type, span) -> None:
        if isinstance(typ, NamedType):
            if typ.name not in self.interfaces and typ.name not in self.classes:
                self.err(span, f"unknown type '{typ.name}'")
        elif isinstance(typ, FutType):
            self.check_type(typ.inner, span)
        else:
            for attr in ("inner", "first", "second"):
                sub = getattr(typ, attr, None)
                if isinstance(sub, Type):
                    self.check_type(sub, span)

    def methods_of(self, type_name: str):
        """Declared method signatures reachable through a named type."""
        sigs: dict[str, tuple[int, object]] = {}
        iface = self.interfaces.get(type_name)
        if iface is not None:
            for s in iface.sigs:
                sigs[s.name] = (len(s.params), s)
        cls = self.classes.get(type_name)
        if cls is not None:
            for m in cls.methods:
                sigs.setdefault(m.name, (len(m.params), m))
        return sigs

    def implementing_classes(self, type_name: str) -> list[str]:
        out = [c.name for c in self.program.classes if c.interface == type_name]
        if type_name in self.classes and type_name not in out:
            out.append(type_name)
        return out

    # ------------------------------------------------------------ declarations

    def check_decls(self) -> None:
        seen: set[str] = set()
        for iface in self.program.interfaces:
            if iface.name in seen:
                self.err(iface.span, f"duplicate declaration of '{iface.name}'")
            seen.add(iface.name)
            signames: set[str] = set()
            for sig in iface.sigs:
                if sig.name in signames:
                    self.err(sig.span, f"duplicate method '{sig.name}' in interface '{iface.name}'")
                signames.add(sig.name)
                self.check_type(sig.return_type, sig.span)
                self.check_params(sig.params, sig.span)
        clsnames: set[str] = set()
        for cls in self.program.classes:
            if cls.name in clsnames:
                self.err(cls.span, f"duplicate class '{cls.name}'")
            clsnames.add(cls.name)
            iface = self.interfaces.get(cls.interface)
            if iface is None:
                self.err(cls.span, f"class '{cls.name}' implements unknown interface '{cls.interface}'")
            else:
                provided = {m.name: m for m in cls.methods}
                for sig in iface.sigs:
                    m = provided.get(sig.name)
                    if m is None:
                        self.err(cls.span, f"class '{cls.name}' is missing method '{sig.name}' of interface '{iface.name}'")
                    elif len(m.params) != len(sig.params):
                        self.err(m.span, f"method '{m.name}' has {len(m.params)} parameter(s); interface declares {len(sig.params)}")
            fieldnames: set[str] = set()
            for f in cls.fields:
                if f.name in fieldnames:
                    self.err(f.span, f"duplicate field '{f.name}' in class '{cls.name}'")
                fieldnames.add(f.name)
                self.check_type(f.type, f.span)
            methodnames: set[str] = set()
            for m in cls.methods:
                if m.name in methodnames:
                    self.err(m.span, f"duplicate method '{m.name}' in class '{cls.name}'")
                methodnames.add(m.name)

    def check_params(self, params, span) -> None:
        names: set[str] = set()
        for pname, ptype in params:
            if pname in names:
                self.err(span, f"duplicate parameter name '{pname}'")
            names.add(pname)
            self.check_type(ptype, span)

    # ------------------------------------------------------------ bodies

    def check_method(self, cls: ClassDecl, method: MethodDecl) -> None:
        self.check_type(method.return_type, method.span)
        self.check_params(method.params, method.span)
        scope = self.class_scope(cls)
        mscope = _Scope(scope)
        for pname, ptype in method.params:
            mscope.declare(pname, ptype)
        self.check_block(method.body, mscope)
        if not self.block_returns(method.body):
            self.err(method.span, f"method '{method.name}' may finish without a return")

    def class_scope(self, cls: ClassDecl | None) -> _Scope:
        scope = _Scope()
        for name in self.predeclared:
            scope.declare(name, IntType())
        if cls is not None:
            for f in cls.fields:
                scope.declare(f.name, f.type)
        return scope

    def block_returns(self, block: Block) -> bool:
        for i, stmt in enumerate(block.stmts):
            returns = False
            if isinstance(stmt, ReturnStmt):
                returns = True
            elif isinstance(stmt, IfStmt) and stmt.else_block is not None:
                returns = self.block_returns(stmt.then_block) and self.block_returns(stmt.else_block)
            if returns:
                if i != len(block.stmts) - 1:
                    self.err(block.stmts[i + 1].span, "unreachable statement after return")  # type: ignore[attr-defined]
                return True
        return False

    def check_block(self, block: Block, parent: _Scope) -> None:
        scope = _Scope(parent)
        for stmt in block.stmts:
            self.check_stmt(stmt, scope)

    def check_stmt(self, stmt, scope: _Scope) -> None:
        if isinstance(stmt, VarDecl):
            self.check_type(stmt.type, stmt.span)
            if stmt.init is not None:
                self.check_rhs(stmt.init, stmt.type, scope, stmt.span)
            if not scope.declare(stmt.name, stmt.type):
                self.err(stmt.span, f"'{stmt.name}' is already declared in this block")
        elif isinstance(stmt, Assign):
            target = scope.lookup(stmt.name)
            if target is None:
                self.err(stmt.span, f"assignment to undeclared variable '{stmt.name}'")
            self.check_rhs(stmt.value, target, scope, stmt.span)
        elif isinstance(stmt, AwaitStmt):
            self.require_future(stmt.fut, scope, stmt.span, "await")
        elif isinstance(stmt, IfStmt):
            self.check_expr(stmt.cond, scope)
            self.check_block(stmt.then_block, scope)
            if stmt.else_block is not None:
                self.check_block(stmt.else_block, scope)
        elif isinstance(stmt, WhileStmt):
            self.check_expr(stmt.cond, scope)
            self.check_block(stmt.body, scope)
        elif isinstance(stmt, (CostStmt,)):
            self.check_expr(stmt.amount, scope)
        elif isinstance(stmt, ReleaseStmt):
            self.check_expr(stmt.value, scope)
        elif isinstance(stmt, ReturnStmt):
            self.check_expr(stmt.value, scope)

    def check_rhs(self, value: Expr, target_type: Type | None, scope: _Scope, span) -> None:
        if isinstance(value, AsyncCall):
            self.check_async_call(value, scope)
            if target_type is not None and not isinstance(target_type, FutType):
                self.err(span, "an asynchronous call must be stored in a Fut<...> variable")
        elif isinstance(value, NewObject):
            if value.class_name not in self.classes:
                self.err(value.span, f"unknown class '{value.class_name}'")
        elif isinstance(value, HoldCall):
            self.check_expr(value.request, scope)
        elif isinstance(value, GetValue):
            self.require_future(value.fut, scope, value.span, "get")
        else:
            self.check_expr(value, scope)

    def require_future(self, name: str, scope: _Scope, span, what: str) -> None:
        typ = scope.lookup(name)
        if typ is None:
            self.err(span, f"{what} on undeclared variable '{name}'")
        elif not isinstance(typ, FutType):
            self.err(span, f"{what} needs a Fut<...> variable; '{name}' is {typ}")

    def check_async_call(self, call: AsyncCall, scope: _Scope) -> None:
        if not call.args:
            self.err(call.span, f"call to '{call.method}' needs a callee as its first argument")
            return
        for arg in call.args:
            self.check_expr(arg, scope)
        self.check_expr(call.deadline, scope)
        for fname in call.after_futs:
            self.require_future(fname, scope, call.span, "after")
        callee = call.args[0]
        from .syntax import VarRead

        if not isinstance(callee, VarRead):
            self.err(call.span, "the callee (first argument) must be an object-typed variable")
            return
        ctype = scope.lookup(callee.name)
        if ctype is None:
            self.err(call.span, f"undeclared callee '{callee.name}'")
            return
        if not isinstance(ctype, NamedType):
            self.err(call.span, f"callee '{callee.name}' is {ctype}, not an object type")
            return
        sigs = self.methods_of(ctype.name)
        entry = sigs.get(call.method)
        if entry is None:
            self.err(call.span, f"type '{ctype.name}' declares no method '{call.method}'")
            return
        arity, _ = entry
        if len(call.args) - 1 != arity:
            self.err(call.span,
                     f"method '{call.method}' takes {arity} argument(s) besides the callee, got {len(call.args) - 1}")
        targets = tuple((cname, call.method) for cname in self.implementing_classes(ctype.name))
        self.call_targets[id(call)] = targets

    def check_expr(self, expr: Expr, scope: _Scope) -> None:
        from .syntax import Binary, Call, ListLit, SetLit, Unary, VarRead

        if isinstance(expr, VarRead):
            if scope.lookup(expr.name) is None:
                self.err(expr.span, f"undeclared variable '{expr.name}'")
        elif isinstance(expr, Unary):
            self.check_expr(expr.operand, scope)
        elif isinstance(expr, Binary):
            self.check_expr(expr.left, scope)
            self.check_expr(expr.right, scope)
        elif isinstance(expr, Call):
            arity = _BUILTINS.get(expr.func)
            if arity is None:
                self.err(expr.span, f"unknown function '{expr.func}'")
            elif len(expr.args) != arity:
                self.err(expr.span, f"'{expr.func}' takes {arity} argument(s), got {len(expr.args)}")
            for a in expr.args:
                self.check_expr(a, scope)
        elif isinstance(expr, ListLit):
            for item in expr.items:
                self.check_expr(item, scope)
        elif isinstance(expr, SetLit):
            # constraint group: bare identifiers name resource categories
            for item in expr.items:
                if isinstance(item, Call):
                    self.check_expr(item, scope)
        elif isinstance(expr, (AsyncCall, NewObject, HoldCall, GetValue)):
            self.err(expr.span, "this form is only allowed directly on the right of '='")

    # ------------------------------------------------------------ entry

    def run(self) -> list[Diagnostic]:
        self.check_decls()
        for cls in self.program.classes:
            field_scope = self.class_scope(cls)
            for f in cls.fields:
                if f.init is not None:
                    self.check_expr(f.init, field_scope)
            for m in cls.methods:
                self.check_method(cls, m)
        self.check_block(self.program.main, self.class_scope(None))
        return self.diags


def analyze(program: Program, predeclared: tuple[str, ...] = ()):
    """Validate and also return static call-target candidates keyed by
    id(AsyncCall node), for the analyses."""
    checker = _Checker(program, predeclared)
    diags = checker.run()
    return diags, checker.call_targets


def validate(program: Program, predeclared: tuple[str, ...] = ()) -> list[Diagnostic]:
    return analyze(program, predeclared)[0]
