"""Recursive-descent parser for RPL.

Statements are semicolon-terminated, blocks brace-delimited; `after`
accepts zero or more future identifiers before the mandatory `dl`.
Error recovery is limited to statement/declaration resynchronization.
"""

from __future__ import annotations

from .diagnostics import Diagnostic, ParseError, error
from .lexer import Token, tokenize
from .resources import ResourceDescriptor, ResourceGroup
from .syntax import (
    BOOL,
    INT,
    Assign,
    AsyncCall,
    AwaitStmt,
    Binary,
    Block,
    Call,
    ClassDecl,
    CostStmt,
    Expr,
    FieldDecl,
    FutType,
    GetValue,
    HoldCall,
    IfStmt,
    IntLit,
    InterfaceDecl,
    ListLit,
    ListType,
    MethodDecl,
    MethodSig,
    NamedType,
    NewObject,
    NilLit,
    PairType,
    Program,
    ReleaseStmt,
    ReturnStmt,
    SetLit,
    SourceSpan,
    Stmt,
    Type,
    Unary,
    VarDecl,
    VarRead,
    WhileStmt,
)

_COLLECTION_LITERALS = {"list", "set"}


class _SyntaxError(Exception):
    def __init__(self, span: SourceSpan, message: str):
        self.span = span
        self.message = message
        super().__init__(message)


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.diags: list[Diagnostic] = []

    # ------------------------------------------------------------ plumbing

    def peek(self, ahead: int = 0) -> Token:
        i = min(self.pos + ahead, len(self.tokens) - 1)
        return self.tokens[i]

    def at(self, kind: str) -> bool:
        return self.peek().kind == kind

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            shown = what or f"'{kind}'"
            found = tok.text or "end of file"
            raise _SyntaxError(tok.span, f"expected {shown}, found {found!r}")
        return self.advance()

    def fail(self, message: str) -> _SyntaxError:
        return _SyntaxError(self.peek().span, message)

    def recover_to(self, stops: set[str]) -> None:
        depth = 0
        while not self.at("EOF"):
            kind = self.peek().kind
            if depth == 0 and kind in stops:
                if kind == ";":
                    self.advance()
                return
            if kind == "{":
                depth += 1
            elif kind == "}":
                if depth == 0:
                    return
                depth -= 1
            self.advance()

    # ------------------------------------------------------------ program

    def parse_program(self) -> Program | None:
        try:
            self.expect("module", "'module'")
            name_tok = self.expect("IDENT", "module name")
            self.expect(";")
        except _SyntaxError as e:
            self.diags.append(error(e.span, e.message))
            return None
        interfaces: list[InterfaceDecl] = []
        classes: list[ClassDecl] = []
        while self.peek().kind in ("interface", "class"):
            try:
                if self.at("interface"):
                    interfaces.append(self.parse_interface())
                else:
                    classes.append(self.parse_class())
            except _SyntaxError as e:
                self.diags.append(error(e.span, e.message))
                self.recover_to({"interface", "class", "{"})
        try:
            main = self.parse_block()
        except _SyntaxError as e:
            self.diags.append(error(e.span, e.message))
            return None
        resources = self.parse_resources()
        if not self.at("EOF"):
            tok = self.peek()
            self.diags.append(error(tok.span, f"unexpected trailing input {tok.text!r}"))
        return Program(
            module_name=name_tok.text,
            interfaces=tuple(interfaces),
            classes=tuple(classes),
            main=main,
            resources=resources,
        )

    def parse_interface(self) -> InterfaceDecl:
        start = self.expect("interface")
        name = self.expect("IDENT", "interface name").text
        self.expect("{")
        sigs: list[MethodSig] = []
        while not self.at("}") and not self.at("EOF"):
            try:
                sigs.append(self.parse_method_sig())
            except _SyntaxError as e:
                self.diags.append(error(e.span, e.message))
                self.recover_to({";"})
        self.expect("}")
        return InterfaceDecl(name, tuple(sigs), span=start.span)

    def parse_method_sig(self) -> MethodSig:
        rtype = self.parse_type()
        name_tok = self.expect("IDENT", "method name")
        params = self.parse_params()
        self.expect(";")
        return MethodSig(name_tok.text, rtype, params, span=name_tok.span)

    def parse_class(self) -> ClassDecl:
        start = self.expect("class")
        name = self.expect("IDENT", "class name").text
        self.expect("implements")
        iface = self.expect("IDENT", "interface name").text
        self.expect("{")
        fields: list[FieldDecl] = []
        methods: list[MethodDecl] = []
        while not self.at("}") and not self.at("EOF"):
            try:
                mtype = self.parse_type()
                mname = self.expect("IDENT", "member name")
                if self.at("("):
                    params = self.parse_params()
                    body = self.parse_block()
                    methods.append(MethodDecl(mname.text, mtype, params, body, span=mname.span))
                else:
                    init = None
                    if self.at("="):
                        self.advance()
                        init = self.parse_expr()
                    self.expect(";")
                    fields.append(FieldDecl(mname.text, mtype, init, span=mname.span))
            except _SyntaxError as e:
                self.diags.append(error(e.span, e.message))
                self.recover_to({";"})
        self.expect("}")
        return ClassDecl(name, iface, tuple(fields), tuple(methods), span=start.span)

    def parse_params(self) -> tuple[tuple[str, Type], ...]:
        self.expect("(")
        params: list[tuple[str, Type]] = []
        if not self.at(")"):
            while True:
                ptype = self.parse_type()
                pname = self.expect("IDENT", "parameter name").text
                params.append((pname, ptype))
                if self.at(","):
                    self.advance()
                    continue
                break
        self.expect(")")
        return tuple(params)

    # ------------------------------------------------------------ types

    def parse_type(self) -> Type:
        tok = self.expect("IDENT", "a type")
        name = tok.text
        if name == "Int":
            return INT
        if name == "Bool":
            return BOOL
        if name == "Fut":
            self.expect("<")
            inner = self.parse_type()
            self.expect(">")
            return FutType(inner)
        if name == "List":
            self.expect("<")
            inner = self.parse_type()
            self.expect(">")
            return ListType(inner)
        if name == "Pair":
            self.expect("<")
            first = self.parse_type()
            self.expect(",")
            second = self.parse_type()
            self.expect(">")
            return PairType(first, second)
        return NamedType(name)

    # ------------------------------------------------------------ statements

    def parse_block(self) -> Block:
        start = self.expect("{")
        stmts: list[Stmt] = []
        while not self.at("}") and not self.at("EOF"):
            try:
                stmts.append(self.parse_stmt())
            except _SyntaxError as e:
                self.diags.append(error(e.span, e.message))
                self.recover_to({";"})
        self.expect("}")
        return Block(tuple(stmts), span=start.span)

    def parse_stmt(self) -> Stmt:
        tok = self.peek()
        kind = tok.kind
        if kind == "if":
            return self.parse_if()
        if kind == "while":
            return self.parse_while()
        if kind == "return":
            self.advance()
            value = self.parse_expr()
            self.expect(";")
            return ReturnStmt(value, span=tok.span)
        if kind == "await":
            self.advance()
            fut = self.expect("IDENT", "future variable").text
            self.expect("?")
            self.expect(";")
            return AwaitStmt(fut, span=tok.span)
        if kind == "cost":
            self.advance()
            self.expect("(")
            amount = self.parse_expr()
            self.expect(")")
            self.expect(";")
            return CostStmt(amount, span=tok.span)
        if kind == "release":
            self.advance()
            self.expect("(")
            value = self.parse_expr()
            self.expect(")")
            self.expect(";")
            return ReleaseStmt(value, span=tok.span)
        if kind == "IDENT":
            # `Type name ...` declares; `name = ...` assigns
            nxt = self.peek(1).kind
            if nxt in ("IDENT", "<"):
                return self.parse_var_decl()
            if nxt == "=":
                name_tok = self.advance()
                self.advance()  # '='
                value = self.parse_rhs()
                self.expect(";")
                return Assign(name_tok.text, value, span=name_tok.span)
        raise self.fail(f"expected a statement, found {tok.text or 'end of file'!r}")

    def parse_var_decl(self) -> VarDecl:
        vtype = self.parse_type()
        name_tok = self.expect("IDENT", "variable name")
        init = None
        if self.at("="):
            self.advance()
            init = self.parse_rhs()
        self.expect(";")
        return VarDecl(name_tok.text, vtype, init, span=name_tok.span)

    def parse_if(self) -> IfStmt:
        start = self.expect("if")
        self.expect("(")
        cond = self.parse_expr()
        self.expect(")")
        then_block = self.parse_block()
        else_block = None
        if self.at("else"):
            self.advance()
            else_block = self.parse_block()
        return IfStmt(cond, then_block, else_block, span=start.span)

    def parse_while(self) -> WhileStmt:
        start = self.expect("while")
        self.expect("(")
        cond = self.parse_expr()
        self.expect(")")
        body = self.parse_block()
        return WhileStmt(cond, body, span=start.span)

    def parse_rhs(self) -> Expr:
        tok = self.peek()
        if tok.kind == "!":
            return self.parse_async_call()
        if tok.kind == "new":
            self.advance()
            cname = self.expect("IDENT", "class name").text
            self.expect("(")
            self.expect(")")
            return NewObject(cname, span=tok.span)
        if tok.kind == "hold":
            self.advance()
            self.expect("(")
            request = self.parse_expr()
            self.expect(")")
            return HoldCall(request, span=tok.span)
        if tok.kind == "IDENT" and self.peek(1).kind == ".":
            name_tok = self.advance()
            self.advance()  # '.'
            get_tok = self.expect("IDENT", "'get'")
            if get_tok.text != "get":
                raise _SyntaxError(get_tok.span, f"expected 'get' after '.', found {get_tok.text!r}")
            return GetValue(name_tok.text, span=name_tok.span)
        return self.parse_expr()

    def parse_async_call(self) -> AsyncCall:
        start = self.expect("!")
        method = self.expect("IDENT", "method name").text
        self.expect("(")
        args: list[Expr] = []
        if not self.at(")"):
            while True:
                args.append(self.parse_expr())
                if self.at(","):
                    self.advance()
                    continue
                break
        self.expect(")")
        after_futs: list[str] = []
        if self.at("after"):
            self.advance()
            while self.at("IDENT"):
                after_futs.append(self.advance().text)
        self.expect("dl", "'dl' (every call needs a deadline)")
        deadline = self.parse_expr()
        return AsyncCall(method, tuple(args), tuple(after_futs), deadline, span=start.span)

    # ------------------------------------------------------------ expressions

    _BINARY_LEVELS = [
        {"||"},
        {"&&"},
        {"==", "!="},
        {"<", "<=", ">", ">="},
        {"+", "-"},
        {"*", "/"},
    ]

    def parse_expr(self, level: int = 0) -> Expr:
        if level == len(self._BINARY_LEVELS):
            return self.parse_unary()
        left = self.parse_expr(level + 1)
        while self.peek().kind in self._BINARY_LEVELS[level]:
            op_tok = self.advance()
            right = self.parse_expr(level + 1)
            left = Binary(op_tok.kind, left, right, span=op_tok.span)
        return left

    def parse_unary(self) -> Expr:
        tok = self.peek()
        if tok.kind in ("!", "-"):
            self.advance()
            return Unary(tok.kind, self.parse_unary(), span=tok.span)
        return self.parse_primary()

    def parse_primary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "INT":
            self.advance()
            return IntLit(int(tok.text), span=tok.span)
        if tok.kind == "(":
            self.advance()
            inner = self.parse_expr()
            self.expect(")")
            return inner
        if tok.kind == "IDENT":
            name = tok.text
            if name in _COLLECTION_LITERALS and self.peek(1).kind == "[":
                self.advance()
                self.advance()  # '['
                items: list[Expr] = []
                if not self.at("]"):
                    while True:
                        items.append(self.parse_expr())
                        if self.at(","):
                            self.advance()
                            continue
                        break
                self.expect("]")
                if name == "list":
                    return ListLit(tuple(items), span=tok.span)
                return SetLit(tuple(items), span=tok.span)
            if name == "Nil":
                self.advance()
                return NilLit(span=tok.span)
            if self.peek(1).kind == "(":
                self.advance()
                self.advance()  # '('
                args: list[Expr] = []
                if not self.at(")"):
                    while True:
                        args.append(self.parse_expr())
                        if self.at(","):
                            self.advance()
                            continue
                        break
                self.expect(")")
                return Call(name, tuple(args), span=tok.span)
            self.advance()
            return VarRead(name, span=tok.span)
        raise self.fail(f"expected an expression, found {tok.text or 'end of file'!r}")

    # ------------------------------------------------------------ resources

    def parse_resources(self) -> tuple[ResourceGroup, ...]:
        if not self.at("Resources"):
            return ()
        self.advance()
        self.expect(":")
        groups: list[ResourceGroup] = []
        current: list[ResourceDescriptor] = []
        rid = 1

        def close_group() -> None:
            nonlocal current
            if current:
                cats = {d.category for d in current}
                if len(cats) > 1:
                    self.diags.append(error(
                        self.peek().span,
                        "resource group mixes categories "
                        f"{sorted(cats)}; separate categories with a '$' line",
                    ))
                groups.append(ResourceGroup(current[0].category, tuple(current)))
            current = []

        while True:
            tok = self.peek()
            if tok.kind == "$":
                self.advance()
                close_group()
                continue
            if tok.kind != "IDENT":
                break
            try:
                cat = self.advance().text
                self.expect(",")
                eff = int(self.expect("INT", "efficiency value").text)
                self.expect(",")
                cost = int(self.expect("INT", "cost per time unit").text)
                self.expect(",")
                extra = int(self.expect("INT", "extra quality value").text)
            except _SyntaxError as e:
                self.diags.append(error(e.span, e.message))
                self.recover_to({"$"})
                continue
            current.append(ResourceDescriptor(rid, cat, eff, cost, extra))
            rid += 1
        close_group()
        return tuple(groups)


def parse_source(source: str) -> tuple[Program | None, list[Diagnostic]]:
    """Parse source text; returns the program (None on fatal errors) and
    all syntax diagnostics."""
    tokens, lex_diags = tokenize(source)
    parser = _Parser(tokens)
    program = parser.parse_program()
    diags = lex_diags + parser.diags
    if any(d.severity == "error" for d in diags):
        return None, diags
    return program, diags


def load_program(source: str, predeclared: tuple[str, ...] = ()) -> tuple[Program | None, list[Diagnostic]]:
    """Parse and semantically validate; the one-stop front end."""
    from .checker import validate

    program, diags = parse_source(source)
    if program is None:
        return None, diags
    sem = validate(program, predeclared=predeclared)
    diags = diags + sem
    if any(d.severity == "error" for d in diags):
        return None, diags
    return program, diags


def parse_program(source: str, predeclared: tuple[str, ...] = ()) -> Program:
    """Parse and validate, raising ParseError with diagnostics on failure."""
    program, diags = load_program(source, predeclared=predeclared)
    if program is None:
        errors = [d for d in diags if d.severity == "error"]
        raise ParseError(errors if errors else diags)
    return program
