"""Closed-form worst-case time bounds from per-method cost equations.

The source is parsed with `$EFFICIENCY`/`$CONC_CASES` left symbolic, so a
method's local work stays a function of the parameters (cost expressions
use exact rational arithmetic with a toward-zero `trunc`). Per method:

    work(m) = local cost + branches via max + loops via iteration-bound x
              body + spawned callees' work

Solving bottom-up over the (acyclic) call graph yields two closed forms:
the sequential bound (total work of everything spawned; sound against any
schedule because the clock only advances while some task is inside a cost
span) and the critical-path bound (longest dependency chain assuming no
resource contention; informational).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .checker import analyze
from .errors import AnalysisError, UnboundedLoopError, UnsupportedRecursionError
from .machine import SimulationError
from .profiles import PARAM_CONC_CASES, PARAM_EFFICIENCY, Profile
from .simulate import simulate_many
from .syntax import (
    Assign,
    AsyncCall,
    AwaitStmt,
    Binary,
    Block,
    Call,
    CostStmt,
    GetValue,
    HoldCall,
    IfStmt,
    IntLit,
    NewObject,
    NilLit,
    Program,
    ReleaseStmt,
    ReturnStmt,
    Unary,
    VarDecl,
    VarRead,
    WhileStmt,
)

PARAMS = (PARAM_EFFICIENCY, PARAM_CONC_CASES)

MAIN_KEY = "<main>"


# ---------------------------------------------------------------- expressions

class BoundExpr:
    """Symbolic integer expression over EFFICIENCY and CONC_CASES."""


@dataclass(frozen=True)
class BConst(BoundExpr):
    value: int


@dataclass(frozen=True)
class BParam(BoundExpr):
    name: str


@dataclass(frozen=True)
class BAdd(BoundExpr):
    left: BoundExpr
    right: BoundExpr


@dataclass(frozen=True)
class BMul(BoundExpr):
    left: BoundExpr
    right: BoundExpr


@dataclass(frozen=True)
class BMax(BoundExpr):
    left: BoundExpr
    right: BoundExpr


@dataclass(frozen=True)
class BTruncDiv(BoundExpr):
    """Toward-zero integer division."""

    num: BoundExpr
    den: BoundExpr


@dataclass(frozen=True)
class BCall(BoundExpr):
    """Reference to another method's bound; eliminated by solve()."""

    key: str
    kind: str  # "work" | "path"


ZERO = BConst(0)
ONE = BConst(1)


def is_nonneg(e: BoundExpr) -> bool:
    if isinstance(e, BConst):
        return e.value >= 0
    if isinstance(e, (BParam, BCall)):
        return True  # parameters are >= 1, bounds are >= 0
    if isinstance(e, (BAdd, BMul, BMax)):
        return is_nonneg(e.left) and is_nonneg(e.right)
    if isinstance(e, BTruncDiv):
        return is_nonneg(e.num) and is_nonneg(e.den)
    return False


def badd(a: BoundExpr, b: BoundExpr) -> BoundExpr:
    if isinstance(a, BConst) and isinstance(b, BConst):
        return BConst(a.value + b.value)
    if isinstance(a, BConst) and a.value == 0:
        return b
    if isinstance(b, BConst) and b.value == 0:
        return a
    return BAdd(a, b)


def bmul(a: BoundExpr, b: BoundExpr) -> BoundExpr:
    if isinstance(a, BConst) and isinstance(b, BConst):
        return BConst(a.value * b.value)
    for x, y in ((a, b), (b, a)):
        if isinstance(x, BConst):
            if x.value == 0:
                return ZERO
            if x.value == 1:
                return y
    return BMul(a, b)


def bmax(a: BoundExpr, b: BoundExpr) -> BoundExpr:
    if isinstance(a, BConst) and isinstance(b, BConst):
        return BConst(max(a.value, b.value))
    if a == b:
        return a
    if isinstance(a, BConst) and a.value == 0 and is_nonneg(b):
        return b
    if isinstance(b, BConst) and b.value == 0 and is_nonneg(a):
        return a
    return BMax(a, b)


def btruncdiv(a: BoundExpr, b: BoundExpr) -> BoundExpr:
    if isinstance(b, BConst) and b.value == 1:
        return a
    if isinstance(a, BConst) and a.value == 0:
        return ZERO
    if isinstance(a, BConst) and isinstance(b, BConst) and b.value != 0:
        return BConst(int(Fraction(a.value, b.value)))
    return BTruncDiv(a, b)


def beval(e: BoundExpr, efficiency: int, conc_cases: int) -> int:
    env = {PARAM_EFFICIENCY: efficiency, PARAM_CONC_CASES: conc_cases}

    def go(x: BoundExpr) -> int:
        if isinstance(x, BConst):
            return x.value
        if isinstance(x, BParam):
            return env[x.name]
        if isinstance(x, BAdd):
            return go(x.left) + go(x.right)
        if isinstance(x, BMul):
            return go(x.left) * go(x.right)
        if isinstance(x, BMax):
            return max(go(x.left), go(x.right))
        if isinstance(x, BTruncDiv):
            den = go(x.den)
            if den == 0:
                raise AnalysisError("division by zero while evaluating a bound")
            return int(Fraction(go(x.num), den))
        raise AnalysisError(f"unresolved reference {x!r}; call solve() first")

    return go(e)


def brender(e: BoundExpr) -> str:
    """Text form: const | EFFICIENCY | CONC_CASES | (e+e) | (e*e) |
    max(e,e) | trunc(e/e)."""
    if isinstance(e, BConst):
        return str(e.value)
    if isinstance(e, BParam):
        return e.name
    if isinstance(e, BAdd):
        return f"({brender(e.left)}+{brender(e.right)})"
    if isinstance(e, BMul):
        return f"({brender(e.left)}*{brender(e.right)})"
    if isinstance(e, BMax):
        return f"max({brender(e.left)},{brender(e.right)})"
    if isinstance(e, BTruncDiv):
        return f"trunc({brender(e.num)}/{brender(e.den)})"
    if isinstance(e, BCall):
        return f"<{e.key}:{e.kind}>"
    raise TypeError(type(e).__name__)


# ---------------------------------------------------------------- symbolic values

class _UnknownSym:
    __slots__ = ()

    def __repr__(self) -> str:
        return "<?>"


UNKNOWN = _UnknownSym()


@dataclass(frozen=True)
class SymRat:
    """Exact rational with symbolic numerator/denominator."""

    num: BoundExpr
    den: BoundExpr = ONE

    @staticmethod
    def const(v: int) -> "SymRat":
        return SymRat(BConst(v))

    def add(self, o: "SymRat") -> "SymRat":
        if self.den == o.den:
            return SymRat(badd(self.num, o.num), self.den)
        return SymRat(badd(bmul(self.num, o.den), bmul(o.num, self.den)), bmul(self.den, o.den))

    def mul(self, o: "SymRat") -> "SymRat":
        return SymRat(bmul(self.num, o.num), bmul(self.den, o.den))

    def div(self, o: "SymRat") -> "SymRat":
        return SymRat(bmul(self.num, o.den), bmul(self.den, o.num))

    def truncated(self) -> BoundExpr:
        return btruncdiv(self.num, self.den)

    def as_int_expr(self) -> BoundExpr | None:
        if self.den == ONE:
            return self.num
        if isinstance(self.num, BConst) and isinstance(self.den, BConst) and self.den.value != 0:
            q = Fraction(self.num.value, self.den.value)
            if q.denominator == 1:
                return BConst(int(q))
        return None

    def const_value(self) -> Fraction | None:
        if isinstance(self.num, BConst) and isinstance(self.den, BConst) and self.den.value != 0:
            return Fraction(self.num.value, self.den.value)
        return None


@dataclass(frozen=True)
class SymFut:
    completion: BoundExpr | None  # None when the spawning site is unknown


@dataclass(frozen=True)
class SymList:
    length: BoundExpr
    max_completion: BoundExpr | None = None


def _sub_const(a: SymRat, b: SymRat) -> int:
    """Constant difference a - b, required for loop-bound inference."""
    va, vb = a.const_value(), b.const_value()
    if va is None or vb is None:
        raise UnboundedLoopError("loop start or step is not a constant")
    diff = va - vb
    if diff.denominator != 1:
        raise UnboundedLoopError("loop arithmetic is not integral")
    return int(diff)


# ---------------------------------------------------------------- equations

@dataclass
class CostEquationSystem:
    """One work and one completion-path equation per method key
    ('Class.method', plus '<main>'); call references are BCall leaves."""

    work: dict[str, BoundExpr]
    path: dict[str, BoundExpr]
    order: list[str] = field(default_factory=list)  # callees before callers


@dataclass
class TimeBoundReport:
    sequential: BoundExpr
    critical_path: BoundExpr
    evaluations: list[dict] = field(default_factory=list)

    def evaluate(self, efficiency: int, conc_cases: int) -> dict:
        entry = {
            "EFFICIENCY": efficiency,
            "CONC_CASES": conc_cases,
            "sequential": beval(self.sequential, efficiency, conc_cases),
            "criticalPath": beval(self.critical_path, efficiency, conc_cases),
        }
        return entry

    def to_json(self) -> dict:
        return {
            "sequential": brender(self.sequential),
            "criticalPath": brender(self.critical_path),
            "evaluations": list(self.evaluations),
        }


class _Walk:
    """Result of walking a block: total spawned work, end-of-block path
    clock, and the environment after the block."""

    __slots__ = ("work", "now")

    def __init__(self, work: BoundExpr, now: BoundExpr):
        self.work = work
        self.now = now


class _EquationBuilder:
    def __init__(self, program: Program):
        self.program = program
        diags, self.call_targets = analyze(program, predeclared=PARAMS)
        errors = [d for d in diags if d.severity == "error"]
        if errors:
            raise AnalysisError(f"program does not validate: {errors[0]}")
        self.classes = {c.name: c for c in program.classes}
        self.work: dict[str, BoundExpr] = {}
        self.path: dict[str, BoundExpr] = {}

    def build(self) -> CostEquationSystem:
        for cls in self.program.classes:
            fields = self.field_env(cls.name)
            for m in cls.methods:
                env: dict[str, object] = dict(fields)
                for pname, _ptype in m.params:
                    env[pname] = UNKNOWN
                key = f"{cls.name}.{m.name}"
                walk = self.walk_block(m.body.stmts, env, ZERO)
                self.work[key] = walk.work
                self.path[key] = walk.now
        env = self.param_env()
        walk = self.walk_block(self.program.main.stmts, env, ZERO)
        self.work[MAIN_KEY] = walk.work
        self.path[MAIN_KEY] = walk.now
        order = self.topo_order()
        return CostEquationSystem(self.work, self.path, order)

    def param_env(self) -> dict[str, object]:
        return {name: SymRat(BParam(name)) for name in PARAMS}

    def field_env(self, class_name: str) -> dict[str, object]:
        env = self.param_env()
        for f in self.classes[class_name].fields:
            env[f.name] = self.sym_eval(f.init, env) if f.init is not None else UNKNOWN
        return env

    # -------------------------------------------------- symbolic expressions

    def sym_eval(self, expr, env: dict[str, object]):
        if isinstance(expr, IntLit):
            return SymRat.const(expr.value)
        if isinstance(expr, NilLit):
            return SymList(ZERO)
        if isinstance(expr, VarRead):
            return env.get(expr.name, UNKNOWN)
        if isinstance(expr, Unary):
            return UNKNOWN  # negation/logic not needed for bounds
        if isinstance(expr, Binary):
            a = self.sym_eval(expr.left, env)
            b = self.sym_eval(expr.right, env)
            if isinstance(a, SymRat) and isinstance(b, SymRat):
                if expr.op == "+":
                    return a.add(b)
                if expr.op == "*":
                    return a.mul(b)
                if expr.op == "/":
                    return a.div(b)
                if expr.op == "-":
                    return SymRat.const(_sub_const(a, b))
            return UNKNOWN
        if isinstance(expr, Call):
            if expr.func == "truncate":
                v = self.sym_eval(expr.args[0], env)
                if isinstance(v, SymRat):
                    return SymRat(v.truncated())
                return UNKNOWN
            if expr.func == "appendright":
                lst = self.sym_eval(expr.args[0], env)
                item = self.sym_eval(expr.args[1], env)
                if isinstance(lst, SymList):
                    comp = lst.max_completion
                    if isinstance(item, SymFut) and item.completion is not None:
                        comp = item.completion if comp is None else bmax(comp, item.completion)
                    return SymList(badd(lst.length, ONE), comp)
                return UNKNOWN
            if expr.func == "head":
                lst = self.sym_eval(expr.args[0], env)
                if isinstance(lst, SymList):
                    return SymFut(lst.max_completion)
                return UNKNOWN
            if expr.func == "tail":
                lst = self.sym_eval(expr.args[0], env)
                if isinstance(lst, SymList):
                    return SymList(badd(lst.length, BConst(-1)), lst.max_completion)
                return UNKNOWN
            return UNKNOWN  # random, fst, snd, Pair, isEmpty, ResEfficiency
        return UNKNOWN

    def int_expr(self, value, span, what: str) -> BoundExpr:
        if isinstance(value, SymRat):
            e = value.as_int_expr()
            if e is not None:
                return e
            # rational-valued duration: sound upper form via truncation
            return value.truncated()
        raise AnalysisError(f"{what} at line {span.line} is not statically known")

    # -------------------------------------------------- walking

    def call_expr(self, call: AsyncCall, kind: str) -> BoundExpr:
        targets = self.call_targets.get(id(call), ())
        if not targets:
            raise AnalysisError(
                f"no implementing class for '{call.method}' (line {call.span.line})")
        expr: BoundExpr | None = None
        for cname, mname in targets:
            ref: BoundExpr = BCall(f"{cname}.{mname}", kind)
            expr = ref if expr is None else BMax(expr, ref)
        return expr  # worst case over implementations

    def walk_block(self, stmts, env: dict[str, object], now: BoundExpr) -> _Walk:
        work: BoundExpr = ZERO
        for stmt in stmts:
            if isinstance(stmt, (VarDecl, Assign)):
                name = stmt.name
                value = stmt.init if isinstance(stmt, VarDecl) else stmt.value
                if value is None:
                    env[name] = UNKNOWN
                elif isinstance(value, AsyncCall):
                    work = badd(work, self.call_expr(value, "work"))
                    start = now
                    for fname in value.after_futs:
                        dep = env.get(fname)
                        if isinstance(dep, SymFut) and dep.completion is not None:
                            start = bmax(start, dep.completion)
                    env[name] = SymFut(badd(start, self.call_expr(value, "path")))
                elif isinstance(value, GetValue):
                    fut = env.get(value.fut)
                    if isinstance(fut, SymFut) and fut.completion is not None:
                        now = bmax(now, fut.completion)
                    env[name] = UNKNOWN
                elif isinstance(value, (NewObject, HoldCall)):
                    env[name] = UNKNOWN
                else:
                    env[name] = self.sym_eval(value, env)
            elif isinstance(stmt, AwaitStmt):
                fut = env.get(stmt.fut)
                if isinstance(fut, SymFut) and fut.completion is not None:
                    now = bmax(now, fut.completion)
            elif isinstance(stmt, CostStmt):
                amount = self.int_expr(self.sym_eval(stmt.amount, env), stmt.span, "cost duration")
                work = badd(work, amount)
                now = badd(now, amount)
            elif isinstance(stmt, (ReleaseStmt, ReturnStmt)):
                continue
            elif isinstance(stmt, IfStmt):
                then_env = dict(env)
                then = self.walk_block(stmt.then_block.stmts, then_env, now)
                else_env = dict(env)
                if stmt.else_block is not None:
                    other = self.walk_block(stmt.else_block.stmts, else_env, now)
                else:
                    other = _Walk(ZERO, now)
                work = badd(work, bmax(then.work, other.work))
                now = bmax(then.now, other.now)
                for key in set(then_env) | set(else_env):
                    a, b = then_env.get(key, UNKNOWN), else_env.get(key, UNKNOWN)
                    env[key] = a if a == b else UNKNOWN
            elif isinstance(stmt, WhileStmt):
                bound = self.loop_bound(stmt, env)
                body_env = dict(env)
                body = self.walk_block(stmt.body.stmts, body_env, now)
                work = badd(work, bmul(bound, body.work))
                own = self.own_cost(stmt.body.stmts, body_env)
                extra_iters = bmax(ZERO, badd(bound, BConst(-1)))
                now = badd(body.now, bmul(extra_iters, own))
                self.apply_loop_env(stmt, env, body_env, bound)
            else:
                raise AnalysisError(f"cannot analyse {type(stmt).__name__}")
        return _Walk(work, now)

    def own_cost(self, stmts, env: dict[str, object]) -> BoundExpr:
        """The walked task's own time per iteration (cost statements only)."""
        total: BoundExpr = ZERO
        for stmt in stmts:
            if isinstance(stmt, CostStmt):
                total = badd(total, self.int_expr(self.sym_eval(stmt.amount, env), stmt.span, "cost duration"))
            elif isinstance(stmt, IfStmt):
                t = self.own_cost(stmt.then_block.stmts, env)
                e = self.own_cost(stmt.else_block.stmts, env) if stmt.else_block else ZERO
                total = badd(total, bmax(t, e))
            elif isinstance(stmt, WhileStmt):
                total = badd(total, bmul(self.loop_bound(stmt, env), self.own_cost(stmt.body.stmts, env)))
        return total

    # -------------------------------------------------- loops

    def loop_bound(self, stmt: WhileStmt, env: dict[str, object]) -> BoundExpr:
        cond = stmt.cond
        if (isinstance(cond, Binary) and cond.op == "<="
                and isinstance(cond.left, VarRead)):
            return self.counter_bound(stmt, cond.left.name, cond.right, env)
        if (isinstance(cond, Unary) and cond.op == "!"
                and isinstance(cond.operand, Call) and cond.operand.func == "isEmpty"
                and isinstance(cond.operand.args[0], VarRead)):
            return self.shrinking_list_bound(stmt, cond.operand.args[0].name, env)
        raise UnboundedLoopError(
            f"unsupported loop condition at line {stmt.span.line}; expected "
            "'v <= bound' or '!isEmpty(l)'")

    def counter_bound(self, stmt: WhileStmt, var: str, limit_expr, env) -> BoundExpr:
        start = env.get(var)
        if not isinstance(start, SymRat):
            raise UnboundedLoopError(
                f"loop variable '{var}' has no known value before line {stmt.span.line}")
        limit = self.sym_eval(limit_expr, env)
        if not isinstance(limit, SymRat):
            raise UnboundedLoopError(
                f"loop limit at line {stmt.span.line} is not statically known")
        step = self.counter_step(stmt.body, var)
        limit_int = limit.as_int_expr()
        if limit_int is None:
            raise UnboundedLoopError(
                f"loop limit at line {stmt.span.line} is not an integer expression")
        # iterations of `for v = v0; v <= E; v += c` = max(0, trunc((E - v0 + c)/c))
        shift = step - _sub_const(start, SymRat.const(0))
        iters = btruncdiv(badd(limit_int, BConst(shift)), BConst(step))
        return bmax(ZERO, iters)

    def counter_step(self, body: Block, var: str) -> int:
        step = 0
        writes = 0
        for stmt in body.stmts:
            if isinstance(stmt, Assign) and stmt.name == var:
                writes += 1
                v = stmt.value
                if (isinstance(v, Binary) and v.op == "+"
                        and isinstance(v.left, VarRead) and v.left.name == var
                        and isinstance(v.right, IntLit) and v.right.value > 0):
                    step = v.right.value
            elif isinstance(stmt, (IfStmt, WhileStmt)):
                for sub in self.nested_blocks(stmt):
                    for s in sub.stmts:
                        if isinstance(s, Assign) and s.name == var:
                            writes += 2  # conditional update: give up
        if writes != 1 or step <= 0:
            raise UnboundedLoopError(
                f"loop variable '{var}' must be increased by one positive "
                "constant per iteration")
        return step

    def nested_blocks(self, stmt):
        if isinstance(stmt, IfStmt):
            yield stmt.then_block
            if stmt.else_block is not None:
                yield stmt.else_block
        elif isinstance(stmt, WhileStmt):
            yield stmt.body

    def shrinking_list_bound(self, stmt: WhileStmt, var: str, env) -> BoundExpr:
        value = env.get(var)
        if not isinstance(value, SymList):
            raise UnboundedLoopError(
                f"'{var}' has no statically-tracked length before line {stmt.span.line}")
        shrinks = False
        for s in stmt.body.stmts:
            if isinstance(s, Assign) and s.name == var:
                v = s.value
                if isinstance(v, Call) and v.func == "tail":
                    shrinks = True
                elif isinstance(v, Call) and v.func == "appendright":
                    raise UnboundedLoopError(
                        f"loop at line {stmt.span.line} appends to '{var}' while draining it")
        if not shrinks:
            raise UnboundedLoopError(
                f"loop at line {stmt.span.line} does not shrink '{var}'")
        return value.length

    def apply_loop_env(self, stmt: WhileStmt, env: dict[str, object],
                       body_env: dict[str, object], bound: BoundExpr) -> None:
        """Post-loop environment: lists grow/shrink by their per-iteration
        delta times the bound; everything else written in the body is
        unknown afterwards."""
        appended = self.append_counts(stmt.body)
        for name in set(env) | set(body_env):
            before, after = env.get(name, UNKNOWN), body_env.get(name, UNKNOWN)
            if after == before:
                continue
            count = appended.get(name, 0)
            if count > 0 and isinstance(before, SymList) and isinstance(after, SymList):
                env[name] = SymList(
                    badd(before.length, bmul(bound, BConst(count))),
                    after.max_completion,
                )
            elif isinstance(before, SymList) and isinstance(after, SymList):
                env[name] = SymList(ZERO, after.max_completion)  # drained
            else:
                env[name] = UNKNOWN

    def append_counts(self, body: Block) -> dict[str, int]:
        counts: dict[str, int] = {}
        for s in body.stmts:
            if (isinstance(s, (Assign, VarDecl))):
                value = s.value if isinstance(s, Assign) else s.init
                if (isinstance(value, Call) and value.func == "appendright"
                        and isinstance(value.args[0], VarRead)
                        and value.args[0].name == s.name):
                    counts[s.name] = counts.get(s.name, 0) + 1
        return counts

    # -------------------------------------------------- ordering

    def topo_order(self) -> list[str]:
        deps: dict[str, set[str]] = {k: set() for k in self.work}

        def refs(e: BoundExpr, out: set[str]) -> None:
            if isinstance(e, BCall):
                out.add(e.key)
            elif isinstance(e, (BAdd, BMul, BMax)):
                refs(e.left, out)
                refs(e.right, out)
            elif isinstance(e, BTruncDiv):
                refs(e.num, out)
                refs(e.den, out)

        for key in self.work:
            refs(self.work[key], deps[key])
            refs(self.path[key], deps[key])
        order: list[str] = []
        marks: dict[str, int] = {}

        def visit(key: str) -> None:
            state = marks.get(key, 0)
            if state == 1:
                raise UnsupportedRecursionError(f"recursive call chain through '{key}'")
            if state == 2:
                return
            marks[key] = 1
            for d in sorted(deps.get(key, ())):
                visit(d)
            marks[key] = 2
            order.append(key)

        for key in sorted(self.work):
            visit(key)
        return order


def build_equations(program: Program) -> CostEquationSystem:
    """Per-method cost equations from a program parsed with symbolic
    EFFICIENCY/CONC_CASES (see profiles.preprocess_symbolic)."""
    return _EquationBuilder(program).build()


def solve(system: CostEquationSystem) -> TimeBoundReport:
    """Eliminate call references bottom-up, yielding closed forms."""
    closed_work: dict[str, BoundExpr] = {}
    closed_path: dict[str, BoundExpr] = {}

    def substitute(e: BoundExpr) -> BoundExpr:
        if isinstance(e, BCall):
            table = closed_work if e.kind == "work" else closed_path
            return table[e.key]
        if isinstance(e, BAdd):
            return badd(substitute(e.left), substitute(e.right))
        if isinstance(e, BMul):
            return bmul(substitute(e.left), substitute(e.right))
        if isinstance(e, BMax):
            return bmax(substitute(e.left), substitute(e.right))
        if isinstance(e, BTruncDiv):
            return btruncdiv(substitute(e.num), substitute(e.den))
        return e

    for key in system.order:
        closed_work[key] = substitute(system.work[key])
        closed_path[key] = substitute(system.path[key])
    return TimeBoundReport(closed_work[MAIN_KEY], closed_path[MAIN_KEY])


@dataclass
class BoundCheck:
    ok: bool
    bound: int
    exec_times: list[int]
    runs: int


def check_bound(program: Program, profile: Profile, report: TimeBoundReport,
                deadline_anchor: str = "enable") -> BoundCheck:
    """Empirical soundness harness: every simulated execution time must stay
    at or below the sequential bound at the profile's parameters. The
    program here is the concretely-preprocessed one."""
    bound = beval(report.sequential, profile.efficiency_pct, profile.conc_cases)
    try:
        agg = simulate_many(program, profile, deadline_anchor=deadline_anchor)
    except SimulationError:
        raise
    times = [r.exec_time for r in agg.runs]
    return BoundCheck(all(t <= bound for t in times), bound, times, len(times))
