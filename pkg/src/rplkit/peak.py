"""Peak resource analysis: how many resources of each category can be held
at the same time.

Three answers of increasing generality:

- observed_peak: the largest simultaneous allocation any seeded simulation
  run actually reached (a lower bound on the true peak);
- exact_peak: the maximum over *all* schedules and random outcomes, by
  exhaustive exploration of scheduler/random choices with memoization on
  clock-free machine states (exact at desk scale; a lower bound when the
  state budget is exhausted);
- static_peak_bound: a sound over-approximation from a task DAG, taking the
  heaviest set of pairwise-unordered task instances per category.

Together they must satisfy observed <= exact <= static, category-wise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .checker import analyze
from .errors import AnalysisError, BudgetExceededError, UnboundedLoopError, UnsupportedRecursionError
from .machine import DeadlockError, Machine, NeedRandom
from .profiles import Profile
from .resources import apply_availability, categories
from .simulate import simulate_once
from .syntax import (
    Assign,
    AsyncCall,
    AwaitStmt,
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
    SetLit,
    VarDecl,
    VarRead,
    WhileStmt,
)

_LOOP_CAP = 100_000


@dataclass
class PeakReport:
    per_category: dict[str, dict[str, int | None]]
    explored_schedules: int
    truncated: bool

    def to_json(self) -> dict:
        return {
            "perCategory": {
                cat: {
                    "observed": entry["observed"],
                    "exact": entry["exact"],
                    "static": entry["static"],
                }
                for cat, entry in self.per_category.items()
            },
            "exploredSchedules": self.explored_schedules,
            "truncated": self.truncated,
        }


# ---------------------------------------------------------------- observed

def observed_peak(program: Program, profile: Profile,
                  deadline_anchor: str = "enable") -> dict[str, int]:
    """Per-category maximum simultaneous allocation over num_sims seeded runs."""
    peaks = {c: 0 for c in categories(program.resources)}
    for i in range(profile.num_sims):
        run = simulate_once(program, profile, (profile.seed + i) % (2**64), deadline_anchor)
        for cat, n in run.peak_by_category.items():
            if n > peaks.get(cat, 0):
                peaks[cat] = n
    return peaks


# ---------------------------------------------------------------- exact

@dataclass
class _SearchStats:
    states: int = 0
    terminals: int = 0
    memo_hits: int = 0
    truncated: bool = False


def _merge_max(into: dict[str, int], other: dict[str, int]) -> None:
    for cat, n in other.items():
        if n > into.get(cat, 0):
            into[cat] = n


def _successors(machine: Machine, option):
    """Every state reachable by running `option`, one per combination of
    random(n) outcomes drawn inside the segment."""
    pending: list[list[int]] = [[]]
    while pending:
        script = pending.pop()
        succ = machine.fork()
        succ.reset_peak_window()
        try:
            succ.execute(option, script=script)
        except NeedRandom as nr:
            for outcome in range(nr.n + 1):
                pending.append(nr.consumed + [outcome])
            continue
        yield succ


def exact_peak(program: Program, profile: Profile, budget: int = 200_000,
               reverse_options: bool = False) -> tuple[dict[str, int], bool, int]:
    """Maximum simultaneous allocation per category over every schedule.

    Depth-first over all scheduler choices and random outcomes, memoizing
    clock-free states (peaks are invariant under time shifts). Returns
    (per-category peaks, truncated, explored); `explored` counts completed
    executions plus memoized subtree reuses. When truncated, the peaks are
    a lower bound of the true maximum. Raises BudgetExceededError only if
    not a single execution completed within budget.
    """
    pool = apply_availability(program.resources, profile.availability_pct)
    root = Machine(program, pool, seed=None)
    stats = _SearchStats()
    memo: dict[bytes, dict[str, int]] = {}

    def visit(machine: Machine, status: str) -> dict[str, int]:
        best = dict(machine.held)
        if status == "done":
            stats.terminals += 1
            return best
        key = machine.fingerprint()
        cached = memo.get(key)
        if cached is not None:
            stats.memo_hits += 1
            return cached
        if stats.states >= budget:
            stats.truncated = True
            return best
        stats.states += 1
        options = machine.options()
        if reverse_options:
            options = list(reversed(options))
        for option in options:
            for succ in _successors(machine, option):
                try:
                    succ_status = succ.settle()
                except DeadlockError:
                    stats.terminals += 1
                    _merge_max(best, succ.peaks)
                    continue
                sub = visit(succ, succ_status)
                _merge_max(best, succ.peaks)  # spikes inside the segment
                _merge_max(best, sub)
        if not stats.truncated:
            memo[key] = best
        return best

    try:
        status = root.settle()
    except DeadlockError:
        status = "done"
    result = {c: 0 for c in categories(program.resources)}
    _merge_max(result, visit(root, status))
    if stats.terminals == 0:
        raise BudgetExceededError(
            f"no complete execution within a budget of {budget} states")
    return result, stats.truncated, stats.terminals + stats.memo_hits


# ---------------------------------------------------------------- static

class _Unknown:
    __slots__ = ()

    def __repr__(self) -> str:
        return "<?>"


_TOP = _Unknown()


@dataclass(frozen=True)
class _ObjA:
    class_name: str


@dataclass(frozen=True)
class _FutA:
    node: str


@dataclass(frozen=True)
class _ListA:
    items: tuple


@dataclass
class DagNode:
    """One static task instance (method x unrolled spawn context)."""

    key: str
    method_name: str
    hold_profile: dict[str, int] = field(default_factory=dict)
    preds: set[str] = field(default_factory=set)
    excl: tuple[tuple[int, int], ...] = ()


class _WalkState:
    """Mutable walk context: variable environment, completed dependencies,
    and the multiset of currently-held units for the hold profile."""

    def __init__(self, env: dict, awaited: set[str], excl: tuple[tuple[int, int], ...]):
        self.env = env
        self.awaited = awaited
        self.excl = excl
        self.held: dict[str, int] = {}
        self.hold_stack: list[dict[str, int]] = []

    def fork(self) -> "_WalkState":
        st = _WalkState(dict(self.env), set(self.awaited), self.excl)
        st.held = dict(self.held)
        st.hold_stack = [dict(h) for h in self.hold_stack]
        return st


class _DagBuilder:
    def __init__(self, program: Program):
        self.program = program
        diags, self.call_targets = analyze(program)
        errors = [d for d in diags if d.severity == "error"]
        if errors:
            raise AnalysisError(f"program does not validate: {errors[0]}")
        self.classes = {c.name: c for c in program.classes}
        self.nodes: dict[str, DagNode] = {}
        self.branch_counter = 0
        self.call_stack: list[str] = []

    # -------------------------------------------------- abstract evaluation

    def eval(self, expr, state: _WalkState):
        if isinstance(expr, IntLit):
            return expr.value
        if isinstance(expr, NilLit):
            return _ListA(())
        if isinstance(expr, VarRead):
            return state.env.get(expr.name, _TOP)
        if isinstance(expr, SetLit):
            # concrete category extraction for hold profiles
            cat = None
            for item in expr.items:
                if isinstance(item, VarRead):
                    cat = item.name
            return ("unit", cat)
        from .syntax import Binary, ListLit, Unary

        if isinstance(expr, ListLit):
            return _ListA(tuple(self.eval(i, state) for i in expr.items))
        if isinstance(expr, Unary):
            v = self.eval(expr.operand, state)
            if expr.op == "!" and isinstance(v, bool):
                return not v
            if expr.op == "-" and isinstance(v, int) and not isinstance(v, bool):
                return -v
            return _TOP
        if isinstance(expr, Binary):
            a = self.eval(expr.left, state)
            b = self.eval(expr.right, state)
            if isinstance(a, bool) or isinstance(b, bool):
                if expr.op == "&&" and (a is False or b is False):
                    return False
                if expr.op == "||" and (a is True or b is True):
                    return True
                if isinstance(a, bool) and isinstance(b, bool):
                    if expr.op == "&&":
                        return a and b
                    if expr.op == "||":
                        return a or b
            if a is _TOP or b is _TOP:
                return _TOP
            if isinstance(a, int) and isinstance(b, int):
                if expr.op == "+":
                    return a + b
                if expr.op == "-":
                    return a - b
                if expr.op == "*":
                    return a * b
                if expr.op == "/":
                    return _TOP if b == 0 else a / b
                if expr.op == "==":
                    return a == b
                if expr.op == "!=":
                    return a != b
                if expr.op == "<":
                    return a < b
                if expr.op == "<=":
                    return a <= b
                if expr.op == ">":
                    return a > b
                if expr.op == ">=":
                    return a >= b
            if expr.op == "==":
                return a == b if not (a is _TOP or b is _TOP) else _TOP
            return _TOP
        if isinstance(expr, Call):
            if expr.func == "isEmpty":
                v = self.eval(expr.args[0], state)
                return len(v.items) == 0 if isinstance(v, _ListA) else _TOP
            if expr.func == "head":
                v = self.eval(expr.args[0], state)
                if isinstance(v, _ListA) and v.items:
                    return v.items[0]
                return _TOP
            if expr.func == "tail":
                v = self.eval(expr.args[0], state)
                if isinstance(v, _ListA) and v.items:
                    return _ListA(v.items[1:])
                return _TOP
            if expr.func == "appendright":
                v = self.eval(expr.args[0], state)
                if isinstance(v, _ListA):
                    return _ListA(v.items + (self.eval(expr.args[1], state),))
                return _TOP
            if expr.func == "truncate":
                v = self.eval(expr.args[0], state)
                return int(v) if isinstance(v, (int, float)) and not isinstance(v, bool) else _TOP
            # random, fst, snd, Pair, ResEfficiency: not tracked
            return _TOP
        return _TOP

    # -------------------------------------------------- walking

    def build(self) -> dict[str, DagNode]:
        root = DagNode("main", "<main>")
        self.nodes[root.key] = root
        state = _WalkState({}, set(), ())
        self.walk_block(self.program.main.stmts, state, root, "main")
        return self.nodes

    def field_env(self, class_name: str) -> dict:
        cls = self.classes[class_name]
        env: dict = {}
        state = _WalkState(env, set(), ())
        for f in cls.fields:
            env[f.name] = self.eval(f.init, state) if f.init is not None else _TOP
        return env

    def spawn(self, call: AsyncCall, state: _WalkState, ctx: str, seq: int) -> str:
        callee = self.eval(call.args[0], state)
        if isinstance(callee, _ObjA):
            class_name = callee.class_name
        else:
            targets = self.call_targets.get(id(call), ())
            if len(targets) != 1:
                raise AnalysisError(
                    f"cannot statically resolve callee of '{call.method}' "
                    f"(line {call.span.line})")
            class_name = targets[0][0]
        method = next(m for m in self.classes[class_name].methods if m.name == call.method)
        preds: set[str] = set(state.awaited)
        for fname in call.after_futs:
            fut = state.env.get(fname)
            if isinstance(fut, _FutA):
                preds.add(fut.node)
        key = f"{ctx}/{seq}:{call.method}"
        if call.method in self.call_stack:
            raise UnsupportedRecursionError(f"recursive spawn of '{call.method}'")
        node = DagNode(key, call.method, preds=preds, excl=state.excl)
        self.nodes[key] = node
        args = tuple(self.eval(a, state) for a in call.args[1:])
        env = self.field_env(class_name)
        env.update(zip((p[0] for p in method.params), args))
        sub = _WalkState(env, set(preds), state.excl)
        self.call_stack.append(call.method)
        try:
            self.walk_block(method.body.stmts, sub, node, key)
        finally:
            self.call_stack.pop()
        return key

    def walk_block(self, stmts, state: _WalkState, node: DagNode, ctx: str) -> None:
        seq = 0
        for stmt in stmts:
            seq += 1
            self.walk_stmt(stmt, state, node, f"{ctx}.{seq}")

    def walk_stmt(self, stmt, state: _WalkState, node: DagNode, ctx: str) -> None:
        if isinstance(stmt, (VarDecl, Assign)):
            name = stmt.name
            value = stmt.init if isinstance(stmt, VarDecl) else stmt.value
            if value is None:
                state.env[name] = _TOP
            elif isinstance(value, AsyncCall):
                key = self.spawn(value, state, ctx, 0)
                state.env[name] = _FutA(key)
            elif isinstance(value, NewObject):
                state.env[name] = _ObjA(value.class_name)
            elif isinstance(value, GetValue):
                fut = state.env.get(value.fut)
                if isinstance(fut, _FutA):
                    state.awaited.add(fut.node)
                state.env[name] = _TOP
            elif isinstance(value, HoldCall):
                self.do_hold(value, state, node)
                state.env[name] = _TOP
            else:
                state.env[name] = self.eval(value, state)
            return
        if isinstance(stmt, AwaitStmt):
            fut = state.env.get(stmt.fut)
            if isinstance(fut, _FutA):
                state.awaited.add(fut.node)
            return
        if isinstance(stmt, ReleaseStmt):
            if state.hold_stack:
                units = state.hold_stack.pop()
                for cat, n in units.items():
                    state.held[cat] = state.held.get(cat, 0) - n
            return
        if isinstance(stmt, CostStmt):
            return
        if isinstance(stmt, ReturnStmt):
            return
        if isinstance(stmt, IfStmt):
            cond = self.eval(stmt.cond, state)
            if cond is True:
                self.walk_block(stmt.then_block.stmts, state, node, ctx + "t")
                return
            if cond is False:
                if stmt.else_block is not None:
                    self.walk_block(stmt.else_block.stmts, state, node, ctx + "e")
                return
            self.branch_counter += 1
            gid = self.branch_counter
            then_state = state.fork()
            then_state.excl = state.excl + ((gid, 0),)
            self.walk_block(stmt.then_block.stmts, then_state, node, ctx + "t")
            else_state = state.fork()
            else_state.excl = state.excl + ((gid, 1),)
            if stmt.else_block is not None:
                self.walk_block(stmt.else_block.stmts, else_state, node, ctx + "e")
            self.merge(state, then_state, else_state)
            return
        if isinstance(stmt, WhileStmt):
            iterations = 0
            while True:
                cond = self.eval(stmt.cond, state)
                if cond is False:
                    return
                if cond is not True:
                    raise UnboundedLoopError(
                        f"loop condition at line {stmt.span.line} is not statically "
                        "determined; cannot bound its iterations")
                iterations += 1
                if iterations > _LOOP_CAP:
                    raise UnboundedLoopError(
                        f"loop at line {stmt.span.line} exceeds {_LOOP_CAP} iterations")
                self.walk_block(stmt.body.stmts, state, node, f"{ctx}i{iterations}")
            return
        raise AnalysisError(f"cannot analyse {type(stmt).__name__}")

    def do_hold(self, call: HoldCall, state: _WalkState, node: DagNode) -> None:
        request = self.eval(call.request, state)
        if not isinstance(request, _ListA):
            raise AnalysisError(
                f"hold request at line {call.span.line} is not statically known")
        units: dict[str, int] = {}
        for item in request.items:
            if not (isinstance(item, tuple) and len(item) == 2 and item[0] == "unit" and item[1]):
                raise AnalysisError(
                    f"hold request at line {call.span.line} is not statically known")
            units[item[1]] = units.get(item[1], 0) + 1
        state.hold_stack.append(units)
        for cat, n in units.items():
            state.held[cat] = state.held.get(cat, 0) + n
            current = state.held[cat]
            if current > node.hold_profile.get(cat, 0):
                node.hold_profile[cat] = current

    def merge(self, state: _WalkState, a: _WalkState, b: _WalkState) -> None:
        env: dict = {}
        for name in set(a.env) | set(b.env):
            va, vb = a.env.get(name, _TOP), b.env.get(name, _TOP)
            env[name] = va if va == vb else _TOP
        state.env = env
        state.awaited = a.awaited & b.awaited
        state.held = dict(a.held)  # balanced hold/release leaves both equal
        state.hold_stack = a.hold_stack


def build_task_dag(program: Program) -> dict[str, DagNode]:
    """Static task instances with happens-before edges from `after` lists,
    await/get joins and statement order inside the spawning body. Intra-actor
    serialization is deliberately not encoded (kept sound, less precise)."""
    return _DagBuilder(program).build()


def _reachability(nodes: dict[str, DagNode]) -> dict[str, set[str]]:
    reach: dict[str, set[str]] = {}

    def visit(key: str) -> set[str]:
        if key in reach:
            return reach[key]
        reach[key] = set()  # cycle guard; DAG by construction
        anc: set[str] = set()
        for p in nodes[key].preds:
            anc.add(p)
            anc |= visit(p)
        reach[key] = anc
        return anc

    for key in nodes:
        visit(key)
    return reach


def _exclusive(a: DagNode, b: DagNode) -> bool:
    tags = dict(a.excl)
    return any(gid in tags and tags[gid] != arm for gid, arm in b.excl)


def _max_weight_independent(weights: list[int], conflicts: list[set[int]]) -> int:
    order = sorted(range(len(weights)), key=lambda i: -weights[i])
    best = 0

    def rec(idx: int, chosen: list[int], current: int, remaining: int) -> None:
        nonlocal best
        if current > best:
            best = current
        if idx == len(order) or current + remaining <= best:
            return
        i = order[idx]
        rest = remaining - weights[i]
        if all(i not in conflicts[j] for j in chosen):
            chosen.append(i)
            rec(idx + 1, chosen, current + weights[i], rest)
            chosen.pop()
        rec(idx + 1, chosen, current, rest)

    rec(0, [], 0, sum(weights))
    return best


def static_peak_bound(program: Program, profile: Profile) -> dict[str, int]:
    """Sound per-category upper bound: the maximum total units requested by
    any set of task instances that are pairwise unordered and not on
    opposite arms of the same branch instance."""
    nodes = build_task_dag(program)
    reach = _reachability(nodes)
    keys = list(nodes)
    index = {k: i for i, k in enumerate(keys)}
    result: dict[str, int] = {}
    for cat in categories(program.resources):
        positive = [k for k in keys if nodes[k].hold_profile.get(cat, 0) > 0]
        weights = [nodes[k].hold_profile[cat] for k in positive]
        conflicts: list[set[int]] = [set() for _ in positive]
        for i, ki in enumerate(positive):
            for j, kj in enumerate(positive):
                if i >= j:
                    continue
                if (ki in reach[kj] or kj in reach[ki]
                        or _exclusive(nodes[ki], nodes[kj])):
                    conflicts[i].add(j)
                    conflicts[j].add(i)
        result[cat] = _max_weight_independent(weights, conflicts)
    _ = index
    return result


# ---------------------------------------------------------------- report

def peak_report(program: Program, profile: Profile, budget: int = 200_000,
                with_exact: bool = True) -> PeakReport:
    observed = observed_peak(program, profile)
    static = static_peak_bound(program, profile)
    exact: dict[str, int] | None = None
    truncated = False
    explored = 0
    if with_exact:
        exact, truncated, explored = exact_peak(program, profile, budget=budget)
    per_category: dict[str, dict[str, int | None]] = {}
    for cat in categories(program.resources):
        per_category[cat] = {
            "observed": observed.get(cat, 0),
            "exact": None if exact is None else exact.get(cat, 0),
            "static": static.get(cat, 0),
        }
    return PeakReport(per_category, explored, truncated)
