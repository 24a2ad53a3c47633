"""Timed actor interpreter for RPL programs.

One Machine instance executes one run. Tasks run in segments: straight-line
statements execute atomically until a scheduling point (`await`, a blocked
`hold`, task start/end, or a `cost` span). The clock only advances when no
task can make progress, jumping to the earliest cost completion.

Nondeterminism is confined to two places: which runnable (actor, task) pair
steps next, and the outcome of `random(n)`. Seeded runs resolve both from
one splitmix64 stream; the exhaustive peak search instead enumerates every
alternative, which is why task, future and object identifiers are derived
from the spawning task (path-independent across interleavings).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction

from .resources import RequestUnit, ResourceDescriptor, match_units
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
    Unary,
    VarDecl,
    VarRead,
    WhileStmt,
)

_M64 = (1 << 64) - 1


class SeedStream:
    """Deterministic splitmix64 stream; self-contained so results do not
    depend on the host's PRNG implementation."""

    def __init__(self, seed: int):
        self._state = seed & _M64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _M64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection sampling."""
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        if n == 1:
            return 0
        limit = _M64 + 1 - ((_M64 + 1) % n)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % n


# ---------------------------------------------------------------- errors

class SimulationError(Exception):
    pass


class ModelRuntimeError(SimulationError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f" (line {line})" if line else ""
        super().__init__(f"{message}{where}")


class UnsatisfiableHoldError(SimulationError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message)


class DeadlockError(SimulationError):
    def __init__(self, message: str, resource_starvation: bool):
        self.resource_starvation = resource_starvation
        super().__init__(message)


class NeedRandom(Exception):
    """Scripted execution hit a random(n) with no scripted outcome left.
    Carries the outcomes consumed so far so the caller can branch."""

    def __init__(self, n: int, consumed: list[int]):
        self.n = n
        self.consumed = consumed
        super().__init__(f"unscripted random({n})")


# ---------------------------------------------------------------- values

class _Unset:
    __slots__ = ()

    def __repr__(self) -> str:
        return "<unset>"


UNSET = _Unset()


@dataclass(frozen=True)
class PairV:
    fst: object
    snd: object


@dataclass(frozen=True)
class ListV:
    items: tuple

    def __bool__(self) -> bool:
        return bool(self.items)


NIL = ListV(())


@dataclass(frozen=True)
class FutV:
    fid: str


@dataclass(frozen=True)
class ObjV:
    oid: str


def _num(value):
    """Normalize rationals: integral Fractions collapse to int."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


# ---------------------------------------------------------------- tasks

# task statuses
PENDING = "pending"        # waiting on after-dependencies
READY = "ready"            # enabled, waiting for its actor
ACTIVE = "active"          # currently executing a segment
WORKING = "working"        # inside a cost span, actor occupied
AWAITING = "awaiting"      # suspended on await, actor free
HOLDBLOCKED = "holdblocked"  # suspended on a failed hold, actor free
GETBLOCKED = "getblocked"  # blocking get, actor pinned
RESUMABLE = "resumable"    # woken, waiting to be scheduled
DONE = "done"


class Task:
    __slots__ = (
        "tid", "method", "oid", "fid", "args", "call_site", "dl_value",
        "issue_time", "enable_time", "deadline_abs", "deps", "status",
        "env", "frames", "working_until", "await_fut", "wake_value",
        "blocked_units", "child_count", "started",
    )

    def __init__(self, tid: str, method, oid: str, fid: str | None, args: tuple,
                 call_site: tuple[str, int] | None, dl_value: int | None):
        self.tid = tid
        self.method = method  # MethodDecl or the main Block
        self.oid = oid
        self.fid = fid
        self.args = args
        self.call_site = call_site
        self.dl_value = dl_value
        self.issue_time = 0
        self.enable_time: int | None = None
        self.deadline_abs: int | None = None
        self.deps: set[str] = set()
        self.status = PENDING
        self.env: dict[str, object] = {}
        self.frames: list[list] = []
        self.working_until: int | None = None
        self.await_fut: str | None = None
        self.wake_value: object | None = None
        self.blocked_units: tuple[RequestUnit, ...] | None = None
        self.child_count = 0
        self.started = False

    @property
    def method_name(self) -> str:
        return self.method.name if hasattr(self.method, "name") else "<main>"

    def clone(self) -> "Task":
        t = Task.__new__(Task)
        t.tid = self.tid
        t.method = self.method
        t.oid = self.oid
        t.fid = self.fid
        t.args = self.args
        t.call_site = self.call_site
        t.dl_value = self.dl_value
        t.issue_time = self.issue_time
        t.enable_time = self.enable_time
        t.deadline_abs = self.deadline_abs
        t.deps = set(self.deps)
        t.status = self.status
        t.env = dict(self.env)
        t.frames = [frame.copy() for frame in self.frames]
        t.working_until = self.working_until
        t.await_fut = self.await_fut
        t.wake_value = self.wake_value
        t.blocked_units = self.blocked_units
        t.child_count = self.child_count
        t.started = self.started
        return t


class ObjState:
    __slots__ = ("oid", "class_name", "fields", "active", "resumable", "ready")

    def __init__(self, oid: str, class_name: str, fields: dict):
        self.oid = oid
        self.class_name = class_name
        self.fields = fields
        self.active: str | None = None
        self.resumable: list[str] = []
        self.ready: list[str] = []

    def clone(self) -> "ObjState":
        o = ObjState(self.oid, self.class_name, dict(self.fields))
        o.active = self.active
        o.resumable = list(self.resumable)
        o.ready = list(self.ready)
        return o


# handler outcomes for one statement
_NEXT = "next"                 # advance past the statement, keep running
_CONTINUE = "continue"         # handler managed frames itself, keep running
_YIELD_AFTER = "yield-after"   # advance, then end the segment (cost, await)
_YIELD_STAY = "yield-stay"     # end the segment; statement re-runs on resume
_END = "end"                   # return statement: finish the task


class Machine:
    """Executable state of one run. ``fork()`` snapshots it for search."""

    def __init__(self, program: Program, pool: tuple[ResourceDescriptor, ...],
                 seed: int | None = 0, deadline_anchor: str = "enable"):
        if deadline_anchor not in ("enable", "issue"):
            raise ValueError("deadline_anchor must be 'enable' or 'issue'")
        self.program = program
        self.pool = pool
        self.deadline_anchor = deadline_anchor
        self.rng = SeedStream(seed) if seed is not None else None
        self.script: list[int] | None = None
        self._script_pos = 0
        self._consumed: list[int] = []

        self.clock = 0
        self.done = False
        self.financial_cost = 0
        self.total_cost_work = 0
        self.violations: dict[tuple[str, int], int] = {}
        self.categories: list[str] = []
        for d in pool:
            if d.category not in self.categories:
                self.categories.append(d.category)
        self.held: dict[str, int] = {c: 0 for c in self.categories}
        self.peaks: dict[str, int] = {c: 0 for c in self.categories}
        self.holder: dict[int, str] = {}  # rid -> holding task id
        self._by_rid = {d.rid: d for d in pool}

        self.objects: dict[str, ObjState] = {}
        self.object_order: list[str] = []
        self.tasks: dict[str, Task] = {}
        self.futures: dict[str, object] = {}  # fid -> UNSET or resolved value
        self.blocked: list[str] = []  # FIFO of hold-blocked task ids

        self._methods = {c.name: {m.name: m for m in c.methods} for c in program.classes}
        self._classes = {c.name: c for c in program.classes}
        self._uid: dict[int, int] = {}

        main_obj = ObjState("r:o0", "<main>", {})
        self.objects[main_obj.oid] = main_obj
        self.object_order.append(main_obj.oid)
        main = Task("t0", program.main, main_obj.oid, None, (), None, None)
        main.enable_time = 0
        main.status = READY
        self.tasks[main.tid] = main
        main_obj.ready.append(main.tid)

    # ---------------------------------------------------------- cloning

    def fork(self) -> "Machine":
        m = Machine.__new__(Machine)
        m.program = self.program
        m.pool = self.pool
        m.deadline_anchor = self.deadline_anchor
        m.rng = None
        m.script = None
        m._script_pos = 0
        m._consumed = []
        m.clock = self.clock
        m.done = self.done
        m.financial_cost = self.financial_cost
        m.total_cost_work = self.total_cost_work
        m.violations = dict(self.violations)
        m.categories = self.categories
        m.held = dict(self.held)
        m.peaks = dict(self.peaks)
        m.holder = dict(self.holder)
        m._by_rid = self._by_rid
        m.objects = {oid: o.clone() for oid, o in self.objects.items()}
        m.object_order = list(self.object_order)
        m.tasks = {tid: t.clone() for tid, t in self.tasks.items()}
        m.futures = dict(self.futures)
        m.blocked = list(self.blocked)
        m._methods = self._methods
        m._classes = self._classes
        m._uid = self._uid  # append-only cache over the shared AST
        return m

    # ---------------------------------------------------------- randomness

    def _draw(self, n: int) -> int:
        """Uniform integer in [0, n]."""
        if self.script is not None:
            if self._script_pos < len(self.script):
                v = self.script[self._script_pos]
                self._script_pos += 1
                self._consumed.append(v)
                return v
            raise NeedRandom(n, list(self._consumed))
        if self.rng is None:
            raise NeedRandom(n, [])
        return self.rng.below(n + 1)

    # ---------------------------------------------------------- scheduling

    def options(self) -> list[tuple[str, str, str]]:
        """Runnable (oid, kind, tid) choices at the current instant."""
        out: list[tuple[str, str, str]] = []
        for oid in self.object_order:
            obj = self.objects[oid]
            if obj.active is not None:
                t = self.tasks[obj.active]
                if t.status == RESUMABLE:
                    out.append((oid, "resume", t.tid))
                continue
            for tid in obj.resumable:
                out.append((oid, "resume", tid))
            for tid in obj.ready:
                out.append((oid, "start", tid))
        return out

    def settle(self) -> str:
        """Fast-forward deterministic progress: wake finished cost spans and
        advance the clock when nothing is runnable. Returns 'done' or
        'choice'; raises DeadlockError when no progress is possible."""
        while True:
            if self.done:
                return "done"
            if self.options():
                return "choice"
            working = [t for t in self.tasks.values() if t.status == WORKING]
            if working:
                wake_at = min(t.working_until for t in working)  # type: ignore[type-var]
                self.clock = wake_at
                for t in working:
                    if t.working_until == wake_at:
                        t.status = RESUMABLE
                continue
            starving = bool(self.blocked)
            waiting = sorted(
                t.tid for t in self.tasks.values()
                if t.status in (PENDING, AWAITING, GETBLOCKED, HOLDBLOCKED)
            )
            if starving:
                msg = ("deadlock: resource starvation; task(s) blocked on hold "
                       f"with no release in sight: {', '.join(sorted(self.blocked))}")
            else:
                msg = ("deadlock: await/get dependency cycle; waiting tasks: "
                       f"{', '.join(waiting) if waiting else '<none>'}")
            raise DeadlockError(msg, resource_starvation=starving)

    def execute(self, option: tuple[str, str, str], script: list[int] | None = None) -> None:
        """Run one chosen task segment to its next scheduling point.

        With a script, random(n) outcomes are taken from it and NeedRandom is
        raised when it runs out (the caller forks and extends). Without one,
        outcomes come from the seeded stream.
        """
        self.script = script
        self._script_pos = 0
        self._consumed = []
        oid, kind, tid = option
        obj = self.objects[oid]
        task = self.tasks[tid]
        if kind == "start":
            obj.ready.remove(tid)
            obj.active = tid
            task.status = ACTIVE
            self._activate(task)
        else:
            if obj.active == tid:
                task.status = ACTIVE
            else:
                obj.resumable.remove(tid)
                obj.active = tid
                task.status = ACTIVE
        try:
            self._run_segment(task)
        finally:
            self.script = None

    def _activate(self, task: Task) -> None:
        if task.started:
            return
        task.started = True
        if isinstance(task.method, Block):  # the main block
            task.frames = [["b", task.method.stmts, 0]]
            return
        names = [p[0] for p in task.method.params]
        task.env = dict(zip(names, task.args))
        task.frames = [["b", task.method.body.stmts, 0]]

    # ---------------------------------------------------------- segments

    def _run_segment(self, task: Task) -> None:
        while True:
            stmt = self._fetch(task)
            if stmt is None:
                self._finish(task, None)
                return
            action, payload = self._dispatch(task, stmt)
            if action == _NEXT:
                self._advance(task)
                continue
            if action == _CONTINUE:
                continue
            if action == _YIELD_AFTER:
                self._advance(task)
                return
            if action == _YIELD_STAY:
                return
            if action == _END:
                self._finish(task, payload)
                return
            raise AssertionError(action)

    def _fetch(self, task: Task):
        """Current statement, resolving loop frames; None when the body is
        exhausted. Loop conditions are evaluated here (pure except for
        random draws, so a NeedRandom leaves the frames untouched)."""
        while task.frames:
            frame = task.frames[-1]
            if frame[0] == "b":
                _, stmts, idx = frame
                if idx < len(stmts):
                    return stmts[idx]
                task.frames.pop()
                continue
            # while frame: re-test the condition
            loop: WhileStmt = frame[1]
            cond = self._truth(self._eval(loop.cond, task), loop.span)
            if cond:
                task.frames.append(["b", loop.body.stmts, 0])
                continue
            task.frames.pop()
        return None

    def _advance(self, task: Task) -> None:
        frame = task.frames[-1]
        assert frame[0] == "b"
        frame[2] += 1

    # ---------------------------------------------------------- statements

    def _dispatch(self, task: Task, stmt) -> tuple[str, object]:
        if isinstance(stmt, VarDecl):
            if stmt.init is None:
                task.env[stmt.name] = UNSET
                return _NEXT, None
            return self._bind(task, stmt.name, stmt.init, stmt, declare=True)
        if isinstance(stmt, Assign):
            return self._bind(task, stmt.name, stmt.value, stmt, declare=False)
        if isinstance(stmt, AwaitStmt):
            fut = self._future_of(task, stmt.fut, stmt.span)
            task.status = AWAITING
            task.await_fut = fut.fid
            self._advance(task)
            obj = self.objects[task.oid]
            obj.active = None
            if self.futures[fut.fid] is not UNSET:
                task.status = RESUMABLE
                task.await_fut = None
                obj.resumable.append(task.tid)
            return _YIELD_STAY, None  # advanced above; resumes after the await
        if isinstance(stmt, IfStmt):
            cond = self._truth(self._eval(stmt.cond, task), stmt.span)
            self._advance(task)
            branch = stmt.then_block if cond else stmt.else_block
            if branch is not None:
                task.frames.append(["b", branch.stmts, 0])
            return _CONTINUE, None
        if isinstance(stmt, WhileStmt):
            self._advance(task)
            task.frames.append(["w", stmt])
            return _CONTINUE, None
        if isinstance(stmt, CostStmt):
            amount = self._int_value(self._eval(stmt.amount, task), stmt.span, "cost duration")
            if amount < 0:
                raise ModelRuntimeError("cost duration must be non-negative", stmt.span.line)
            if amount == 0:
                return _NEXT, None
            self.total_cost_work += amount
            task.status = WORKING
            task.working_until = self.clock + amount
            return _YIELD_AFTER, None
        if isinstance(stmt, ReleaseStmt):
            self._release(task, stmt)
            return _NEXT, None
        if isinstance(stmt, ReturnStmt):
            return _END, self._eval(stmt.value, task)
        raise ModelRuntimeError(f"cannot execute {type(stmt).__name__}", stmt.span.line)

    def _bind(self, task: Task, name: str, value: Expr, stmt, declare: bool) -> tuple[str, object]:
        span = stmt.span
        if isinstance(value, AsyncCall):
            fut = self._spawn(task, value)
            self._store(task, name, fut, declare)
            return _NEXT, None
        if isinstance(value, NewObject):
            obj = self._new_object(task, value)
            self._store(task, name, obj, declare)
            return _NEXT, None
        if isinstance(value, GetValue):
            fut = self._future_of(task, value.fut, span)
            cell = self.futures[fut.fid]
            if cell is UNSET:
                task.status = GETBLOCKED
                task.await_fut = fut.fid
                return _YIELD_STAY, None
            task.await_fut = None
            self._store(task, name, cell, declare)
            return _NEXT, None
        if isinstance(value, HoldCall):
            result = self._hold(task, value)
            if result is None:
                return _YIELD_STAY, None
            self._store(task, name, result, declare)
            return _NEXT, None
        self._store(task, name, self._eval(value, task), declare)
        return _NEXT, None

    def _store(self, task: Task, name: str, value, declare: bool) -> None:
        if declare or name in task.env:
            task.env[name] = value
            return
        fields = self.objects[task.oid].fields
        if name in fields:
            fields[name] = value
            return
        task.env[name] = value

    # ---------------------------------------------------------- calls

    def _spawn(self, task: Task, call: AsyncCall) -> FutV:
        args = tuple(self._eval(a, task) for a in call.args)
        deadline = self._int_value(self._eval(call.deadline, task), call.span, "deadline")
        dep_futs = []
        for fname in call.after_futs:
            dep_futs.append(self._future_of(task, fname, call.span))
        callee = args[0]
        if not isinstance(callee, ObjV):
            raise ModelRuntimeError(f"callee of '{call.method}' is not an object", call.span.line)
        obj = self.objects[callee.oid]
        method = self._methods.get(obj.class_name, {}).get(call.method)
        if method is None:
            raise ModelRuntimeError(
                f"class '{obj.class_name}' has no method '{call.method}'", call.span.line)
        task.child_count += 1
        tid = f"{task.tid}.{task.child_count}"
        fid = tid
        child = Task(tid, method, callee.oid, fid, args[1:], (call.method, call.span.line), deadline)
        child.issue_time = self.clock
        child.deps = {f.fid for f in dep_futs if self.futures[f.fid] is UNSET}
        self.futures[fid] = UNSET
        self.tasks[tid] = child
        if self.deadline_anchor == "issue":
            child.deadline_abs = self.clock + deadline
        if not child.deps:
            self._enable(child)
        return FutV(fid)

    def _enable(self, task: Task) -> None:
        task.enable_time = self.clock
        if task.deadline_abs is None:
            task.deadline_abs = self.clock + (task.dl_value or 0)
        task.status = READY
        self.objects[task.oid].ready.append(task.tid)

    def _new_object(self, task: Task, new: NewObject) -> ObjV:
        cls = self._classes.get(new.class_name)
        if cls is None:
            raise ModelRuntimeError(f"unknown class '{new.class_name}'", new.span.line)
        fields: dict[str, object] = {}
        holder = Task("<init>", cls, "", None, (), None, None)  # env carrier for field inits
        holder.env = fields
        for f in cls.fields:
            fields[f.name] = self._eval(f.init, holder) if f.init is not None else UNSET
        task.child_count += 1
        oid = f"{task.tid}:o{task.child_count}"
        obj = ObjState(oid, cls.name, fields)
        self.objects[oid] = obj
        self.object_order.append(oid)
        return ObjV(oid)

    def _finish(self, task: Task, value) -> None:
        task.status = DONE
        obj = self.objects[task.oid]
        if obj.active == task.tid:
            obj.active = None
        if task.deadline_abs is not None and self.clock > task.deadline_abs:
            key = task.call_site or (task.method_name, 0)
            self.violations[key] = self.violations.get(key, 0) + 1
        if task.fid is not None:
            self._resolve(task.fid, value)
        if task.tid == "t0":
            self.done = True

    def _resolve(self, fid: str, value) -> None:
        self.futures[fid] = value
        for t in self.tasks.values():
            if t.status == AWAITING and t.await_fut == fid:
                t.status = RESUMABLE
                t.await_fut = None
                self.objects[t.oid].resumable.append(t.tid)
            elif t.status == GETBLOCKED and t.await_fut == fid:
                t.status = RESUMABLE
            elif t.status == PENDING and fid in t.deps:
                t.deps.discard(fid)
                if not t.deps:
                    self._enable(t)

    # ---------------------------------------------------------- resources

    def _request_units(self, value, span) -> tuple[RequestUnit, ...]:
        if not isinstance(value, ListV):
            raise ModelRuntimeError("hold() needs a list of constraint sets", span.line)
        units = []
        for item in value.items:
            if not isinstance(item, RequestUnit):
                raise ModelRuntimeError("hold() list items must be set[ResEfficiency(n), Category]", span.line)
            units.append(item)
        return tuple(units)

    def _hold(self, task: Task, call: HoldCall):
        if task.wake_value is not None:
            value = task.wake_value
            task.wake_value = None
            task.blocked_units = None
            return value
        units = self._request_units(self._eval(call.request, task), call.span)
        free = [d for d in self.pool if d.available and d.rid not in self.holder]
        rids = match_units(list(units), free)
        if rids is not None:
            return self._acquire(task, units, rids)
        whole = match_units(list(units), list(self.pool))
        if whole is None:
            raise UnsatisfiableHoldError(
                f"hold in '{task.method_name}' can never be satisfied: no resources in the "
                f"declared pool match the request", call.span.line)
        task.status = HOLDBLOCKED
        task.blocked_units = units
        self.blocked.append(task.tid)
        obj = self.objects[task.oid]
        if obj.active == task.tid:
            obj.active = None
        return None

    def _acquire(self, task: Task, units, rids: list[int]) -> PairV:
        total = 0
        for rid in rids:
            self.holder[rid] = task.tid
            d = self._by_rid[rid]
            total += d.cost_per_unit
            self.held[d.category] += 1
            if self.held[d.category] > self.peaks[d.category]:
                self.peaks[d.category] = self.held[d.category]
        return PairV(ListV(tuple(rids)), total)

    def _release(self, task: Task, stmt: ReleaseStmt) -> None:
        value = self._eval(stmt.value, task)
        if not isinstance(value, PairV) or not isinstance(value.fst, ListV):
            raise ModelRuntimeError("release() needs a Pair(list of ids, amount)", stmt.span.line)
        amount = self._int_value(value.snd, stmt.span, "release amount")
        if amount < 0:
            raise ModelRuntimeError("release amount must be non-negative", stmt.span.line)
        for rid in value.fst.items:
            if not isinstance(rid, int) or rid not in self.holder:
                raise ModelRuntimeError(f"release of resource {rid!r} that is not held", stmt.span.line)
            del self.holder[rid]
            self.held[self._by_rid[rid].category] -= 1
        self.financial_cost += amount
        self._retry_blocked()

    def _retry_blocked(self) -> None:
        """Wake hold-blocked tasks in FIFO order; each successful match
        acquires its resources at this instant."""
        still: list[str] = []
        for tid in self.blocked:
            task = self.tasks[tid]
            units = task.blocked_units or ()
            free = [d for d in self.pool if d.available and d.rid not in self.holder]
            rids = match_units(list(units), free)
            if rids is None:
                still.append(tid)
                continue
            task.wake_value = self._acquire(task, units, rids)
            task.status = RESUMABLE
            self.objects[task.oid].resumable.append(tid)
        self.blocked = still

    # ---------------------------------------------------------- expressions

    def _future_of(self, task: Task, name: str, span) -> FutV:
        value = self._lookup(task, name, span)
        if not isinstance(value, FutV):
            raise ModelRuntimeError(f"'{name}' does not hold a future", span.line)
        return value

    def _lookup(self, task: Task, name: str, span):
        if name in task.env:
            value = task.env[name]
        else:
            fields = self.objects[task.oid].fields if task.oid in self.objects else {}
            if name not in fields:
                raise ModelRuntimeError(f"undeclared variable '{name}'", span.line)
            value = fields[name]
        if value is UNSET:
            raise ModelRuntimeError(f"variable '{name}' read before assignment", span.line)
        return value

    def _truth(self, value, span) -> bool:
        if isinstance(value, bool):
            return value
        raise ModelRuntimeError("condition did not evaluate to a boolean", span.line)

    def _int_value(self, value, span, what: str) -> int:
        value = _num(value)
        if isinstance(value, bool) or not isinstance(value, int):
            raise ModelRuntimeError(f"{what} must be an integer, got {value!r}", span.line)
        return value

    def _eval(self, expr: Expr, task: Task):
        if isinstance(expr, IntLit):
            return expr.value
        if isinstance(expr, VarRead):
            return self._lookup(task, expr.name, expr.span)
        if isinstance(expr, NilLit):
            return NIL
        if isinstance(expr, Unary):
            v = self._eval(expr.operand, task)
            if expr.op == "!":
                return not self._truth(v, expr.span)
            return _num(-self._as_number(v, expr.span))
        if isinstance(expr, Binary):
            return self._binary(expr, task)
        if isinstance(expr, Call):
            return self._call(expr, task)
        if isinstance(expr, ListLit):
            return ListV(tuple(self._eval(i, task) for i in expr.items))
        if isinstance(expr, SetLit):
            return self._constraint_set(expr, task)
        raise ModelRuntimeError(f"cannot evaluate {type(expr).__name__} here", expr.span.line)

    def _as_number(self, value, span):
        value = _num(value)
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise ModelRuntimeError(f"expected a number, got {value!r}", span.line)
        return value

    def _binary(self, expr: Binary, task: Task):
        op = expr.op
        if op in ("&&", "||"):
            left = self._truth(self._eval(expr.left, task), expr.span)
            if op == "&&":
                return left and self._truth(self._eval(expr.right, task), expr.span)
            return left or self._truth(self._eval(expr.right, task), expr.span)
        left = self._eval(expr.left, task)
        right = self._eval(expr.right, task)
        if op == "==":
            return left == right
        if op == "!=":
            return left != right
        a = self._as_number(left, expr.span)
        b = self._as_number(right, expr.span)
        if op == "+":
            return _num(a + b)
        if op == "-":
            return _num(a - b)
        if op == "*":
            return _num(a * b)
        if op == "/":
            if b == 0:
                raise ModelRuntimeError("division by zero", expr.span.line)
            return _num(Fraction(a) / Fraction(b))
        if op == "<":
            return a < b
        if op == "<=":
            return a <= b
        if op == ">":
            return a > b
        if op == ">=":
            return a >= b
        raise AssertionError(op)

    def _call(self, expr: Call, task: Task):
        name = expr.func
        if name == "random":
            n = self._int_value(self._eval(expr.args[0], task), expr.span, "random bound")
            if n < 0:
                raise ModelRuntimeError("random() needs a non-negative bound", expr.span.line)
            return self._draw(n)
        if name == "truncate":
            v = self._as_number(self._eval(expr.args[0], task), expr.span)
            return int(v)  # int() truncates toward zero
        if name == "Pair":
            return PairV(self._eval(expr.args[0], task), self._eval(expr.args[1], task))
        if name == "fst":
            v = self._eval(expr.args[0], task)
            if not isinstance(v, PairV):
                raise ModelRuntimeError("fst() needs a pair", expr.span.line)
            return v.fst
        if name == "snd":
            v = self._eval(expr.args[0], task)
            if not isinstance(v, PairV):
                raise ModelRuntimeError("snd() needs a pair", expr.span.line)
            return v.snd
        if name == "appendright":
            lst = self._list_value(self._eval(expr.args[0], task), expr.span)
            return ListV(lst.items + (self._eval(expr.args[1], task),))
        if name == "head":
            lst = self._list_value(self._eval(expr.args[0], task), expr.span)
            if not lst.items:
                raise ModelRuntimeError("head of empty list", expr.span.line)
            return lst.items[0]
        if name == "tail":
            lst = self._list_value(self._eval(expr.args[0], task), expr.span)
            if not lst.items:
                raise ModelRuntimeError("tail of empty list", expr.span.line)
            return ListV(lst.items[1:])
        if name == "isEmpty":
            lst = self._list_value(self._eval(expr.args[0], task), expr.span)
            return not lst.items
        if name == "ResEfficiency":
            raise ModelRuntimeError("ResEfficiency(..) is only meaningful inside set[..]", expr.span.line)
        raise ModelRuntimeError(f"unknown function '{name}'", expr.span.line)

    def _list_value(self, value, span) -> ListV:
        if not isinstance(value, ListV):
            raise ModelRuntimeError("expected a list", span.line)
        return value

    def _constraint_set(self, expr: SetLit, task: Task) -> RequestUnit:
        min_eff: int | None = None
        category: str | None = None
        for item in expr.items:
            if isinstance(item, Call) and item.func == "ResEfficiency":
                if min_eff is not None:
                    raise ModelRuntimeError("constraint set has two efficiency constraints", expr.span.line)
                min_eff = self._int_value(self._eval(item.args[0], task), expr.span, "efficiency constraint")
            elif isinstance(item, VarRead):
                if category is not None:
                    raise ModelRuntimeError("constraint set has two categories", expr.span.line)
                category = item.name
            else:
                raise ModelRuntimeError("constraint set items must be ResEfficiency(n) or a category", expr.span.line)
        if min_eff is None or category is None:
            raise ModelRuntimeError(
                "constraint set needs exactly one ResEfficiency(n) and one category", expr.span.line)
        return RequestUnit(min_eff, category)

    # ---------------------------------------------------------- fingerprint

    def _node_uid(self, node) -> int:
        key = id(node)
        uid = self._uid.get(key)
        if uid is None:
            uid = len(self._uid)
            self._uid[key] = uid
        return uid

    def fingerprint(self) -> bytes:
        """Clock-free digest of the configuration; states equal up to a time
        shift (and accumulated metrics) collapse to the same key."""
        tasks = []
        for tid in sorted(self.tasks):
            t = self.tasks[tid]
            if t.status == DONE:
                continue
            frames = tuple(
                ("b", self._node_uid(f[1]), f[2]) if f[0] == "b" else ("w", self._node_uid(f[1]))
                for f in t.frames
            )
            env = tuple(sorted(t.env.items(), key=lambda kv: kv[0]))
            remaining = (t.working_until - self.clock) if t.status == WORKING else None
            tasks.append((tid, t.method_name, t.oid, t.status, frames, repr(env),
                          repr(t.wake_value), tuple(sorted(t.deps)), t.await_fut,
                          repr(t.blocked_units), remaining, t.started, t.child_count))
        objects = []
        for oid in self.object_order:
            o = self.objects[oid]
            fields = tuple(sorted(o.fields.items(), key=lambda kv: kv[0]))
            objects.append((oid, o.class_name, repr(fields), o.active,
                            tuple(o.resumable), tuple(o.ready)))
        futures = tuple(sorted((fid, repr(v)) for fid, v in self.futures.items()))
        holders = tuple(sorted(self.holder.items()))
        payload = repr((tasks, objects, futures, holders, tuple(self.blocked), self.done))
        return hashlib.blake2b(payload.encode(), digest_size=16).digest()

    # ---------------------------------------------------------- peak window

    def reset_peak_window(self) -> None:
        """Restart peak tracking from the currently-held counts."""
        self.peaks = dict(self.held)

    def leftover_holds(self) -> tuple[int, ...]:
        return tuple(sorted(self.holder))
