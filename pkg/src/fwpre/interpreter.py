"""Big-step interpreter for FWHILE.

Threads of a ``fork`` run atomically and one after another, in the order
fixed by a :class:`Schedule`. Integers are Python ints, so arithmetic is
exact. Reading an unbound variable is an error, never a silent zero.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from .syntax import Assign, BinOp, Compare, Const, Fork, If, Program, Seq, Skip, Var, While, forks

DEFAULT_FUEL = 10_000
MAX_THREADS = 4
MAX_FORKS = 3


class RunError(Exception):
    kind = "RunError"

    def to_json(self) -> dict:
        return {"kind": self.kind}


class UnboundVariable(RunError):
    kind = "UnboundVariable"

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unbound variable {name!r}")

    def to_json(self):
        return {"kind": self.kind, "name": self.name}


class FuelExhausted(RunError):
    kind = "FuelExhausted"

    def __init__(self, node_id: int):
        self.node_id = node_id
        super().__init__(f"fuel exhausted at node {node_id}")

    def to_json(self):
        return {"kind": self.kind, "node": self.node_id}


class ScheduleBoundError(ValueError):
    """Too many forks or threads to enumerate every schedule."""

    def __init__(self, message: str, node_id: int):
        self.node_id = node_id
        super().__init__(message)


@dataclass(frozen=True)
class Schedule:
    """Thread order for each fork, keyed by fork node id.

    Orders are 0-based tuples of thread indices. Forks missing from the
    map run their threads left to right.
    """

    orders: Mapping[int, tuple] = field(default_factory=dict)

    def order(self, fork: Fork) -> tuple:
        order = self.orders.get(fork.node_id)
        n = len(fork.threads)
        if order is None:
            return tuple(range(n))
        if sorted(order) != list(range(n)):
            raise ValueError(f"order {order} is not a permutation of the {n} threads of fork {fork.node_id}")
        return tuple(order)

    def __str__(self):
        return ",".join(
            f"{fid}:{','.join(str(i + 1) for i in order)}" for fid, order in sorted(self.orders.items())
        )


IDENTITY = Schedule()


@dataclass
class RunResult:
    state: dict
    eval_count: Counter
    step_count: int

    def to_json(self) -> dict:
        return {
            "state": dict(sorted(self.state.items())),
            "evalCount": {e.key: n for e, n in sorted(self.eval_count.items(), key=lambda kv: kv[0].key)},
            "stepCount": self.step_count,
        }


def _lit(lit, state):
    if isinstance(lit, Const):
        return lit.value
    try:
        return state[lit.name]
    except KeyError:
        raise UnboundVariable(lit.name) from None


_ARITH = {"+": lambda x, y: x + y, "-": lambda x, y: x - y, "*": lambda x, y: x * y}
_COMPARE = {"=": lambda x, y: x == y, "<=": lambda x, y: x <= y, "<": lambda x, y: x < y}


def eval_aexpr(a, state: Mapping[str, int]) -> int:
    if isinstance(a, BinOp):
        return _ARITH[a.op](_lit(a.left, state), _lit(a.right, state))
    return _lit(a, state)


def eval_bexpr(b: Compare, state: Mapping[str, int]) -> bool:
    return _COMPARE[b.op](_lit(b.left, state), _lit(b.right, state))


Tracer = Callable[[object, str, dict], None]


class _Machine:
    def __init__(self, schedule: Schedule, fuel: int, trace: Optional[Tracer]):
        self.schedule = schedule
        self.fuel = fuel
        self.trace = trace
        self.evals = Counter()
        self.steps = 0

    def tick(self, node):
        if self.steps >= self.fuel:
            raise FuelExhausted(node.node_id)
        self.steps += 1

    def exec(self, s, state):
        trace = self.trace
        if trace:
            trace(s, "pre", state)
        if isinstance(s, Seq):
            self.exec(s.first, state)
            self.exec(s.second, state)
        elif isinstance(s, Assign):
            self.tick(s)
            value = eval_aexpr(s.expr, state)
            if isinstance(s.expr, BinOp):
                self.evals[s.expr] += 1
            state[s.target] = value
        elif isinstance(s, Skip):
            self.tick(s)
        elif isinstance(s, If):
            self.tick(s)
            self.exec(s.then if eval_bexpr(s.cond, state) else s.orelse, state)
        elif isinstance(s, While):
            while True:
                self.tick(s)
                if not eval_bexpr(s.cond, state):
                    break
                self.exec(s.body, state)
        elif isinstance(s, Fork):
            self.tick(s)
            for i in self.schedule.order(s):
                self.exec(s.threads[i], state)
        else:
            raise TypeError(f"not a statement: {s!r}")
        if trace:
            trace(s, "post", state)


def run(
    p,
    state: Mapping[str, int],
    schedule: Schedule = IDENTITY,
    fuel: int = DEFAULT_FUEL,
    trace: Optional[Tracer] = None,
) -> RunResult:
    """Execute ``p`` from ``state``; the input mapping is not modified.

    ``fuel`` bounds the number of executed statements (each assignment,
    skip, branch test, loop test and fork entry costs one). ``trace``, if
    given, is called with ``(node, "pre" | "post", state)`` around every
    statement; it must not mutate the state.

    Raises :class:`UnboundVariable` or :class:`FuelExhausted`.
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    body = p.body if isinstance(p, Program) else p
    machine = _Machine(schedule, fuel, trace)
    final = dict(state)
    machine.exec(body, final)
    return RunResult(final, machine.evals, machine.steps)


def all_schedules(p, max_threads: int = MAX_THREADS, max_forks: int = MAX_FORKS) -> list:
    """Every combination of thread orders over the program's forks."""
    fs = forks(p)
    if len(fs) > max_forks:
        raise ScheduleBoundError(f"{len(fs)} forks exceed the bound of {max_forks}", fs[max_forks].node_id)
    for f in fs:
        if len(f.threads) > max_threads:
            raise ScheduleBoundError(
                f"fork {f.node_id} has {len(f.threads)} threads, bound is {max_threads}", f.node_id
            )
    per_fork = [list(itertools.permutations(range(len(f.threads)))) for f in fs]
    ids = [f.node_id for f in fs]
    return [Schedule(dict(zip(ids, combo))) for combo in itertools.product(*per_fork)]


def schedule_count(p) -> int:
    return math.prod(math.factorial(len(f.threads)) for f in forks(p))


def parse_schedule(spec: str) -> Schedule:
    """Parse ``"7:2,1"`` style text (1-based thread numbers) into a Schedule.

    Several forks may be listed, e.g. ``"7:2,1,12:3,1,2"``; a token holding
    ``:`` starts a new fork entry.
    """
    orders = {}
    current = None
    for token in spec.replace(";", ",").split(","):
        token = token.strip()
        if not token:
            continue
        if ":" in token:
            fid, first = token.split(":", 1)
            current = int(fid)
            orders[current] = [int(first) - 1]
        elif current is None:
            raise ValueError(f"schedule entry {token!r} has no fork id")
        else:
            orders[current].append(int(token) - 1)
    for fid, order in orders.items():
        if sorted(order) != list(range(len(order))):
            raise ValueError(f"order for fork {fid} is not a permutation of 1..{len(order)}")
    return Schedule({k: tuple(v) for k, v in orders.items()})
