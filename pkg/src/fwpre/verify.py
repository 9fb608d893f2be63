"""Differential check of an optimized program against its original.

For every initial state and every fork schedule both programs are run and
compared: final states must agree once temps are dropped, errors must
agree in kind, no expression may be evaluated more often after
optimization, and at each fork entry and exit the optimized state must be
similar to the original one under the annotated cpav sets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .generate import random_states
from .interpreter import DEFAULT_FUEL, RunError, Schedule, all_schedules, run
from .syntax import Fork, Program, forks
from .transform import OptimizedProgram, optimize, similarity


@dataclass
class Counterexample:
    kind: str  # state | error | evalcount | similarity
    state: dict
    schedule: Schedule
    detail: str

    def to_json(self):
        return {
            "kind": self.kind,
            "state": self.state,
            "schedule": str(self.schedule),
            "detail": self.detail,
        }


@dataclass
class VerifyReport:
    comparisons: int = 0
    counterexample: Optional[Counterexample] = None
    eval_original: int = 0
    eval_optimized: int = 0
    outcomes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        line = (
            f"{verdict}: {self.comparisons} comparisons, "
            f"nontrivial evaluations {self.eval_original} -> {self.eval_optimized}"
        )
        if self.counterexample is not None:
            cx = self.counterexample
            line += f"\ncounterexample ({cx.kind}): {cx.detail}\n  state: {cx.state}\n  schedule: {str(cx.schedule) or 'identity'}"
        return line

    def to_json(self):
        return {
            "passed": self.passed,
            "comparisons": self.comparisons,
            "evalOriginal": self.eval_original,
            "evalOptimized": self.eval_optimized,
            "outcomes": self.outcomes,
            "counterexample": None if self.counterexample is None else self.counterexample.to_json(),
        }


def translate_schedule(schedule: Schedule, source, target) -> Schedule:
    """Carry fork orders over to another program with the same forks.

    Forks are matched by their position in a pre-order walk, which the
    optimizer preserves.
    """
    src, dst = forks(source), forks(target)
    if len(src) != len(dst):
        raise ValueError("programs have different numbers of forks")
    return Schedule({d.node_id: schedule.order(s) for s, d in zip(src, dst)})


def _fork_snapshots(p, state, schedule, fuel):
    """Run ``p`` recording (fork index, pre|post, state copy) at each fork."""
    index = {f.node_id: i for i, f in enumerate(forks(p))}
    snaps = []

    def trace(node, where, st):
        if isinstance(node, Fork):
            snaps.append((index[node.node_id], where, dict(st)))

    try:
        result = run(p, state, schedule, fuel, trace)
    except RunError as err:
        return err, snaps
    return result, snaps


def compare_runs(original, opt: OptimizedProgram, state, schedule, fuel, check_similarity=True):
    """Compare one (state, schedule) pair; returns ``(counterexample, r1, r2)``."""
    body = original.body if isinstance(original, Program) else original
    opt_schedule = translate_schedule(schedule, body, opt.program)
    # inserted temp stores cost extra steps; give the optimized run headroom
    opt_fuel = fuel * (2 + len(opt.annotation.universe))
    r1, snaps1 = _fork_snapshots(body, state, schedule, fuel)
    r2, snaps2 = _fork_snapshots(opt.program, state, opt_schedule, opt_fuel)

    def cx(kind, detail):
        return Counterexample(kind, dict(state), schedule, detail)

    if isinstance(r1, RunError) or isinstance(r2, RunError):
        k1 = r1.kind if isinstance(r1, RunError) else "ok"
        k2 = r2.kind if isinstance(r2, RunError) else "ok"
        if k1 != k2:
            return cx("error", f"original ended with {k1}, optimized with {k2}"), r1, r2
        return None, r1, r2

    stripped = {x: v for x, v in r2.state.items() if x not in opt.temps.temp_names()}
    if stripped != r1.state:
        diff = sorted(x for x in set(stripped) | set(r1.state) if stripped.get(x) != r1.state.get(x))
        return cx("state", f"final states differ on {diff}: {r1.state} vs {stripped}"), r1, r2

    for e, n in r2.eval_count.items():
        if n > r1.eval_count.get(e, 0):
            return cx("evalcount", f"{e} evaluated {n} times, originally {r1.eval_count.get(e, 0)}"), r1, r2

    if check_similarity:
        fork_nodes = forks(body)
        ann = opt.annotation
        if len(snaps1) != len(snaps2):
            return cx("similarity", "fork boundaries reached a different number of times"), r1, r2
        for (i, where, s1), (_, _, s2) in zip(snaps1, snaps2):
            nid = fork_nodes[i].node_id
            avail = ann.cpav_pre(nid) if where == "pre" else ann.cpav_post(nid)
            if not similarity(s1, s2, avail, opt.temps):
                return cx("similarity", f"states not similar at {where} of fork {nid}"), r1, r2
    return None, r1, r2


def verify(
    p,
    states: int = 50,
    seed: int = 0,
    fuel: int = DEFAULT_FUEL,
    optimizer: Callable = optimize,
    lo: int = -16,
    hi: int = 16,
    check_similarity: bool = True,
) -> VerifyReport:
    """Optimize ``p`` and compare against it over random states x all schedules.

    Raises :class:`fwpre.interpreter.ScheduleBoundError` if the program has
    too many forks or threads to enumerate.
    """
    body = p.body if isinstance(p, Program) else p
    schedules = all_schedules(body)
    opt = optimizer(body)
    rng = random.Random(seed)
    report = VerifyReport()
    outcomes = report.outcomes
    for state in random_states(rng, body, states, lo, hi):
        for schedule in schedules:
            bad, r1, r2 = compare_runs(body, opt, state, schedule, fuel, check_similarity)
            report.comparisons += 1
            key = r1.kind if isinstance(r1, RunError) else "ok"
            outcomes[key] = outcomes.get(key, 0) + 1
            if not isinstance(r1, RunError):
                report.eval_original += sum(r1.eval_count.values())
            if not isinstance(r2, RunError):
                report.eval_optimized += sum(r2.eval_count.values())
            if bad is not None:
                report.counterexample = bad
                return report
    return report
