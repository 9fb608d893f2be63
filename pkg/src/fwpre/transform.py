"""Partial redundancy elimination driven by the ant/cpav annotations.

An assignment whose expression is already available (cpav before it)
reads the expression's temp instead; one that makes the expression
available for a later use stores it in the temp first. Where paths merge
with the expression available on only some of them, the missing paths get
an explicit ``t := a`` so the temp is valid on all of them: at the end of
an ``if`` branch, in front of a loop, and at the end of a loop body for
the back edge. Threads of a fork are optimized independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .interpreter import UnboundVariable, eval_aexpr
from .pre_analysis import PreAnnotation, analyze
from .syntax import (
    Assign,
    BinOp,
    Fork,
    If,
    Program,
    Seq,
    Skip,
    Var,
    While,
    iter_stmts,
    make_seq,
    program_vars,
    renumber,
)


@dataclass(frozen=True)
class Rewrite:
    node_id: int   # node of the input program the rewrite is anchored to
    kind: str      # replace | split | branch-insert | preheader-insert | backedge-insert
    expr: BinOp

    def to_json(self):
        return {"node": self.node_id, "kind": self.kind, "expr": self.expr.key}


@dataclass
class TempTable:
    """Injective map from expressions to fresh temp variable names."""

    names: dict = field(default_factory=dict)

    def __contains__(self, name):
        return name in self.names.values()

    def __len__(self):
        return len(self.names)

    def name_of(self, e: BinOp) -> str:
        return self.names[e]

    def temp_names(self) -> frozenset:
        return frozenset(self.names.values())

    def to_json(self):
        return {e.key: name for e, name in self.names.items()}


@dataclass
class OptimizedProgram:
    program: Program
    temps: TempTable
    rewrites: list
    annotation: PreAnnotation


class _Rewriter:
    def __init__(self, ann: PreAnnotation, placeholder: str):
        self.ann = ann
        self.order = {e: i for i, e in enumerate(ann.universe)}
        self.placeholder = placeholder
        self.rewrites = []

    def temp(self, e):
        return f"{self.placeholder}{self.order[e]}"

    def store(self, e):
        return Assign(self.temp(e), e)

    def inserts(self, exprs, anchor, kind):
        ordered = sorted(exprs, key=self.order.__getitem__)
        for e in ordered:
            self.rewrites.append(Rewrite(anchor, kind, e))
        return [self.store(e) for e in ordered]

    def rw(self, s):
        ann = self.ann
        nid = s.node_id
        if isinstance(s, Assign):
            e = s.expr
            if not isinstance(e, BinOp):
                return Assign(s.target, e)
            if e in ann.cpav_pre(nid):
                self.rewrites.append(Rewrite(nid, "replace", e))
                return Assign(s.target, Var(self.temp(e)))
            if e in ann.cpav_post(nid):
                self.rewrites.append(Rewrite(nid, "split", e))
                return make_seq(self.store(e), Assign(s.target, Var(self.temp(e))))
            return Assign(s.target, e)
        if isinstance(s, Skip):
            return Skip()
        if isinstance(s, Seq):
            return make_seq(self.rw(s.first), self.rw(s.second))
        if isinstance(s, If):
            joined = ann.cpav_post(nid)
            then = self.rw(s.then)
            then = make_seq(
                then, *self.inserts(joined - ann.cpav_post(s.then.node_id), s.then.node_id, "branch-insert")
            )
            orelse = self.rw(s.orelse)
            orelse = make_seq(
                orelse, *self.inserts(joined - ann.cpav_post(s.orelse.node_id), s.orelse.node_id, "branch-insert")
            )
            return If(s.cond, then, orelse)
        if isinstance(s, While):
            head = ann.loop_head[nid]
            pre = self.inserts(head - ann.cpav_pre(nid), nid, "preheader-insert")
            body = self.rw(s.body)
            back = self.inserts(head - ann.cpav_post(s.body.node_id), s.body.node_id, "backedge-insert")
            return make_seq(*pre, While(s.cond, make_seq(body, *back)))
        if isinstance(s, Fork):
            return Fork(tuple(self.rw(t) for t in s.threads))
        raise TypeError(f"not a statement: {s!r}")


def _fresh_placeholder(taken):
    prefix = "__pre"
    while any(name.startswith(prefix) for name in taken):
        prefix += "_"
    return prefix


def optimize(p, temp_prefix: str = "t", ann: PreAnnotation = None) -> OptimizedProgram:
    """Optimize ``p``; temps are named ``t1, t2, ...`` in order of first
    appearance in the output text, skipping names already in use."""
    body = p.body if isinstance(p, Program) else p
    if ann is None:
        ann = analyze(body)
    taken = program_vars(body)
    rewriter = _Rewriter(ann, _fresh_placeholder(taken))
    out = rewriter.rw(body)

    by_placeholder = {rewriter.temp(e): e for e in ann.universe}
    renames = {}
    table = TempTable()
    counter = 0
    for node in iter_stmts(out):
        if not isinstance(node, Assign):
            continue
        for name in (node.target, getattr(node.expr, "name", None)):
            if name in by_placeholder and name not in renames:
                counter += 1
                while f"{temp_prefix}{counter}" in taken:
                    counter += 1
                renames[name] = f"{temp_prefix}{counter}"
                table.names[by_placeholder[name]] = renames[name]
    out = _rename(out, renames)
    return OptimizedProgram(renumber(out), table, rewriter.rewrites, ann)


def _rename(s, renames):
    if isinstance(s, Assign):
        expr = s.expr
        if isinstance(expr, Var) and expr.name in renames:
            expr = Var(renames[expr.name])
        return Assign(renames.get(s.target, s.target), expr)
    if isinstance(s, Seq):
        return Seq(_rename(s.first, renames), _rename(s.second, renames))
    if isinstance(s, If):
        return If(s.cond, _rename(s.then, renames), _rename(s.orelse, renames))
    if isinstance(s, While):
        return While(s.cond, _rename(s.body, renames))
    if isinstance(s, Fork):
        return Fork(tuple(_rename(t, renames) for t in s.threads))
    return s


def strip_temps(state: dict, temps: TempTable) -> dict:
    """The state restricted to variables that are not temps."""
    names = temps.temp_names()
    return {x: v for x, v in state.items() if x not in names}


def similarity(state: dict, state_star: dict, cpav, temps: TempTable) -> bool:
    """Executable reading of ``state ~cpav state_star``.

    Both states agree off the temps, and every available expression with a
    temp holds the expression's current value.
    """
    if strip_temps(state, temps) != strip_temps(state_star, temps):
        return False
    for e in cpav:
        name = temps.names.get(e)
        if name is None or name not in state_star:
            continue
        try:
            if state_star[name] != eval_aexpr(e, state):
                return False
        except UnboundVariable:
            return False
    return True
