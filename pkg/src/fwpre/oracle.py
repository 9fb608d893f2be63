"""Brute-force reference for ant and cpav on loop-free programs.

Every execution order of a loop-free program is enumerated explicitly:
both arms of every ``if`` and every permutation of every fork's threads.
Each order becomes a flat :class:`Path` of events, and the two properties
are read straight off the paths:

* ant at a point: on every path through it, the expression is evaluated
  before any of its operands is assigned.
* cpav at a point: on some path to it the expression was evaluated, none
  of its operands assigned since, and it stayed anticipated at every point
  in between.

Concurrency is accounted for the same way as in the analyses. Inside a
thread, expressions whose operands a sibling may assign are blacklisted:
their evaluations there do not count, and they are removed from the
result at points in the thread. For availability at a point inside a
thread only orders where that thread runs first are considered, since a
thread never relies on values its siblings computed.

The blacklist is recomputed here from the syntax, independently of
:mod:`fwpre.modified`. This module is exponential by design.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

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
)

MAX_PATHS = 200_000


class Point(NamedTuple):
    node_id: int
    where: str  # "pre" | "post"


class Eval(NamedTuple):
    expr: BinOp
    node_id: int


class Kill(NamedTuple):
    var: str


class Barrier(NamedTuple):
    fork_id: int


@dataclass(frozen=True)
class Path:
    events: tuple
    orders: tuple  # ((fork id, thread order), ...)

    def order(self, fork_id):
        for fid, order in self.orders:
            if fid == fork_id:
                return order
        return None


class OracleBoundError(ValueError):
    pass


def _body(p):
    return p.body if isinstance(p, Program) else p


def enumerate_paths(p, max_paths: int = MAX_PATHS) -> list:
    """All resolved execution orders of a loop-free program."""
    body = _body(p)

    def go(s):
        # returns list of (events, orders)
        pre, post = (Point(s.node_id, "pre"),), (Point(s.node_id, "post"),)
        if isinstance(s, Assign):
            ev = (Eval(s.expr, s.node_id),) if isinstance(s.expr, BinOp) else ()
            return [(pre + ev + (Kill(s.target),) + post, ())]
        if isinstance(s, Skip):
            return [(pre + post, ())]
        if isinstance(s, Seq):
            out = [(pre + e1 + e2 + post, o1 + o2) for (e1, o1), (e2, o2) in itertools.product(go(s.first), go(s.second))]
        elif isinstance(s, If):
            out = [(pre + e + post, o) for e, o in go(s.then) + go(s.orelse)]
        elif isinstance(s, Fork):
            per_thread = [go(t) for t in s.threads]
            out = []
            for perm in itertools.permutations(range(len(s.threads))):
                for combo in itertools.product(*(per_thread[i] for i in perm)):
                    events = pre + tuple(ev for e, _ in combo for ev in e) + (Barrier(s.node_id),) + post
                    orders = ((s.node_id, perm),) + tuple(o for _, os in combo for o in os)
                    out.append((events, orders))
        elif isinstance(s, While):
            raise OracleBoundError(f"loop at node {s.node_id}: the path oracle only handles loop-free programs")
        else:
            raise TypeError(f"not a statement: {s!r}")
        if len(out) > max_paths:
            raise OracleBoundError(f"more than {max_paths} paths")
        return out

    return [Path(events, orders) for events, orders in go(body)]


def _universe(body):
    seen = {}

    def go(s):
        if isinstance(s, Assign) and isinstance(s.expr, BinOp):
            seen.setdefault(s.expr, None)
        for c in _kids(s):
            go(c)

    go(body)
    return tuple(seen)


def _kids(s):
    if isinstance(s, Seq):
        return [s.first, s.second]
    if isinstance(s, If):
        return [s.then, s.orelse]
    if isinstance(s, While):
        return [s.body]
    if isinstance(s, Fork):
        return list(s.threads)
    return []


def _writes(s):
    if isinstance(s, Assign):
        return {s.target}
    out = set()
    for c in _kids(s):
        out |= _writes(c)
    return out


def _operands(e):
    return {x.name for x in (e.left, e.right) if isinstance(x, Var)}


def thread_context(p):
    """For each node: the enclosing ``(fork id, thread index)`` pairs, and
    the variables written by sibling threads at any of those forks."""
    body = _body(p)
    enclosing, sibling_writes = {}, {}

    def go(s, chain, writes):
        enclosing[s.node_id] = chain
        sibling_writes[s.node_id] = writes
        if isinstance(s, Fork):
            ws = [_writes(t) for t in s.threads]
            for i, t in enumerate(s.threads):
                others = set().union(*(w for j, w in enumerate(ws) if j != i))
                go(t, chain + ((s.node_id, i),), writes | others)
        else:
            for c in _kids(s):
                go(c, chain, writes)

    go(body, (), frozenset())
    return enclosing, sibling_writes


def oracle_annotations(p) -> tuple:
    """``(ant, cpav)``, each a map from node id to ``(pre set, post set)``."""
    body = _body(p)
    universe = _universe(body)
    enclosing, sibling_writes = thread_context(body)
    blacklist = {
        nid: frozenset(e for e in universe if _operands(e) & vs) for nid, vs in sibling_writes.items()
    }
    paths = enumerate_paths(body)

    def counted(ev):
        return ev.expr not in blacklist[ev.node_id]

    def killed_by(x):
        return {e for e in universe if x in _operands(e)}

    # ant: intersection over paths of what the suffix evaluates before a kill
    ant = {}
    for path in paths:
        live = set()
        for ev in reversed(path.events):
            if isinstance(ev, Point):
                if ev in ant:
                    ant[ev] &= live
                else:
                    ant[ev] = set(live)
            elif isinstance(ev, Eval):
                if counted(ev):
                    live.add(ev.expr)
            elif isinstance(ev, Kill):
                live -= killed_by(ev.var)
    ant = {pt: frozenset(s) - blacklist[pt.node_id] for pt, s in ant.items()}

    # cpav: union over eligible paths of what is still available and gated
    cpav = {pt: set() for pt in ant}
    for path in paths:
        avail = set()
        for ev in path.events:
            if isinstance(ev, Point):
                avail &= ant[ev]
                if all(path.order(fid)[0] == i for fid, i in enclosing[ev.node_id]):
                    cpav[ev] |= avail
            elif isinstance(ev, Eval):
                if counted(ev):
                    avail.add(ev.expr)
            elif isinstance(ev, Kill):
                avail -= killed_by(ev.var)

    def by_node(table):
        out = {}
        for (nid, where), s in table.items():
            pre, post = out.get(nid, (None, None))
            if where == "pre":
                pre = frozenset(s)
            else:
                post = frozenset(s)
            out[nid] = (pre, post)
        return out

    return by_node(ant), by_node(cpav)


def oracle_ant(p, point) -> frozenset:
    """Anticipated expressions at ``point = (node id, "pre" | "post")``."""
    nid, where = point
    return oracle_annotations(p)[0][nid][0 if where == "pre" else 1]


def oracle_cpav(p, point) -> frozenset:
    """Conditionally partially available expressions at ``point``."""
    nid, where = point
    return oracle_annotations(p)[1][nid][0 if where == "pre" else 1]
