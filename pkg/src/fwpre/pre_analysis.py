"""Anticipability and conditional partial availability.

Both analyses range over the program's nontrivial expressions. Inside a
fork thread every set is filtered by the thread's ``mce`` blacklist, so an
expression whose operands a sibling may overwrite is never anticipated or
available there.

Anticipability is backward and must: joins at ``if`` intersect, loops take
the greatest fixpoint, and a fork anticipates the union of what its
threads anticipate. Conditional partial availability is forward and may,
and is intersected with anticipability at every node boundary.
"""

from __future__ import annotations

from dataclasses import dataclass

from .modified import concurrent_modified, mce
from .syntax import (
    Assign,
    Fork,
    If,
    Program,
    Seq,
    Skip,
    While,
    eval_set,
    nontrivial_exprs,
)

EMPTY = frozenset()


@dataclass(frozen=True)
class PreAnnotation:
    """Per-node ant/cpav sets plus the cpav fixpoint at each loop head."""

    universe: tuple
    ant: dict        # node id -> (ant_pre, ant_post)
    cpav: dict       # node id -> (cpav_pre, cpav_post)
    loop_head: dict  # while node id -> cpav at the loop test
    blacklist: dict  # node id -> mce(node)

    def ant_pre(self, nid):
        return self.ant[nid][0]

    def ant_post(self, nid):
        return self.ant[nid][1]

    def cpav_pre(self, nid):
        return self.cpav[nid][0]

    def cpav_post(self, nid):
        return self.cpav[nid][1]


def _context(p, conc):
    body = p.body if isinstance(p, Program) else p
    universe = nontrivial_exprs(body)
    if conc is None:
        conc = concurrent_modified(body)
    blacklist = {nid: mce(nid, conc, universe) for nid in conc}
    kills = {}
    for e in universe:
        for x in (e.left, e.right):
            name = getattr(x, "name", None)
            if name is not None:
                kills.setdefault(name, set()).add(e)
    return body, universe, blacklist, {x: frozenset(es) for x, es in kills.items()}


def anticipability(p, conc=None, ant_exit=EMPTY) -> dict:
    """Map every node id to ``(ant_pre, ant_post)``."""
    body, universe, blacklist, kills = _context(p, conc)
    return _anticipability(body, frozenset(universe), blacklist, kills, ant_exit)


def _anticipability(body, universe, blacklist, kills, ant_exit):
    ann = {}

    def go(s, post):
        bad = blacklist[s.node_id]
        post = post - bad
        if isinstance(s, Assign):
            pre = (post - kills.get(s.target, EMPTY)) | eval_set(s.expr)
        elif isinstance(s, Skip):
            pre = post
        elif isinstance(s, Seq):
            pre = go(s.first, go(s.second, post))
        elif isinstance(s, If):
            pre = go(s.then, post) & go(s.orelse, post)
        elif isinstance(s, While):
            head = universe - bad
            while True:
                new = go(s.body, head) & post
                if new == head:
                    break
                head = new
            pre = head
        elif isinstance(s, Fork):
            pre = frozenset().union(*(go(t, post) for t in s.threads))
        else:
            raise TypeError(f"not a statement: {s!r}")
        pre = pre - bad
        ann[s.node_id] = (pre, post)
        return pre

    go(body, frozenset(ant_exit))
    return ann


def cond_partial_availability(p, conc=None, ant=None, cpav_entry=EMPTY):
    """Map every node id to ``(cpav_pre, cpav_post)``.

    Returns ``(cpav, loop_head)`` where ``loop_head`` holds the fixpoint
    reached at the test of every ``while``.
    """
    body, universe, blacklist, kills = _context(p, conc)
    if ant is None:
        ant = _anticipability(body, frozenset(universe), blacklist, kills, EMPTY)
    return _cpav(body, ant, kills, cpav_entry)


def _cpav(body, ant, kills, cpav_entry):
    ann = {}
    heads = {}

    def go(s, pre):
        a_pre, a_post = ant[s.node_id]
        pre = pre & a_pre
        if isinstance(s, Assign):
            out = (pre | eval_set(s.expr)) - kills.get(s.target, EMPTY)
        elif isinstance(s, Skip):
            out = pre
        elif isinstance(s, Seq):
            out = go(s.second, go(s.first, pre))
        elif isinstance(s, If):
            out = go(s.then, pre) | go(s.orelse, pre)
        elif isinstance(s, While):
            head = pre
            while True:
                new = (pre | go(s.body, head)) & a_pre
                if new == head:
                    break
                head = new
            heads[s.node_id] = head
            out = head
        elif isinstance(s, Fork):
            # Each thread starts from the fork's entry set: values computed
            # by a sibling are never assumed, whatever the thread order.
            out = frozenset().union(*(go(t, pre) for t in s.threads))
        else:
            raise TypeError(f"not a statement: {s!r}")
        out = out & a_post
        ann[s.node_id] = (pre, out)
        return out

    go(body, frozenset(cpav_entry))
    return ann, heads


def analyze(p) -> PreAnnotation:
    """Run C, anticipability and cpav over a whole program."""
    body = p.body if isinstance(p, Program) else p
    conc = concurrent_modified(body)
    body, universe, blacklist, kills = _context(body, conc)
    ant = _anticipability(body, frozenset(universe), blacklist, kills, EMPTY)
    cpav, heads = _cpav(body, ant, kills, EMPTY)
    return PreAnnotation(universe, ant, cpav, heads, blacklist)

