"""Modified-variables analysis and the concurrently-modified map.

``modified_analysis`` is a must, forward analysis: at each point it gives
the variables assigned on every path reaching that point. Branches join
by intersection and a loop leaves its entry set unchanged, because the
body may run zero times.

``concurrent_modified`` gives, for every statement inside a fork thread,
the variables that sibling threads may assign. ``mce`` turns that into the
set of expressions that cannot be trusted inside the thread.
"""

from __future__ import annotations

from .syntax import (
    Assign,
    Fork,
    If,
    Program,
    Seq,
    Skip,
    While,
    assigned_vars,
    free_vars,
    iter_stmts,
)


def modified_analysis(p, m0=frozenset()) -> dict:
    """Map every node id to its ``(m_pre, m_post)`` pair."""
    body = p.body if isinstance(p, Program) else p
    ann = {}

    def go(s, m):
        if isinstance(s, Assign):
            out = m | {s.target}
        elif isinstance(s, Skip):
            out = m
        elif isinstance(s, Seq):
            out = go(s.second, go(s.first, m))
        elif isinstance(s, If):
            out = go(s.then, m) & go(s.orelse, m)
        elif isinstance(s, While):
            go(s.body, m)
            out = m
        elif isinstance(s, Fork):
            out = frozenset().union(*(go(t, m) for t in s.threads))
        else:
            raise TypeError(f"not a statement: {s!r}")
        ann[s.node_id] = (m, out)
        return out

    go(body, frozenset(m0))
    return ann


def sub_statements(s) -> frozenset:
    """Node ids of ``s`` and every statement nested anywhere inside it."""
    return frozenset(n.node_id for n in iter_stmts(s))


def concurrent_modified(p, ann=None) -> dict:
    """Map every node id to the variables its sibling threads may assign.

    Nested forks accumulate: a statement in an inner thread sees the
    siblings of its own thread and of every enclosing thread. Nodes outside
    all forks map to the empty set. ``ann`` is accepted for symmetry with
    the analysis pipeline; the sibling sets are the syntactic assignment
    sets, which coincide with ``m_j - m`` on fork-only threads.
    """
    body = p.body if isinstance(p, Program) else p
    conc = {}

    def go(s, inherited):
        conc[s.node_id] = inherited
        if isinstance(s, Fork):
            written = [assigned_vars(t) for t in s.threads]
            for i, t in enumerate(s.threads):
                siblings = frozenset().union(*(w for j, w in enumerate(written) if j != i))
                go(t, inherited | siblings)
        elif isinstance(s, Seq):
            go(s.first, inherited)
            go(s.second, inherited)
        elif isinstance(s, If):
            go(s.then, inherited)
            go(s.orelse, inherited)
        elif isinstance(s, While):
            go(s.body, inherited)

    go(body, frozenset())
    return conc


def mod(x: str, universe) -> frozenset:
    """Expressions in ``universe`` that mention ``x``."""
    return frozenset(e for e in universe if x in free_vars(e))


def mce(node_id: int, conc: dict, universe) -> frozenset:
    """Expressions with at least one operand assigned by a sibling thread."""
    vs = conc.get(node_id, frozenset())
    if not vs:
        return frozenset()
    return frozenset(e for e in universe if free_vars(e) & vs)
