"""Abstract syntax of FWHILE, the WHILE language extended with ``fork``.

Arithmetic is three-address: a binary node only ever has literal operands,
so a nontrivial expression is identified by its ``(op, left, right)``
triple. :class:`BinOp` is frozen and hashable, and serves directly as the
expression identity used by the analyses (``ExprId``).

Statements carry a ``node_id`` that is unique within a program. Node ids
and source spans are excluded from equality, so two trees compare equal
when they are structurally identical.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

RESERVED = frozenset({"skip", "if", "then", "else", "while", "do", "fork"})
IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

ARITH_OPS = ("+", "-", "*")
COMPARE_OPS = ("=", "<=", "<")


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not IDENT_RE.match(self.name) or self.name in RESERVED:
            raise ValueError(f"invalid variable name {self.name!r}")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    value: int

    def __str__(self):
        return str(self.value)


Literal = Union[Var, Const]


@dataclass(frozen=True)
class BinOp:
    op: str
    left: Literal
    right: Literal

    def __post_init__(self):
        if self.op not in ARITH_OPS:
            raise ValueError(f"unknown arithmetic operator {self.op!r}")
        if not isinstance(self.left, (Var, Const)) or not isinstance(self.right, (Var, Const)):
            raise TypeError("operands of a binary expression must be literals")

    def __str__(self):
        return f"{self.left} {self.op} {self.right}"

    @property
    def key(self) -> str:
        """Compact rendering used as a JSON key, e.g. ``a+b``."""
        return f"{self.left}{self.op}{self.right}"


@dataclass(frozen=True)
class Compare:
    op: str
    left: Literal
    right: Literal

    def __post_init__(self):
        if self.op not in COMPARE_OPS:
            raise ValueError(f"unknown comparison operator {self.op!r}")

    def __str__(self):
        return f"{self.left} {self.op} {self.right}"


AExpr = Union[Var, Const, BinOp]
BExpr = Compare
ExprId = BinOp


# Statements. ``node_id`` and ``span`` never take part in comparisons.

@dataclass(frozen=True)
class Assign:
    target: str
    expr: AExpr
    node_id: int = field(default=-1, compare=False)
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Skip:
    node_id: int = field(default=-1, compare=False)
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Seq:
    first: "Stmt"
    second: "Stmt"
    node_id: int = field(default=-1, compare=False)
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class If:
    cond: Compare
    then: "Stmt"
    orelse: "Stmt"
    node_id: int = field(default=-1, compare=False)
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class While:
    cond: Compare
    body: "Stmt"
    node_id: int = field(default=-1, compare=False)
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Fork:
    threads: tuple
    node_id: int = field(default=-1, compare=False)
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not self.threads:
            raise ValueError("fork needs at least one thread")
        object.__setattr__(self, "threads", tuple(self.threads))


Stmt = Union[Assign, Skip, Seq, If, While, Fork]


@dataclass(frozen=True)
class Program:
    """A whole FWHILE program: a root statement plus a node-id index."""

    body: Stmt

    def __post_init__(self):
        nodes = {}
        for node in iter_stmts(self.body):
            if node.node_id in nodes:
                raise ValueError(f"duplicate node id {node.node_id}")
            nodes[node.node_id] = node
        object.__setattr__(self, "_nodes", nodes)

    @property
    def nodes(self) -> dict:
        return self._nodes

    def node(self, node_id: int) -> Stmt:
        return self._nodes[node_id]


def children(s: Stmt) -> tuple:
    if isinstance(s, Seq):
        return (s.first, s.second)
    if isinstance(s, If):
        return (s.then, s.orelse)
    if isinstance(s, While):
        return (s.body,)
    if isinstance(s, Fork):
        return s.threads
    return ()


def iter_stmts(s: Stmt) -> Iterator[Stmt]:
    """Pre-order walk over every statement node."""
    stack = [s]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def _literal_vars(lit) -> set:
    return {lit.name} if isinstance(lit, Var) else set()


def free_vars(e) -> frozenset:
    """Variable names occurring in an arithmetic or boolean expression."""
    if isinstance(e, Var):
        return frozenset({e.name})
    if isinstance(e, Const):
        return frozenset()
    return frozenset(_literal_vars(e.left) | _literal_vars(e.right))


def eval_set(a: AExpr) -> frozenset:
    """``{a}`` for a nontrivial expression, empty for a literal."""
    return frozenset({a}) if isinstance(a, BinOp) else frozenset()


def nontrivial_exprs(p) -> tuple:
    """The expression universe of a program, in order of first occurrence."""
    body = p.body if isinstance(p, Program) else p
    seen = {}
    for node in iter_stmts(body):
        if isinstance(node, Assign) and isinstance(node.expr, BinOp):
            seen.setdefault(node.expr, None)
    return tuple(seen)


def assigned_vars(s: Stmt) -> frozenset:
    """Every left-hand side assigned anywhere inside ``s``."""
    return frozenset(n.target for n in iter_stmts(s) if isinstance(n, Assign))


def program_vars(p) -> frozenset:
    """All variable names read or written by a program."""
    body = p.body if isinstance(p, Program) else p
    names = set()
    for node in iter_stmts(body):
        if isinstance(node, Assign):
            names.add(node.target)
            names |= free_vars(node.expr)
        elif isinstance(node, (If, While)):
            names |= free_vars(node.cond)
    return frozenset(names)


def make_seq(*stmts: Stmt) -> Stmt:
    """Right-associated sequence of ``stmts``, flattening nested sequences.

    Keeping sequences right-associated means the printed form reparses to
    the same tree.
    """
    flat = []
    for s in stmts:
        flat.extend(flatten_seq(s))
    if not flat:
        return Skip()
    result = flat[-1]
    for s in reversed(flat[:-1]):
        result = Seq(s, result)
    return result


def flatten_seq(s: Stmt) -> list:
    if isinstance(s, Seq):
        return flatten_seq(s.first) + flatten_seq(s.second)
    return [s]


def renumber(s: Stmt, start: int = 1) -> Program:
    """Rebuild ``s`` with fresh pre-order node ids (spans are kept)."""
    counter = [start]

    def fresh():
        n = counter[0]
        counter[0] += 1
        return n

    def go(node):
        nid = fresh()
        if isinstance(node, Assign):
            return Assign(node.target, node.expr, nid, node.span)
        if isinstance(node, Skip):
            return Skip(nid, node.span)
        if isinstance(node, Seq):
            return Seq(go(node.first), go(node.second), nid, node.span)
        if isinstance(node, If):
            return If(node.cond, go(node.then), go(node.orelse), nid, node.span)
        if isinstance(node, While):
            return While(node.cond, go(node.body), nid, node.span)
        if isinstance(node, Fork):
            return Fork(tuple(go(t) for t in node.threads), nid, node.span)
        raise TypeError(f"not a statement: {node!r}")

    return Program(go(s))


def forks(p) -> list:
    """Fork nodes of a program in pre-order."""
    body = p.body if isinstance(p, Program) else p
    return [n for n in iter_stmts(body) if isinstance(n, Fork)]


def count_stmts(s: Stmt) -> int:
    """Statement count, not counting the ``;`` glue nodes."""
    return sum(1 for n in iter_stmts(s) if not isinstance(n, Seq))
