"""Random FWHILE programs and initial states for differential testing.

Loops are generated in counted form, ``k := 0; while k < N do { ...;
k := k + 1 }``, with a counter no other statement touches, so every
generated program terminates within a known number of iterations.
Right-hand sides are drawn from a small pool of expressions over a handful
of variables, which keeps redundancies frequent.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .syntax import (
    Assign,
    BinOp,
    Compare,
    Const,
    Fork,
    If,
    Skip,
    Var,
    While,
    make_seq,
    program_vars,
    renumber,
)


@dataclass(frozen=True)
class GenConfig:
    max_stmts: int = 30
    max_forks: int = 2
    max_threads: int = 3
    max_ifs: int = 6
    loops: bool = True
    max_loop_iters: int = 8
    max_loop_depth: int = 2
    variables: tuple = ("a", "b", "c", "d", "x", "y")
    constants: tuple = (0, 1, 2, 3)
    pool_size: int = 5
    loop_reuse: float = 0.5


class _Gen:
    def __init__(self, rng: random.Random, cfg: GenConfig):
        self.rng = rng
        self.cfg = cfg
        self.forks_left = cfg.max_forks
        self.ifs_left = cfg.max_ifs
        self.loop_counter = 0
        operands = [Var(v) for v in cfg.variables[:4]] + [Const(c) for c in cfg.constants]
        self.pool = []
        while len(self.pool) < cfg.pool_size:
            e = self.binop(rng.choice(operands[:4]), rng.choice(operands))
            if e not in self.pool:
                self.pool.append(e)

    def binop(self, left, right):
        # products only by constants: squaring inside nested loops would
        # grow integers without bound
        op = self.rng.choice("+-*")
        if op == "*" and not isinstance(right, Const):
            right = Const(self.rng.choice(self.cfg.constants))
        return BinOp(op, left, right)

    def literal(self):
        if self.rng.random() < 0.7:
            return Var(self.rng.choice(self.cfg.variables))
        return Const(self.rng.choice(self.cfg.constants))

    def assign(self):
        rng = self.rng
        target = rng.choice(self.cfg.variables)
        r = rng.random()
        if r < 0.7:
            expr = rng.choice(self.pool)
        elif r < 0.85:
            expr = self.binop(self.literal(), self.literal())
        else:
            expr = self.literal()
        return Assign(target, expr)

    def block(self, budget, depth):
        """A sequence using at most ``budget`` statements (at least one)."""
        stmts = []
        remaining = budget
        while remaining > 0:
            s, used = self.stmt(remaining, depth)
            stmts.append(s)
            remaining -= used
            if self.rng.random() < 0.1:
                break
        return make_seq(*stmts), budget - remaining

    def stmt(self, budget, depth):
        rng = self.rng
        cfg = self.cfg
        choices = ["assign"] * 6 + ["skip"]
        if budget >= 3 and self.ifs_left > 0:
            choices += ["if"] * 2
        if budget >= 4 and cfg.loops and depth < cfg.max_loop_depth:
            choices += ["while"]
        if budget >= 3 and self.forks_left > 0:
            choices += ["fork"] * 2
        kind = rng.choice(choices)
        if kind == "assign":
            return self.assign(), 1
        if kind == "skip":
            return Skip(), 1
        if kind == "if":
            self.ifs_left -= 1
            cond = Compare(rng.choice(("=", "<=", "<")), self.literal(), self.literal())
            inner = budget - 1
            then, u1 = self.block(max(1, inner // 2), depth)
            orelse, u2 = self.block(max(1, inner - u1), depth)
            return If(cond, then, orelse), 1 + u1 + u2
        if kind == "while":
            counter = f"k{self.loop_counter}"
            self.loop_counter += 1
            n = rng.randint(0, cfg.max_loop_iters)
            # optionally evaluate one pool expression both at the top of the
            # body and right after the loop, the shape loop-invariant motion
            # feeds on
            reuse = rng.choice(self.pool) if budget >= 6 and rng.random() < cfg.loop_reuse else None
            extra = 2 if reuse is not None else 0
            body, used = self.block(budget - 3 - extra, depth + 1)
            if reuse is not None:
                body = make_seq(Assign(rng.choice(cfg.variables), reuse), body)
            loop = While(
                Compare("<", Var(counter), Const(n)),
                make_seq(body, Assign(counter, BinOp("+", Var(counter), Const(1)))),
            )
            stmts = [Assign(counter, Const(0)), loop]
            if reuse is not None:
                stmts.append(Assign(rng.choice(cfg.variables), reuse))
            return make_seq(*stmts), used + 3 + extra
        self.forks_left -= 1
        inner = budget - 1
        n = rng.randint(2, min(cfg.max_threads, inner))
        threads, used = [], 0
        for i in range(n):
            share = max(1, (inner - used) // (n - i))
            t, u = self.block(share, depth)
            threads.append(t)
            used += u
        return Fork(tuple(threads)), 1 + used


def random_program(rng: random.Random, cfg: GenConfig = GenConfig()):
    """A random program with at most ``cfg.max_stmts`` statements."""
    gen = _Gen(rng, cfg)
    size = rng.randint(min(5, cfg.max_stmts), cfg.max_stmts)
    body, _ = gen.block(size, 0)
    return renumber(body)


def random_state(rng: random.Random, names, lo: int = -16, hi: int = 16) -> dict:
    """Uniform integers in ``[lo, hi]`` for every name, in sorted order."""
    return {x: rng.randint(lo, hi) for x in sorted(names)}


def random_states(rng: random.Random, p, n: int, lo: int = -16, hi: int = 16) -> list:
    names = program_vars(p)
    return [random_state(rng, names, lo, hi) for _ in range(n)]
