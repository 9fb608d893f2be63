"""
Checking the optimizer against the interpreter
==============================================

Random programs, random states, every thread order: original and
optimized runs must end in the same state (temps aside), fail the same
way, and never evaluate an expression more often.
"""

import random

from fwpre import one_line, optimize, parse
from fwpre.generate import GenConfig, random_program
from fwpre.verify import verify

rng = random.Random(1)
cfg = GenConfig(max_stmts=20)
totals = [0, 0, 0]
for _ in range(100):
    p = random_program(rng, cfg)
    report = verify(p, states=10)
    assert report.passed, report.summary()
    totals[0] += report.comparisons
    totals[1] += report.eval_original
    totals[2] += report.eval_optimized
print(f"{totals[0]} comparisons, evaluations {totals[1]} -> {totals[2]}")

# %%
# A sample program and what the optimizer made of it
rng = random.Random(7)
while True:
    p = random_program(rng, GenConfig(max_stmts=12, loops=False))
    out = optimize(p)
    if len(out.rewrites) >= 3:
        break
print(one_line(p))
print(one_line(out.program))

# %%
# The checker does catch mistakes. This optimizer swaps every
# anticipated expression for its temp, whether or not the temp has been
# set yet.
import fwpre.transform as tr  # noqa: E402
from fwpre.syntax import Assign, BinOp, Var  # noqa: E402


class Careless(tr._Rewriter):
    def rw(self, s):
        if isinstance(s, Assign) and isinstance(s.expr, BinOp) and s.expr in self.ann.ant_pre(s.node_id):
            return Assign(s.target, Var(self.temp(s.expr)))
        return super().rw(s)


def careless_optimize(p, temp_prefix="t"):
    saved, tr._Rewriter = tr._Rewriter, Careless
    try:
        return optimize(p, temp_prefix)
    finally:
        tr._Rewriter = saved


bad = verify(parse("if p <= q then { x := a + b } else { skip }; y := a + b"), states=5, optimizer=careless_optimize)
print(bad.summary())
