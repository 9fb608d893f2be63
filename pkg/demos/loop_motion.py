"""
Loop-invariant code motion as a special case
============================================

A loop-invariant expression is moved in front of the loop only when that
cannot add work: something after the loop must need it too. Otherwise a
loop that runs zero times would pay for an evaluation it never made.
"""

from fwpre import optimize, parse, pretty_print, run

hoistable = parse("""
i := 0;
while i < n do { x := a * 2; i := i + 1 };
y := a * 2
""")
out = optimize(hoistable)
print(pretty_print(out.program))

for n in (0, 1, 5):
    s0 = {"a": 7, "n": n}
    before = sum(run(hoistable, s0).eval_count.values())
    after = sum(run(out.program, s0).eval_count.values())
    print(f"n={n}: {before} evaluations -> {after}")

# %%
# Drop the use after the loop and nothing moves.
zero_trip = parse("i := 0; while i < n do { x := a * 2; i := i + 1 }")
print(pretty_print(optimize(zero_trip).program))

# %%
# When the body changes an operand, the temp has to be refreshed on the
# way back to the loop head.
refresh = parse("""
y := a + b;
k := 0;
while k < 3 do { x := a + b; a := a + 1; k := k + 1 };
z := a + b
""")
out = optimize(refresh)
print(pretty_print(out.program))
for r in out.rewrites:
    print(f"  node {r.node_id:>2}: {r.kind:<16} {r.expr.key}")
