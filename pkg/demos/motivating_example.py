"""
Sharing one computation across fork threads
===========================================

Two threads both compute ``a + b`` after the main thread already did.
The optimizer keeps the value in a temp and lets both threads read it.
``a - c`` is left alone: the first thread assigns ``c``, so the second
thread cannot know which value of ``c`` it will see.
"""

from pathlib import Path

from fwpre import analyze, one_line, optimize, parse, pretty_print, run
from fwpre.interpreter import all_schedules
from fwpre.verify import translate_schedule

source = (Path(__file__).resolve().parent.parent / "corpus" / "motivating.fw").read_text()
p = parse(source)
print(pretty_print(p))

# %%
# Annotations per statement. Inside the second thread a-c is blacklisted,
# so it never shows up in ant or cpav there.
ann = analyze(p)
for nid, stmt in sorted(p.nodes.items()):
    if type(stmt).__name__ == "Seq":
        continue
    ant = sorted(e.key for e in ann.ant_pre(nid))
    cpav = sorted(e.key for e in ann.cpav_pre(nid))
    print(f"{nid:>3}  ant={ant!s:<16} cpav={cpav!s:<10} {one_line(stmt)[:40]}")

# %%
# The optimized program
opt = optimize(p)
print(pretty_print(opt.program))
print("temps:", opt.temps.to_json())

# %%
# Run both under every thread order and count evaluations.
s0 = {"a": 1, "b": 2, "c": 3}
for sched in all_schedules(p):
    before = run(p, s0, sched)
    after = run(opt.program, s0, translate_schedule(sched, p, opt.program))
    print(f"schedule {sched}:")
    print("  original  ", before.to_json()["evalCount"], "->", before.state)
    print("  optimized ", after.to_json()["evalCount"], "->", after.state)
