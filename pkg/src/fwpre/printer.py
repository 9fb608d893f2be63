"""Canonical text rendering of FWHILE programs.

One statement per line, two spaces of indentation per nesting level, and
a single space around every operator and ``:=``. ``parse(pretty_print(p))``
reproduces ``p`` up to node ids and spans.
"""

from __future__ import annotations

from .syntax import Assign, Fork, If, Program, Seq, Skip, While, flatten_seq

INDENT = "  "


def _simple_lines(s, depth):
    pad = INDENT * depth
    if isinstance(s, Assign):
        return [f"{pad}{s.target} := {s.expr}"]
    if isinstance(s, Skip):
        return [f"{pad}skip"]
    if isinstance(s, If):
        return (
            [f"{pad}if {s.cond} then {{"]
            + _block_lines(s.then, depth + 1)
            + [f"{pad}}} else {{"]
            + _block_lines(s.orelse, depth + 1)
            + [f"{pad}}}"]
        )
    if isinstance(s, While):
        return [f"{pad}while {s.cond} do {{"] + _block_lines(s.body, depth + 1) + [f"{pad}}}"]
    if isinstance(s, Fork):
        lines = [f"{pad}fork {{"]
        inner = INDENT * (depth + 1)
        for t in s.threads:
            lines.append(f"{inner}{{")
            lines += _block_lines(t, depth + 2)
            lines.append(f"{inner}}}")
        lines.append(f"{pad}}}")
        return lines
    raise TypeError(f"not a statement: {s!r}")


def _block_lines(s, depth):
    parts = [_simple_lines(item, depth) for item in flatten_seq(s)]
    for lines in parts[:-1]:
        lines[-1] += ";"
    return [line for lines in parts for line in lines]


def pretty_print(p) -> str:
    """Multi-line canonical form of a program or statement."""
    body = p.body if isinstance(p, Program) else p
    return "\n".join(_block_lines(body, 0))


def one_line(p) -> str:
    """Single-line canonical form, convenient for logs and JSON."""
    body = p.body if isinstance(p, Program) else p
    return "; ".join(_one_line_simple(item) for item in flatten_seq(body))


def _one_line_simple(s):
    if isinstance(s, Assign):
        return f"{s.target} := {s.expr}"
    if isinstance(s, Skip):
        return "skip"
    if isinstance(s, If):
        return f"if {s.cond} then {{ {one_line(s.then)} }} else {{ {one_line(s.orelse)} }}"
    if isinstance(s, While):
        return f"while {s.cond} do {{ {one_line(s.body)} }}"
    if isinstance(s, Fork):
        threads = " ".join(f"{{ {one_line(t)} }}" for t in s.threads)
        return f"fork {{ {threads} }}"
    raise TypeError(f"not a statement: {s!r}")
