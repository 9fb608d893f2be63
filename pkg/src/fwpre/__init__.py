"""Partial redundancy elimination for FWHILE, a WHILE language with fork."""

from .interpreter import (
    FuelExhausted,
    RunError,
    RunResult,
    Schedule,
    UnboundVariable,
    all_schedules,
    eval_aexpr,
    eval_bexpr,
    run,
)
from .modified import concurrent_modified, mce, mod, modified_analysis, sub_statements
from .parser import ParseError, parse
from .pre_analysis import PreAnnotation, analyze, anticipability, cond_partial_availability
from .printer import one_line, pretty_print
from .syntax import Program, assigned_vars, eval_set, free_vars, nontrivial_exprs
from .transform import OptimizedProgram, TempTable, optimize, similarity, strip_temps

__version__ = "0.1.0"
