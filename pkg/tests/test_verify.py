import pytest

from conftest import corpus_files
from fwpre.interpreter import Schedule, ScheduleBoundError
from fwpre.parser import parse, parse_file
from fwpre.printer import one_line
from fwpre.syntax import Assign, BinOp, Var, make_seq
from fwpre.transform import _Rewriter, optimize
from fwpre.verify import translate_schedule, verify


def test_motivating_passes(motivating):
    report = verify(motivating, states=50)
    assert report.passed
    assert report.comparisons == 100
    assert (report.eval_original, report.eval_optimized) == (600, 400)


def test_skip_passes():
    assert verify(parse("skip")).passed


@pytest.mark.parametrize("path", corpus_files(), ids=lambda p: p.name)
def test_corpus_passes(path):
    assert verify(parse_file(path), states=30).passed


def test_seed_reproducible(motivating):
    a = verify(motivating, states=10, seed=4).to_json()
    b = verify(motivating, states=10, seed=4).to_json()
    assert a == b


def test_bound_exceeded():
    with pytest.raises(ScheduleBoundError):
        verify(parse("fork { {skip} {skip} {skip} {skip} {skip} }"))


def test_translate_schedule():
    src = parse("fork { {skip} {skip} }")
    dst = parse("skip; fork { {skip} {skip} }")
    assert translate_schedule(Schedule({1: (1, 0)}), src, dst).orders == {3: (1, 0)}


class _Unguarded(_Rewriter):
    # replaces on anticipability alone, with no availability guard
    def rw(self, s):
        if isinstance(s, Assign) and isinstance(s.expr, BinOp):
            if s.expr in self.ann.ant_pre(s.node_id):
                return Assign(s.target, Var(self.temp(s.expr)))
        return super().rw(s)


def _broken_optimize(p, temp_prefix="t"):
    import fwpre.transform as tr

    saved = tr._Rewriter
    tr._Rewriter = _Unguarded
    try:
        return optimize(p, temp_prefix)
    finally:
        tr._Rewriter = saved


def test_mutant_is_caught():
    p = parse("if p <= q then { x := a + b } else { skip }; y := a + b")
    report = verify(p, states=20, optimizer=_broken_optimize)
    assert not report.passed
    assert report.counterexample.kind == "error"
    assert "UnboundVariable" in report.counterexample.detail
    assert "FAIL" in report.summary()


def test_wrong_value_is_caught():
    # a transform that forgets the else-branch insertion reads a stale temp
    def stale(p, temp_prefix="t"):
        out = optimize(p, temp_prefix)
        out.program = parse("t1 := 0; " + one_line(out.program).replace("skip; t1 := a + b", "skip"))
        return out

    p = parse("if p <= q then { x := a + b } else { skip }; y := a + b")
    report = verify(p, states=30, optimizer=stale)
    assert not report.passed
    assert report.counterexample.kind == "state"
