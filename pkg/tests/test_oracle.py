import pytest

from conftest import programs
from fwpre.generate import GenConfig
from fwpre.oracle import (
    Barrier,
    Eval,
    Kill,
    OracleBoundError,
    Point,
    enumerate_paths,
    oracle_annotations,
    oracle_ant,
    oracle_cpav,
    thread_context,
)
from fwpre.parser import parse
from fwpre.pre_analysis import analyze

LOOP_FREE = GenConfig(loops=False, max_stmts=20)


def test_path_counts(motivating):
    assert len(enumerate_paths(motivating)) == 2
    p = parse("if x < 1 then { skip } else { skip }; fork { {skip} {skip} {skip} }")
    assert len(enumerate_paths(p)) == 2 * 6


def test_path_events():
    (path,) = enumerate_paths(parse("x := a + 1"))
    kinds = [type(e) for e in path.events]
    assert kinds == [Point, Eval, Kill, Point]
    (path, _) = enumerate_paths(parse("fork { {skip} {skip} }"))
    assert isinstance(path.events[-2], Barrier)


def test_loops_are_rejected():
    with pytest.raises(OracleBoundError):
        enumerate_paths(parse("while x < 1 do { skip }"))


def test_path_bound():
    text = "; ".join(["if x < 1 then { skip } else { skip }"] * 12)
    with pytest.raises(OracleBoundError):
        enumerate_paths(parse(text), max_paths=1000)


def test_thread_context(motivating):
    enclosing, writes = thread_context(motivating)
    assert enclosing[7] == ((5, 0),) and writes[7] == {"x", "z"}
    assert enclosing[12] == ((5, 1),) and writes[12] == {"y", "c", "z"}
    assert enclosing[1] == () and writes[1] == set()


def test_point_queries(motivating):
    assert {e.key for e in oracle_ant(motivating, (5, "pre"))} == {"a+b"}
    assert {e.key for e in oracle_cpav(motivating, (12, "pre"))} == {"a+b"}
    assert oracle_cpav(motivating, (1, "pre")) == set()


def test_partial_redundancy_is_visible():
    p = parse("if p <= q then { x := a + b } else { skip }; y := a + b")
    ant, cpav = oracle_annotations(p)
    y = p.body.second.node_id
    assert {e.key for e in cpav[y][0]} == {"a+b"}


def test_analysis_matches_oracle_sample():
    for p in programs(200, 77, LOOP_FREE):
        ann = analyze(p)
        ant, cpav = oracle_annotations(p)
        for nid in p.nodes:
            assert (ann.ant_pre(nid), ann.ant_post(nid)) == ant[nid], nid
            assert (ann.cpav_pre(nid), ann.cpav_post(nid)) == cpav[nid], nid
