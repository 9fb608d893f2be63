import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import corpus_files
from fwpre.generate import GenConfig, random_program
from fwpre.parser import ParseError, parse, parse_file
from fwpre.printer import one_line, pretty_print
from fwpre.syntax import Assign, BinOp, Fork, Seq, Skip, Var, iter_stmts

MOTIVATING_ONE_LINE = (
    "v := a - c; u := a + b; fork { { y := a + b; c := 2; z := a - c } { x := a + b; z := a - c } }"
)


def test_motivating_from_one_line(motivating):
    assert parse(MOTIVATING_ONE_LINE) == motivating
    assert one_line(motivating) == MOTIVATING_ONE_LINE


def test_motivating_ast_shape(motivating):
    body = motivating.body
    assert body.first == Assign("v", BinOp("-", Var("a"), Var("c")))
    fork = body.second.second
    assert isinstance(fork, Fork) and len(fork.threads) == 2


def test_skip():
    assert parse("skip").body == Skip()
    assert pretty_print(parse("skip")) == "skip"


def test_truncated_input_reports_end():
    with pytest.raises(ParseError) as info:
        parse("x := a + ")
    err = info.value
    assert "expected" in str(err)
    assert (err.line, err.column) == (1, 10)


@pytest.mark.parametrize(
    "text",
    ["x = 1", "x := a / b", "if x then { skip } else { skip }", "fork { skip }", "while x < 1 do skip", "x := 1;;"],
)
def test_rejects(text):
    with pytest.raises(ParseError):
        parse(text)


def test_comments_and_trailing_semicolon():
    assert parse("// hello\nx := 1; // tail\n") == parse("x := 1")


def test_negative_literal():
    p = parse("x := -3 + y")
    assert one_line(p) == "x := -3 + y"


def test_node_ids_unique_and_preorder(motivating):
    ids = [s.node_id for s in iter_stmts(motivating.body)]
    assert ids == list(range(1, len(ids) + 1))


def test_seq_is_right_associated():
    body = parse("skip; skip; skip").body
    assert isinstance(body, Seq) and isinstance(body.second, Seq)


def test_spans_point_into_source():
    text = "x := 1;\ny := x + 2"
    p = parse(text)
    second = p.body.second
    assert text[second.span.start : second.span.end] == "y := x + 2"


@pytest.mark.parametrize("path", corpus_files(), ids=lambda p: p.name)
def test_corpus_round_trip(path):
    p = parse_file(path)
    assert parse(pretty_print(p)) == p
    assert parse(one_line(p)) == p


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_round_trip_generated(seed):
    p = random_program(random.Random(seed), GenConfig(max_stmts=25))
    printed = pretty_print(p)
    again = parse(printed)
    assert again == p
    assert pretty_print(again) == printed
    assert [s.node_id for s in iter_stmts(again.body)] == [s.node_id for s in iter_stmts(p.body)]
