import pytest

from fwpre.parser import parse
from fwpre.syntax import (
    Assign,
    BinOp,
    Compare,
    Const,
    Fork,
    Program,
    Seq,
    Skip,
    Var,
    assigned_vars,
    count_stmts,
    eval_set,
    flatten_seq,
    free_vars,
    make_seq,
    nontrivial_exprs,
    renumber,
)

a, b, c, x, y = (Var(n) for n in "abcxy")


def test_free_vars():
    assert free_vars(BinOp("+", a, b)) == {"a", "b"}
    assert free_vars(BinOp("*", Const(5), Const(7))) == set()
    assert free_vars(Compare("<=", x, x)) == {"x"}


def test_eval_set():
    assert eval_set(BinOp("+", a, b)) == {BinOp("+", a, b)}
    assert eval_set(Const(7)) == set()
    assert eval_set(x) == set()


def test_nontrivial_exprs(motivating):
    assert [e.key for e in nontrivial_exprs(motivating)] == ["a-c", "a+b"]
    assert nontrivial_exprs(parse("skip")) == ()
    assert [e.key for e in nontrivial_exprs(parse("x := 1; y := x + x"))] == ["x+x"]


def test_assigned_vars(motivating):
    fork = next(s for s in motivating.nodes.values() if isinstance(s, Fork))
    assert assigned_vars(fork.threads[0]) == {"y", "c", "z"}
    assert assigned_vars(Skip()) == set()
    assert assigned_vars(parse("if b < 1 then { x := 1 } else { while b < 1 do { y := 2 } }").body) == {"x", "y"}


def test_var_rejects_keywords_and_bad_names():
    with pytest.raises(ValueError):
        Var("while")
    with pytest.raises(ValueError):
        Var("1x")


def test_binop_rejects_unknown_operator():
    with pytest.raises(ValueError):
        BinOp("/", a, b)


def test_structural_equality_ignores_ids():
    assert Assign("x", a, node_id=1) == Assign("x", a, node_id=9)


def test_make_seq_right_associates():
    s = make_seq(make_seq(Skip(), Skip()), Skip(), Skip())
    assert isinstance(s, Seq) and isinstance(s.second, Seq)
    assert len(flatten_seq(s)) == 4
    assert count_stmts(s) == 4


def test_renumber_preorder():
    p = renumber(make_seq(Assign("x", a), Fork((Skip(), Skip()))))
    assert sorted(p.nodes) == [1, 2, 3, 4, 5]
    assert isinstance(p.node(3), Fork)


def test_program_rejects_duplicate_ids():
    with pytest.raises(ValueError):
        Program(Seq(Skip(node_id=1), Skip(node_id=1), node_id=2))
