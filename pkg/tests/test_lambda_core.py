import random

import pytest
from hypothesis import given, settings, strategies as st

from lhrkit.corpus import random_closed_term, random_type
from lhrkit.lambda_core import (
    Abs,
    App,
    Arrow,
    Const,
    InvalidPath,
    IllTyped,
    NotAVariable,
    O,
    TypeMismatch,
    Var,
    alpha_eq,
    arrow,
    barendregt,
    free_vars,
    is_hygienic,
    level,
    measures,
    substitute_occurrence,
    typecheck,
    type_of,
)
from lhrkit.syntax import parse_context, parse_term

seeds = st.integers(0, 10**6)


def test_measures_of_the_running_example(m0):
    m = measures(m0)
    assert (m.order, m.depth, m.local_height, m.height, m.length) == (2, 2, 3, 3, 8)


def test_constant_measures():
    m = measures(Const(O))
    assert (m.length, m.height, m.local_height, m.depth) == (1, 0, 0, 1)


def test_identity_measures():
    m = measures(parse_term(r"\x:o.x"))
    assert (m.local_height, m.order) == (1, 1)


def test_levels():
    assert level(O) == 0
    assert level(arrow(O, O)) == 1
    assert level(arrow(arrow(O, O), O)) == 2
    assert level(arrow(O, arrow(O, O), O)) == 2


@given(seeds)
def test_level_of_arrow(seed):
    rng = random.Random(seed)
    a, b = random_type(rng, 3), random_type(rng, 3)
    assert level(Arrow(a, b)) == max(level(a) + 1, level(b))


def test_typecheck_examples():
    x = Var(0, O, "x")
    ident = Abs(0, O, x, "x")
    assert typecheck(ident) == Arrow(O, O)
    assert typecheck(App(ident, Const(O))) == O
    y = Var(1, O, "y")
    with pytest.raises(IllTyped):
        typecheck(App(ident, Abs(1, O, y, "y")))


def test_typecheck_context_mismatch():
    x = Var(0, O, "x")
    with pytest.raises(IllTyped):
        typecheck(x, {0: Arrow(O, O)})


def test_barendregt_removes_shadowing():
    x2 = Var(0, O, "x")
    t = Abs(0, O, Abs(0, O, x2, "x"), "x")
    b = barendregt(t)
    assert b.var != b.body.var
    assert b.body.body.id == b.body.var
    assert is_hygienic(b) and not is_hygienic(t)
    assert alpha_eq(b, t)


def test_barendregt_separates_copies():
    ident = parse_term(r"\x:o.x")
    f = Var(7, Arrow(Arrow(O, O), Arrow(Arrow(O, O), O)), "f")
    pair = barendregt(App(App(f, ident), ident))
    assert pair.fn.arg.var != pair.arg.var


@given(seeds)
@settings(max_examples=50)
def test_barendregt_is_hygienic_and_alpha_equal(seed):
    t = random_closed_term(random.Random(seed))
    b = barendregt(t)
    assert is_hygienic(b)
    assert alpha_eq(b, t)
    assert typecheck(b) == typecheck(t)


def test_substitute_occurrence():
    t = parse_term("f x", parse_context("f:o->o,x:o"))
    out = substitute_occurrence(t, ("arg",), Const(O))
    assert out.arg == Const(O) and out.fn == t.fn


def test_substitute_occurrence_errors():
    t = parse_term("f x", parse_context("f:o->o,x:o"))
    with pytest.raises(TypeMismatch):
        substitute_occurrence(t, ("arg",), Const(Arrow(O, O)))
    with pytest.raises(NotAVariable):
        substitute_occurrence(parse_term(r"\y:o.y"), (), Const(O))
    with pytest.raises(InvalidPath):
        substitute_occurrence(t, ("body",), Const(O))


def test_free_vars():
    assert not free_vars(parse_term(r"\x:o.x"))
    ctx = parse_context("y:o->o")
    t = parse_term(r"\x:o. y x", ctx)
    assert [v.name for v in free_vars(t).values()] == ["y"]
    assert not free_vars(Const(O))


@given(seeds)
@settings(max_examples=50)
def test_random_terms_are_closed_and_typed(seed):
    t = random_closed_term(random.Random(seed))
    assert not free_vars(t)
    assert typecheck(t) == type_of(t)
    assert measures(t).length >= 1
