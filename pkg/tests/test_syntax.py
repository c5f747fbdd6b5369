import random

import pytest
from hypothesis import given, settings, strategies as st

from lhrkit.corpus import random_closed_term, random_skeleton, random_type
from lhrkit.lambda_core import IllTyped, alpha_eq, typecheck
from lhrkit.skeleton import Skeleton
from lhrkit.syntax import (
    ParseError,
    parse_context,
    parse_skeleton,
    parse_term,
    parse_type,
    show_skeleton,
    show_term,
    show_type,
)

seeds = st.integers(0, 10**6)


def test_function_of_running_example():
    t = parse_term(r"\f:o->o. \x:o. f (f x)")
    assert show_term(t) == r"\f:o->o. \x:o. f (f x)"
    assert str(typecheck(t)) == "(o->o)->o->o"


def test_skeleton_literal_is_canonical():
    a = parse_skeleton("3[{1}0,{2}1,{2}1]")
    assert a is Skeleton(3, [(1, Skeleton(0)), (2, Skeleton(1))])
    assert show_skeleton(a) == "3[{1}0,{2}1]"


def test_self_application_is_ill_typed():
    with pytest.raises(IllTyped):
        parse_term(r"\x:o. x x")


def test_free_variables_need_a_context():
    with pytest.raises(ParseError):
        parse_term("f x")
    t = parse_term("f x", parse_context("f:o->o, x:o"))
    assert show_term(t) == "f x"


@pytest.mark.parametrize("text", ["", r"\x. x", "(*:o", r"\x:o x"])
def test_malformed_term(text):
    with pytest.raises(ParseError):
        parse_term(text)


@pytest.mark.parametrize("text", ["", "1[{2}", "1[2]", "x"])
def test_malformed_skeleton(text):
    with pytest.raises(ParseError):
        parse_skeleton(text)


def test_type_arrows_associate_right():
    assert parse_type("o->o->o") == parse_type("o->(o->o)")
    assert parse_type("(o->o)->o") != parse_type("o->o->o")


@given(seeds)
@settings(max_examples=60)
def test_type_round_trip(seed):
    ty = random_type(random.Random(seed), 3)
    assert parse_type(show_type(ty)) == ty


@given(seeds)
@settings(max_examples=60)
def test_term_round_trip(seed):
    t = random_closed_term(random.Random(seed), 25, 3)
    assert alpha_eq(parse_term(show_term(t)), t)


@given(seeds)
@settings(max_examples=60)
def test_skeleton_round_trip(seed):
    a = random_skeleton(random.Random(seed))
    assert parse_skeleton(show_skeleton(a)) is a
