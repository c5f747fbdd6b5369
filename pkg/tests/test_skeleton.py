import random

import pytest
from hypothesis import given, settings, strategies as st

from lhrkit.corpus import random_skeleton, shrink
from lhrkit.errors import BudgetExceeded, DomainError
from lhrkit.skeleton import (
    Skeleton,
    atom,
    embeds,
    graft,
    join,
    longest_path,
    measures,
    norm,
    norm_at_least,
    norm_brute,
    prune,
    reducts,
    ssum,
    thread_like,
)
from lhrkit.syntax import parse_skeleton as P

from oracles import from_tuple, to_tuple, tuple_norm, tuple_reducts

seeds = st.integers(0, 10**6)


def test_hash_consing():
    assert P("1[{2}1]") is Skeleton(1, [(2, Skeleton(1))])
    assert P("3[{1}0,{2}1,{2}1]") is P("3[{2}1,{1}0]")
    with pytest.raises(DomainError):
        Skeleton(-1)


def test_graft():
    assert graft(atom(1), 2, atom(1)) is P("1[{2}1]")
    a = P("2[{1}0]")
    assert graft(a, 1, atom(0)) is a
    assert graft(P("2[{1}0]"), 3, atom(1)) is P("2[{1}0,{3}1]")


def test_join_and_sum():
    assert join([P("2[{1}0]"), atom(3)]) is P("3[{1}0]")
    assert ssum([atom(1), P("2[{1}0]")]) is P("3[{1}0]")
    assert join([]) is atom(0)


def test_reducts():
    assert reducts(P("1[{2}1]")) == [P("1[{1}0[{2}1]]")]
    assert reducts(P("0[{5}7]")) == []
    assert reducts(P("3[{0}2]")) == []


def test_norm_examples():
    assert norm(P("1[{1}1]")) == 1
    assert norm(P("0[{3}4]")) == 0
    for n in range(1, 6):
        for p in range(1, 6):
            assert norm(Skeleton(n, [(2, atom(p))])) == 2 * n


def test_measures():
    assert measures(P("3[{1}0,{2}1,{2}1]")) == (2, 3, 2)
    assert measures(atom(7)) == (0, 7, 1)
    assert measures(thread_like(4, 2, 3)) == (2, 3, 4)


def test_thread_like():
    assert thread_like(1, 3, 5) is atom(5)
    assert thread_like(2, 1, 1) is P("1[{1}1]")


def test_embeds():
    a = P("2[{1}0]")
    assert embeds(a, a)
    assert embeds(P("1[{1}0]"), P("2[{3}1,{0}5]"))
    assert not embeds(atom(2), atom(1))
    assert not embeds(P("1[{2}0]"), P("1[{1}0]"))


@given(seeds)
@settings(max_examples=100)
def test_reducts_match_oracle(seed):
    a = random_skeleton(random.Random(seed))
    assert {to_tuple(r) for r in reducts(a)} == set(tuple_reducts(to_tuple(a)))
    assert from_tuple(to_tuple(a)) is a


@given(seeds)
@settings(max_examples=100)
def test_norm_matches_oracles(seed):
    a = random_skeleton(random.Random(seed), 3, 3, 2, 2)
    try:
        want = tuple_norm(to_tuple(a))
    except RecursionError:
        return
    try:
        got = norm(a, budget=20000)
    except BudgetExceeded:
        return
    assert got == want
    assert norm_brute(a, budget=10**6) == want
    assert norm_at_least(a, want) and not norm_at_least(a, want + 1)
    assert len(longest_path(a)) == want + 1


@given(seeds)
@settings(max_examples=100)
def test_norm_is_monotone_under_embedding(seed):
    rng = random.Random(seed)
    b = random_skeleton(rng, 3, 3, 2, 2)
    a = shrink(rng, b)
    assert embeds(a, b)
    try:
        assert norm(a, budget=20000) <= norm(b, budget=20000)
    except BudgetExceeded:
        pass


@given(seeds)
@settings(max_examples=60)
def test_prune_keeps_norm(seed):
    a = random_skeleton(random.Random(seed), 3, 3, 2, 3)
    p = prune(a)
    assert embeds(p, a)
    try:
        assert norm(p, budget=20000) == norm(a, budget=20000)
    except BudgetExceeded:
        pass


def test_norm_budget():
    with pytest.raises(BudgetExceeded):
        norm(P("3[{4}3]"), budget=10)
