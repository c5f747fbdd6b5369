import pytest

from lhrkit.errors import DomainError
from lhrkit.pointers import (
    IllegalPlay,
    PointedPlay,
    PointerStructure,
    StarParams,
    certify_cotrace,
    certify_trace,
    check_bridge,
    check_play_simulation,
    cocontext,
    context,
    enumerate_star,
    in_interaction,
    is_alternating,
    is_visible,
    iter_star,
    n_d,
    o_view,
    p_view,
    play,
    residual_cosize,
    residual_depth,
    residual_size,
    within_bounds,
)
from lhrkit.skeleton import Skeleton, embeds, norm
from lhrkit.syntax import parse_skeleton as P

from oracles import brute_star, rec_o_view, rec_p_view

SMALL = [StarParams(n, p, d) for n in range(0, 3) for p in range(0, 3) for d in (2, 3)]


def test_play_construction():
    s = play(0, 1, 2, (1, 0))
    assert str(s) == "[0,1^0,2^1,1^0]"
    assert s.labels == [0, 1, 2, 1] and s.depth == 2
    with pytest.raises(IllegalPlay):
        PointerStructure(((0, None), (2, 0)))
    with pytest.raises(IllegalPlay):
        PointerStructure(((1, None),))
    with pytest.raises(IllegalPlay):
        play(0, 3)


def test_views():
    assert p_view(play(0)) == [0]
    s = play(0, 1)
    assert p_view(s) == [0, 1] and o_view(s) == [0, 1]
    s = play(0, 1, 2, (1, 0))
    assert p_view(s) == [0, 1, 2, 3]
    assert o_view(s) == [0, 3]
    s = play(0, 1, 2, 3, (2, 1))
    assert p_view(s) == [0, 1, 4]
    assert o_view(s, 3) == [0, 1, 2]


def test_visibility():
    assert is_visible(play(0)) and is_visible(play(0, 1))
    s = play(0, 1, 2, 3, (2, 1), (3, 2))
    assert not is_visible(s)
    assert is_alternating(s)


@pytest.mark.parametrize("params", SMALL, ids=str)
def test_views_match_recursive_definition(params):
    for s, _ in iter_star(params):
        for end in range(1, len(s) + 1):
            assert p_view(s, end) == rec_p_view(s.moves[:end])
            assert o_view(s, end) == rec_o_view(s.moves[:end])


@pytest.mark.parametrize("params", SMALL, ids=str)
def test_enumeration_matches_brute_force(params):
    plays, maximal = brute_star(params.n, params.p, params.d)
    got = {s.moves for s, _ in iter_star(params)}
    assert got == plays
    assert {s.moves for s in enumerate_star(params)} == maximal
    for s in enumerate_star(params):
        assert is_visible(s) and is_alternating(s) and within_bounds(s, params)


def test_no_player_moves_without_room():
    assert [s.moves for s in enumerate_star(StarParams(0, 2, 3))] == [()]
    assert n_d(StarParams(1, 0, 2)) == 1


def test_params():
    with pytest.raises(DomainError):
        StarParams(1, 1, 1)
    with pytest.raises(DomainError):
        StarParams(-1, 1, 2)


def test_lengths():
    assert n_d(StarParams(1, 1, 2)) == 2
    assert n_d(StarParams(2, 1, 2)) == 4
    assert n_d(StarParams(3, 3, 3)) == 26


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("p", [1, 2])
def test_bridge(n, p, d):
    r = check_bridge(StarParams(n, p, d))
    assert r.ok
    assert r.norm == norm(Skeleton(n, [(d, Skeleton(p))]))


def test_contexts():
    assert context(PointedPlay(play(0), 0)) == []
    assert cocontext(PointedPlay(play(0, 1), 1)) == [0]
    with pytest.raises(DomainError):
        PointedPlay(play(0), 1)


def test_residuals_on_a_six_move_play():
    s = play(0, 1, 2, 3, (2, 1), (3, 4))
    assert len(s) == 6
    # brute force: longest view through move i, counted from i
    for i in range(len(s)):
        pp = PointedPlay(s, i)
        own = rec_p_view if i % 2 == 0 else rec_o_view
        other = rec_o_view if i % 2 == 0 else rec_p_view
        base = len(own(s.moves[: i + 1]))
        size = max(len(own(s.moves[: j + 1])) for j in range(i, 6) if i in own(s.moves[: j + 1]))
        assert residual_size(pp) == size - base + 1
        cobase = len(other(s.moves[: i + 1]))
        cosize = max(len(other(s.moves[: j + 1])) for j in range(i, 6) if i in other(s.moves[: j + 1]))
        assert residual_cosize(pp) == cosize - cobase + 1
    assert residual_depth(PointedPlay(s, 0)) == 3
    assert residual_depth(PointedPlay(s, 1)) == 2
    assert residual_depth(PointedPlay(s, 5)) == 0


def test_certify_single_move():
    pp = PointedPlay(play(0), 0)
    assert certify_trace(pp, Skeleton(1))
    assert not certify_trace(pp, Skeleton(0))
    assert certify_cotrace(pp, Skeleton(0))


def test_interaction_of_a_full_play():
    s = play(0, 1)
    assert in_interaction(PointedPlay(s, 0), P("1"), 2, P("1"))


@pytest.mark.parametrize("params", SMALL + [StarParams(3, 2, 3)], ids=str)
def test_simulation_along_every_play(params):
    for s in enumerate_star(params):
        assert check_play_simulation(s, params) is None


def test_certification_is_monotone():
    a, b = P("1[{1}0]"), P("2[{2}1[{1}0]]")
    assert embeds(a, b)
    for s in enumerate_star(StarParams(2, 2, 3)):
        for i in range(len(s)):
            pp = PointedPlay(s, i)
            if certify_trace(pp, a):
                assert certify_trace(pp, b)
            if certify_cotrace(pp, a):
                assert certify_cotrace(pp, b)
