"""Visible pointer structures over the pure arena.

Moves are natural numbers; a move labelled ``k`` is an Opponent move when
``k`` is even and a Player move when ``k`` is odd.  Move ``0`` is the only
initial move, and a move labelled ``k + 1`` must point to an earlier move
labelled ``k``.  A play is stored as a tuple of ``(label, justifier)`` pairs
with ``justifier`` ``None`` for the initial move.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded, DomainError
from .skeleton import Skeleton, norm

DEFAULT_PLAY_BUDGET = 10**6


class IllegalPlay(DomainError):
    pass


def is_opponent(label):
    return label % 2 == 0


@dataclass(frozen=True)
class PointerStructure:
    moves: tuple = ()

    def __post_init__(self):
        moves = tuple((int(k), j) for k, j in self.moves)
        object.__setattr__(self, "moves", moves)
        for i, (k, j) in enumerate(moves):
            if j is None:
                if i != 0 or k != 0:
                    raise IllegalPlay(f"move {i}: only the first move may be initial, with label 0")
                continue
            if not 0 <= j < i:
                raise IllegalPlay(f"move {i}: justifier {j} is not an earlier move")
            if moves[j][0] + 1 != k:
                raise IllegalPlay(f"move {i}: label {k} cannot point to label {moves[j][0]}")
        if moves and moves[0][1] is not None:
            raise IllegalPlay("the first move must be initial")

    def __len__(self):
        return len(self.moves)

    @property
    def labels(self):
        return [k for k, _ in self.moves]

    @property
    def depth(self):
        return max(self.labels, default=0)

    def prefix(self, n):
        return PointerStructure(self.moves[:n])

    def __str__(self):
        parts = []
        for i, (k, j) in enumerate(self.moves):
            parts.append(str(k) if j is None else f"{k}^{j}")
        return "[" + ",".join(parts) + "]"


def play(*moves):
    """Build a play from ``label`` or ``(label, justifier)`` entries.

    A bare label points to the closest earlier move labelled one less.
    """
    out = []
    for i, m in enumerate(moves):
        if isinstance(m, tuple):
            out.append(m)
            continue
        if m == 0 and i == 0:
            out.append((0, None))
            continue
        j = next((j for j in range(i - 1, -1, -1) if out[j][0] == m - 1), None)
        if j is None:
            raise IllegalPlay(f"move {i}: nothing to point to")
        out.append((m, j))
    return PointerStructure(tuple(out))


# -- views --------------------------------------------------------------------


def p_view(s, end=None):
    """Indices in the P-view of the prefix ``s[:end]`` (the whole play by default)."""
    moves = s.moves if isinstance(s, PointerStructure) else s
    i = len(moves) - 1 if end is None else end - 1
    out = []
    while i >= 0:
        k, j = moves[i]
        out.append(i)
        if not is_opponent(k):
            i -= 1
        elif j is None:
            break
        else:
            out.append(j)
            i = j - 1
    return out[::-1]


def o_view(s, end=None):
    """Indices in the O-view of ``s[:end]``; there is no special case for the initial move."""
    moves = s.moves if isinstance(s, PointerStructure) else s
    i = len(moves) - 1 if end is None else end - 1
    out = []
    while i >= 0:
        k, j = moves[i]
        out.append(i)
        if is_opponent(k):
            i -= 1
        else:
            out.append(j)
            i = j - 1
    return out[::-1]


def is_visible(s):
    """Every move points within the view of its own player at the time it is played."""
    for i, (k, j) in enumerate(s.moves):
        if j is None:
            continue
        view = o_view(s, i) if is_opponent(k) else p_view(s, i)
        if j not in view:
            return False
    return True


def is_alternating(s):
    return all(k % 2 == i % 2 for i, (k, _) in enumerate(s.moves))


# -- enumeration --------------------------------------------------------------


@dataclass(frozen=True)
class StarParams:
    n: int
    p: int
    d: int

    def __post_init__(self):
        if self.n < 0 or self.p < 0:
            raise DomainError("sizes must be non-negative")
        if self.d < 2:
            raise DomainError("depth must be at least 2")


def within_bounds(s, params):
    """Labels are at most ``d`` and every non-empty prefix has a P-view of length at
    most ``2n`` and an O-view of length at most ``2p+1``."""
    for i in range(1, len(s) + 1):
        if len(p_view(s, i)) > 2 * params.n or len(o_view(s, i)) > 2 * params.p + 1:
            return False
    return s.depth <= params.d


def _extensions(moves, pviews, oviews, params):
    """Legal one-move extensions, with the views of the extended prefix."""
    i = len(moves)
    if i == 0:
        if 1 <= 2 * params.n:
            yield (0, None), [0], [0]
        return
    if i % 2 == 1:
        # Player move: points into the current P-view, to an Opponent move
        view = pviews[-1]
        for j in view:
            k = moves[j][0]
            if not is_opponent(k) or k + 1 > params.d:
                continue
            pv = view + [i]
            ov = oviews[j - 1] + [j, i] if j > 0 else [j, i]
            if len(pv) > 2 * params.n or len(ov) > 2 * params.p + 1:
                continue
            yield (k + 1, j), pv, ov
    else:
        view = oviews[-1]
        for j in view:
            k = moves[j][0]
            if is_opponent(k) or k + 1 > params.d:
                continue
            ov = view + [i]
            pv = pviews[j - 1] + [j, i]
            if len(pv) > 2 * params.n or len(ov) > 2 * params.p + 1:
                continue
            yield (k + 1, j), pv, ov


def iter_star(params, budget=DEFAULT_PLAY_BUDGET):
    """Depth-first walk of the play tree; yields ``(play, is_maximal)`` for every play."""
    moves, pviews, oviews = [], [], []
    visited = 0
    stack = [iter(_extensions(moves, pviews, oviews, params))]
    yield PointerStructure(()), False
    extended = [False]
    while stack:
        step = next(stack[-1], None)
        if step is None:
            stack.pop()
            done = extended.pop()
            if moves:
                if not done:
                    yield PointerStructure(tuple(moves)), True
                moves.pop()
                pviews.pop()
                oviews.pop()
            continue
        extended[-1] = True
        visited += 1
        if visited > budget:
            raise BudgetExceeded("pointer structure enumeration", budget)
        move, pv, ov = step
        moves.append(move)
        pviews.append(pv)
        oviews.append(ov)
        yield PointerStructure(tuple(moves)), False
        stack.append(iter(_extensions(moves, pviews, oviews, params)))
        extended.append(False)


def enumerate_star(params, budget=DEFAULT_PLAY_BUDGET):
    """All maximal plays of ``n *_d p``, sorted by their move encoding."""
    plays = {s for s, maximal in iter_star(params, budget) if maximal}
    if not plays:
        plays = {PointerStructure(())}
    return sorted(plays, key=lambda s: s.moves)


def n_d(params, budget=DEFAULT_PLAY_BUDGET):
    """Maximal length of a play of ``n *_d p``."""
    return max(len(s) for s in enumerate_star(params, budget))


@dataclass
class BridgeReport:
    params: StarParams
    n_d: int
    norm: int
    ok: bool


def check_bridge(params, budget=DEFAULT_PLAY_BUDGET):
    """Compare ``N_d(n, p)`` with ``norm(n[{d}p]) + 1``."""
    nd = n_d(params, budget)
    m = norm(Skeleton(params.n, [(params.d, Skeleton(params.p))]))
    return BridgeReport(params, nd, m, nd <= m + 1)


# -- pointed plays --------------------------------------------------------------


@dataclass(frozen=True)
class PointedPlay:
    play: PointerStructure
    index: int

    def __post_init__(self):
        if not 0 <= self.index < len(self.play):
            raise DomainError(f"index {self.index} outside a play of length {len(self.play)}")


def _residual(s, i, viewer):
    base = len(viewer(s, i + 1))
    best = base
    for j in range(i, len(s)):
        v = viewer(s, j + 1)
        if i in v:
            best = max(best, len(v))
    return best - base + 1


def residual_size(pp):
    s, i = pp.play, pp.index
    return _residual(s, i, p_view if is_opponent(s.moves[i][0]) else o_view)


def residual_cosize(pp):
    s, i = pp.play, pp.index
    return _residual(s, i, o_view if is_opponent(s.moves[i][0]) else p_view)


def context(pp):
    """Moves the next move may point to, other than the current one."""
    s, i = pp.play, pp.index
    opp = is_opponent(s.moves[i][0])
    view = p_view(s, i + 1) if opp else o_view(s, i + 1)
    return [j for j in view if j != i and is_opponent(s.moves[j][0]) == opp]


def cocontext(pp):
    """Moves the other player may point to."""
    s, i = pp.play, pp.index
    opp = is_opponent(s.moves[i][0])
    view = o_view(s, i + 1) if opp else p_view(s, i + 1)
    return [j for j in view if is_opponent(s.moves[j][0]) != opp]


def residual_depth(pp):
    """Longest chain of pointers from a later move back to ``s_i``."""
    s, i = pp.play, pp.index
    chain = {i: 0}
    for j in range(i + 1, len(s)):
        k = s.moves[j][1]
        if k in chain:
            chain[j] = chain[k] + 1
    return max(chain.values())


def certify_trace(pp, a):
    return _certify(pp, a, co=False)


def certify_cotrace(pp, a):
    return _certify(pp, a, co=True)


def _certify(pp, a, co):
    if co:
        if residual_cosize(pp) > 2 * a.label + 1:
            return False
        entries = cocontext(pp)
    else:
        if residual_size(pp) > 2 * a.label:
            return False
        entries = context(pp)
    for m in entries:
        at = PointedPlay(pp.play, m)
        r = residual_depth(at)
        if not any(r <= d and _certify(at, c, co=True) for d, c in a.children):
            return False
    return True


def in_interaction(pp, a, d, b):
    """``(s, i)`` is an interaction of ``a`` and ``b`` at depth ``d``."""
    return residual_depth(pp) <= d and certify_trace(pp, a) and certify_cotrace(pp, b)


def triple_reducts(a, d, b):
    """Reducts of the triple ``(a, d, b)``, read as the skeleton ``a ._d b``."""
    if a.label < 1:
        return []
    lowered = Skeleton(a.label - 1, a.children + ((d, b),))
    out = [(c, e - 1, lowered) for e, c in a.children if e >= 1]
    if d >= 1:
        out.append((b, d - 1, lowered))
    return out


def check_play_simulation(s, params):
    """Track every skeleton triple that certifies ``(s, i)``, one move at a time.

    Returns the first index at which no reduct certifies the extended play, or
    ``None`` when the whole play is simulated.
    """
    if not len(s):
        return None
    states = {(Skeleton(params.n), params.d, Skeleton(params.p))}
    states = {t for t in states if in_interaction(PointedPlay(s, 0), *t)}
    if not states:
        return 0
    for i in range(1, len(s)):
        pp = PointedPlay(s, i)
        states = {r for t in states for r in triple_reducts(*t) if in_interaction(pp, *r)}
        if not states:
            return i
    return None
