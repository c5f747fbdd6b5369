"""Independent brute-force implementations used to cross-check the package.

Skeletons here are plain ``(label, frozenset((edge, child)))`` tuples with no
hash-consing and no pruning; terms are walked directly from their
constructors.
"""

from lhrkit.lambda_core import Abs, App, Const, Var, level
from lhrkit.skeleton import Skeleton


def to_tuple(a):
    return (a.label, frozenset((d, to_tuple(c)) for d, c in a.children))


def from_tuple(x):
    return Skeleton(x[0], [(d, from_tuple(c)) for d, c in x[1]])


def tuple_reducts(x):
    n, kids = x
    if n < 1:
        return []
    lowered = (n - 1, kids)
    return [(c[0], c[1] | {(d - 1, lowered)}) for d, c in kids if d >= 1]


def tuple_norm(x, memo=None):
    """Length of the longest reduction sequence, by exhaustive search."""
    memo = {} if memo is None else memo
    if x not in memo:
        memo[x] = max((1 + tuple_norm(r, memo) for r in tuple_reducts(x)), default=0)
    return memo[x]


def _join(xs):
    xs = list(xs)
    if not xs:
        return (0, frozenset())
    return (max(x[0] for x in xs), frozenset().union(*(x[1] for x in xs)))


def interp(t, env=None, args=()):
    """Skeleton (as a tuple) of ``t`` applied to ``args`` under ``env``."""
    env = env or {}
    if isinstance(t, App):
        return interp(t.fn, env, (t.arg,) + tuple(args))
    if isinstance(t, Abs):
        if not args:
            return interp(t.body, env)
        inner = dict(env)
        inner[t.var] = interp(args[0], env)
        return interp(t.body, inner, args[1:])
    if isinstance(t, Const):
        return (0, frozenset())
    assert isinstance(t, Var)
    j = _join(interp(a, env) for a in args)
    base = (j[0] + 1, j[1])
    if t.id in env:
        return (base[0], base[1] | {(level(t.type) + 1, env[t.id])})
    return base


def prime_pairs(t):
    """Prime redexes as ``(binder id, argument)`` pairs, by the recursive clauses:
    ``(\\x.M) N1 ... Nn`` contributes ``(x, N1)`` and the prime redexes of
    ``M N2 ... Nn``; an abstraction with no arguments those of its body."""
    head, args = t, []
    while isinstance(head, App):
        args.append(head.arg)
        head = head.fn
    args.reverse()
    if not isinstance(head, Abs):
        return set()
    if not args:
        return prime_pairs(head.body)
    rest = head.body
    for a in args[1:]:
        rest = App(rest, a)
    return {(head.var, args[0])} | prime_pairs(rest)


def generalized_redex_pairs(t):
    """Prime redexes of every subterm."""
    out = prime_pairs(t)
    if isinstance(t, Abs):
        out |= generalized_redex_pairs(t.body)
    elif isinstance(t, App):
        out |= generalized_redex_pairs(t.fn) | generalized_redex_pairs(t.arg)
    return out


# -- pointer structures ------------------------------------------------------------


def rec_p_view(moves):
    """P-view by the recursive clauses, as a list of indices."""
    if not moves:
        return []
    i = len(moves) - 1
    k, j = moves[i]
    if k % 2 == 1:
        return rec_p_view(moves[:i]) + [i]
    if j is None:
        return [i]
    return rec_p_view(moves[:j]) + [j, i]


def rec_o_view(moves):
    if not moves:
        return []
    i = len(moves) - 1
    k, j = moves[i]
    if k % 2 == 0:
        return rec_o_view(moves[:i]) + [i]
    return rec_o_view(moves[:j]) + [j, i]


def _admissible(moves, n, p, d):
    i = len(moves) - 1
    k, j = moves[i]
    if k > d or k % 2 != i % 2:
        return False
    if j is not None:
        prior = rec_o_view(moves[:i]) if k % 2 == 0 else rec_p_view(moves[:i])
        if j not in prior:
            return False
    return len(rec_p_view(moves)) <= 2 * n and len(rec_o_view(moves)) <= 2 * p + 1


def brute_star(n, p, d, max_len=12):
    """All plays of ``n *_d p`` up to ``max_len`` moves: every legal pointer
    choice is tried and filtered by the definitions; returns the set of plays
    (as move tuples) and the subset of maximal ones."""
    plays = {()}
    frontier = [()]
    while frontier:
        s = frontier.pop()
        if len(s) >= max_len:
            raise RuntimeError("length limit reached")
        cands = [(0, None)] if not s else [(s[j][0] + 1, j) for j in range(len(s))]
        for m in cands:
            t = s + (m,)
            if _admissible(t, n, p, d):
                plays.add(t)
                frontier.append(t)
    extended = {t[:-1] for t in plays if t}
    return plays, {s for s in plays if s not in extended}
