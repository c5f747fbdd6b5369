"""Random well-typed terms and the test corpora built from them."""

from __future__ import annotations

import itertools
import random

from .lambda_core import Abs, App, Arrow, Const, O, Var, apps, length, uncurry, type_of
from .skeleton import Skeleton
from .transforms import eta_long_normalize, expand_variables, ground_close, lambda_lift_normalize

NAMES = "xyzuvwfgh"


def random_type(rng, max_level=2, max_args=2):
    """A small random type of level at most ``max_level``."""
    if max_level == 0 or rng.random() < 0.35:
        return O
    n = rng.randint(1, max_args)
    args = [random_type(rng, max_level - 1, max_args) for _ in range(n)]
    out = O
    for a in reversed(args):
        out = Arrow(a, out)
    return out


class TermGen:
    """Type-directed generator of closed terms with a node budget."""

    def __init__(self, rng, max_level=2):
        self.rng = rng
        self.max_level = max_level
        self.ids = itertools.count()

    def fresh(self, ty):
        i = next(self.ids)
        return Var(i, ty, NAMES[i % len(NAMES)])

    def leaf(self, ty, ctx):
        cands = [v for v in ctx if v.type == ty]
        if cands and self.rng.random() < 0.85:
            return self.rng.choice(cands)
        return Const(ty)

    def heads(self, ty, ctx):
        """Variables whose type ends with ``ty`` after at least one argument."""
        out = []
        for v in ctx:
            doms, _ = uncurry(v.type)
            cur = v.type
            for k in range(1, len(doms) + 1):
                cur = cur.cod
                if cur == ty:
                    out.append((v, doms[:k]))
        return out

    def split(self, budget, parts):
        cuts = sorted(self.rng.randint(0, budget) for _ in range(parts - 1))
        bounds = [0] + cuts + [budget]
        return [max(1, bounds[i + 1] - bounds[i]) for i in range(parts)]

    def term(self, ty, ctx, budget):
        rng = self.rng
        if budget <= 1:
            return self.leaf(ty, ctx)
        options = []
        if isinstance(ty, Arrow):
            options += ["lam"] * 4
        heads = self.heads(ty, ctx)
        if heads:
            options += ["app"] * 5
        if budget >= 4:
            options += ["redex"] * 2
        options += ["leaf"]
        pick = rng.choice(options)
        if pick == "lam":
            x = self.fresh(ty.dom)
            return Abs(x.id, x.type, self.term(ty.cod, ctx + [x], budget - 1), x.name)
        if pick == "app":
            v, doms = rng.choice(heads)
            sizes = self.split(budget - 1, len(doms))
            return apps(v, *(self.term(a, ctx, s) for a, s in zip(doms, sizes)))
        if pick == "redex":
            a = random_type(rng, self.max_level - 1)
            x = self.fresh(a)
            s1, s2 = self.split(budget - 1, 2)
            body = self.term(ty, ctx + [x], s1)
            return App(Abs(x.id, a, body, x.name), self.term(a, ctx, s2))
        return self.leaf(ty, ctx)


def random_closed_term(rng, max_nodes=20, max_level=2):
    gen = TermGen(rng, max_level)
    while True:
        ty = random_type(rng, max_level)
        t = gen.term(ty, [], rng.randint(2, max_nodes))
        if length(t) <= max_nodes:
            return t


def random_closed_terms(count, seed=0, max_nodes=20, max_level=2):
    rng = random.Random(seed)
    return [random_closed_term(rng, max_nodes, max_level) for _ in range(count)]


def random_terms_of_type(count, ty, seed=0, max_nodes=20, max_level=2):
    """Closed terms of the given type (rejection on size only)."""
    rng = random.Random(seed)
    gen = TermGen(rng, max_level)
    out = []
    while len(out) < count:
        t = gen.term(ty, [], rng.randint(2, max_nodes))
        if length(t) <= max_nodes:
            out.append(t)
    return out


def standard_corpus(seed=0, size=200):
    """The default term corpus: random closed terms at levels 2 and 3."""
    half = size // 2
    return random_closed_terms(size - half, seed, 20, 2) + random_closed_terms(half, seed + 1, 20, 3)


def game_situation(t):
    """Compile a closed term into a closed, ground, eta-long, strongly locally scoped one."""
    t = ground_close(t)
    t = expand_variables(t)
    t = lambda_lift_normalize(t)
    return eta_long_normalize(t)


def game_situations(count, seed=0, max_nodes=10, max_level=2):
    return [game_situation(t) for t in random_closed_terms(count, seed, max_nodes, max_level)]


def is_ground(t):
    return type_of(t) == O


# -- skeletons ----------------------------------------------------------------


def random_skeleton(rng, depth=4, max_ord=3, max_label=3, max_kids=2):
    """Random skeleton of depth at most ``depth`` with bounded labels."""
    kids = []
    if depth > 1:
        for _ in range(rng.randint(0, max_kids)):
            kids.append((rng.randint(0, max_ord), random_skeleton(rng, depth - 1, max_ord, max_label, max_kids)))
    return Skeleton(rng.randint(0, max_label), kids)


def shrink(rng, a):
    """A random skeleton embedding into ``a``: labels lowered, children dropped or shrunk."""
    kids = []
    for d, c in a.children:
        if rng.random() < 0.25:
            continue
        kids.append((rng.randint(0, d), shrink(rng, c)))
    return Skeleton(rng.randint(0, a.label), kids)
