"""Simply typed lambda terms, Church style, with one ground type ``o``.

Variables carry a numeric identity, their type and a display name.  Only the
identity (and type) matters for equality; names are cosmetic.  Operations
that need fresh variables draw them above the largest identity already in
use, so results stay hygienic: every binder is distinct from every other
binder and from every free variable (the Barendregt convention).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

from .errors import LhrError


# -- types ------------------------------------------------------------------


@dataclass(frozen=True)
class Base:
    def __str__(self):
        return "o"


@dataclass(frozen=True)
class Arrow:
    dom: "Type"
    cod: "Type"

    def __str__(self):
        d = str(self.dom)
        if isinstance(self.dom, Arrow):
            d = f"({d})"
        return f"{d}->{self.cod}"


Type = Union[Base, Arrow]
O = Base()


def arrow(*tys):
    """``arrow(A, B, C)`` is ``A -> B -> C``."""
    out = tys[-1]
    for t in reversed(tys[:-1]):
        out = Arrow(t, out)
    return out


@lru_cache(maxsize=None)
def level(ty):
    if isinstance(ty, Base):
        return 0
    return max(level(ty.dom) + 1, level(ty.cod))


@lru_cache(maxsize=None)
def type_size(ty):
    if isinstance(ty, Base):
        return 1
    return type_size(ty.dom) + type_size(ty.cod)


def uncurry(ty):
    """Split ``A1 -> ... -> An -> o`` into ``([A1, ..., An], o)``."""
    args = []
    while isinstance(ty, Arrow):
        args.append(ty.dom)
        ty = ty.cod
    return args, ty


# -- terms ------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    id: int
    type: Type
    name: str = field(default="x", compare=False)

    def __repr__(self):
        return f"{self.name}#{self.id}"


@dataclass(frozen=True)
class Const:
    type: Type

    def __repr__(self):
        return f"*:{self.type}"


@dataclass(frozen=True)
class Abs:
    var: int
    var_type: Type
    body: "Term"
    name: str = field(default="x", compare=False)

    def __repr__(self):
        return f"(\\{self.name}#{self.var}:{self.var_type}. {self.body!r})"

    @property
    def binder(self):
        return Var(self.var, self.var_type, self.name)


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"

    def __repr__(self):
        return f"({self.fn!r} {self.arg!r})"


Term = Union[Var, Const, Abs, App]

FN, ARG, BODY = "fn", "arg", "body"


class IllTyped(LhrError):
    def __init__(self, path, expected, found):
        super().__init__(f"ill-typed at {list(path)}: expected {expected}, found {found}")
        self.path = tuple(path)
        self.expected = expected
        self.found = found


class NotAVariable(LhrError):
    pass


class TypeMismatch(LhrError):
    pass


class Capture(LhrError):
    pass


class InvalidPath(LhrError):
    pass


def lam(v, body):
    """Build ``\\v. body`` from a ``Var``."""
    return Abs(v.id, v.type, body, v.name)


def apps(head, *args):
    for a in args:
        head = App(head, a)
    return head


def spine(t):
    """``t = h a1 ... an`` with ``h`` not an application."""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def spine_paths(t, path=()):
    """Like :func:`spine` but also returns the path of the head and of each argument."""
    args = []
    while isinstance(t, App):
        args.append((t.arg, path + (ARG,)))
        t = t.fn
        path = path + (FN,)
    args.reverse()
    return t, path, args


# -- typing -----------------------------------------------------------------


def type_of(t):
    """Type of a term, trusting annotations (no checking)."""
    while True:
        if isinstance(t, (Var, Const)):
            return t.type
        if isinstance(t, Abs):
            return Arrow(t.var_type, type_of(t.body))
        n = 0
        while isinstance(t, App):
            n += 1
            t = t.fn
        ty = type_of(t)
        for _ in range(n):
            ty = ty.cod
        return ty


def typecheck(t, context=None):
    """Check ``t`` against ``context`` (id -> type) and return its type."""
    ctx = dict(context or {})

    def go(t, path, ctx):
        if isinstance(t, Var):
            want = ctx.get(t.id)
            if want is not None and want != t.type:
                raise IllTyped(path, want, t.type)
            return t.type
        if isinstance(t, Const):
            return t.type
        if isinstance(t, Abs):
            inner = dict(ctx)
            inner[t.var] = t.var_type
            return Arrow(t.var_type, go(t.body, path + (BODY,), inner))
        f = go(t.fn, path + (FN,), ctx)
        a = go(t.arg, path + (ARG,), ctx)
        if not isinstance(f, Arrow):
            raise IllTyped(path + (FN,), Arrow(a, O), f)
        if f.dom != a:
            raise IllTyped(path + (ARG,), f.dom, a)
        return f.cod

    return go(t, (), ctx)


# -- traversal --------------------------------------------------------------


def subterms(t, path=()):
    """Yield ``(path, subterm)`` in pre-order (outermost first, left to right)."""
    stack = [(path, t)]
    while stack:
        p, s = stack.pop()
        yield p, s
        if isinstance(s, Abs):
            stack.append((p + (BODY,), s.body))
        elif isinstance(s, App):
            stack.append((p + (ARG,), s.arg))
            stack.append((p + (FN,), s.fn))


def at(t, path):
    for step in path:
        if step == FN and isinstance(t, App):
            t = t.fn
        elif step == ARG and isinstance(t, App):
            t = t.arg
        elif step == BODY and isinstance(t, Abs):
            t = t.body
        else:
            raise InvalidPath(f"cannot follow {step!r} into {t!r}")
    return t


def replace_at(t, path, new):
    if not path:
        return new
    step, rest = path[0], path[1:]
    if step == FN and isinstance(t, App):
        return App(replace_at(t.fn, rest, new), t.arg)
    if step == ARG and isinstance(t, App):
        return App(t.fn, replace_at(t.arg, rest, new))
    if step == BODY and isinstance(t, Abs):
        return Abs(t.var, t.var_type, replace_at(t.body, rest, new), t.name)
    raise InvalidPath(f"cannot follow {step!r} into {t!r}")


def binders_on_path(t, path):
    out = []
    for step in path:
        if isinstance(t, Abs):
            out.append(t)
        t = at(t, (step,))
    return out


def free_vars(t):
    """Free variables as a dict id -> Var."""
    out = {}

    def go(t, bound):
        if isinstance(t, Var):
            if t.id not in bound:
                out.setdefault(t.id, t)
        elif isinstance(t, Abs):
            go(t.body, bound | {t.var})
        elif isinstance(t, App):
            go(t.fn, bound)
            go(t.arg, bound)

    go(t, frozenset())
    return out


def is_closed(t):
    return not free_vars(t)


def all_ids(t):
    ids = set()
    for _, s in subterms(t):
        if isinstance(s, Var):
            ids.add(s.id)
        elif isinstance(s, Abs):
            ids.add(s.var)
    return ids


def max_id(*terms):
    return max((i for t in terms for i in all_ids(t)), default=-1)


def fresh_supply(*terms):
    """Iterator of identities unused by any of ``terms``."""
    return itertools.count(max_id(*terms) + 1)


def rename_bound(t, supply):
    """Copy of ``t`` whose binders all get fresh identities from ``supply``."""

    def go(t, env):
        if isinstance(t, Var):
            return Var(env[t.id], t.type, t.name) if t.id in env else t
        if isinstance(t, Const):
            return t
        if isinstance(t, Abs):
            new = next(supply)
            return Abs(new, t.var_type, go(t.body, {**env, t.var: new}), t.name)
        return App(go(t.fn, env), go(t.arg, env))

    return go(t, {})


def barendregt(t):
    """Alpha-equivalent copy in which binders are pairwise distinct and distinct from free variables."""
    return rename_bound(t, fresh_supply(t))


def is_hygienic(t):
    seen = set()
    for _, s in subterms(t):
        if isinstance(s, Abs):
            if s.var in seen:
                return False
            seen.add(s.var)
    return not (seen & set(free_vars(t)))


def _nameless(t, env, depth):
    if isinstance(t, Var):
        if t.id in env:
            return ("b", depth - env[t.id] - 1, t.type)
        return ("f", t.id, t.type)
    if isinstance(t, Const):
        return ("c", t.type)
    if isinstance(t, Abs):
        return ("l", t.var_type, _nameless(t.body, {**env, t.var: depth}, depth + 1))
    return ("a", _nameless(t.fn, env, depth), _nameless(t.arg, env, depth))


def nameless(t):
    """De Bruijn form: a hashable value equal exactly for alpha-equivalent terms."""
    return _nameless(t, {}, 0)


def alpha_eq(s, t):
    return nameless(s) == nameless(t)


def substitute_occurrence(t, path, replacement):
    """Replace the variable occurrence at ``path`` by ``replacement``.

    Identities are global: a free variable of ``replacement`` whose identity
    is bound on the way to ``path`` refers to that very binder.  A free
    variable bound elsewhere in ``t`` (by a binder not enclosing ``path``)
    would leave scope, which is reported as :class:`Capture`.
    """
    target = at(t, path)
    if not isinstance(target, Var):
        raise NotAVariable(f"no variable at {list(path)}: {target!r}")
    if type_of(replacement) != target.type:
        raise TypeMismatch(f"{type_of(replacement)} does not match {target.type}")
    enclosing = {a.var: a.var_type for a in binders_on_path(t, path)}
    bound_anywhere = {s.var for _, s in subterms(t) if isinstance(s, Abs)}
    for v in free_vars(replacement).values():
        if v.id in enclosing:
            if enclosing[v.id] != v.type:
                raise TypeMismatch(f"{v!r} disagrees with its binder")
        elif v.id in bound_anywhere:
            raise Capture(f"{v!r} is bound elsewhere and would leave its scope")
    return replace_at(t, path, replacement)


# -- measures ---------------------------------------------------------------


def length(t):
    if isinstance(t, (Var, Const)):
        return 1
    if isinstance(t, Abs):
        return length(t.body) + 1
    return length(t.fn) + length(t.arg)


def height(t):
    if isinstance(t, Const):
        return 0
    if isinstance(t, Var):
        return 1
    if isinstance(t, Abs):
        return height(t.body)
    return max(height(t.fn), height(t.arg) + 1)


def order(t):
    """Largest type level among all subterms."""

    def go(t):
        if isinstance(t, (Var, Const)):
            return t.type, level(t.type)
        if isinstance(t, Abs):
            ty, o = go(t.body)
            ty = Arrow(t.var_type, ty)
            return ty, max(o, level(ty))
        fty, fo = go(t.fn)
        _, ao = go(t.arg)
        return fty.cod, max(fo, ao, level(fty.cod))

    return go(t)[1]


def _spine_measure(t, leaf_const, leaf_var, redex):
    """Shared recursion for depth and local height over the four spine shapes."""

    def go(head, args):
        while True:
            if isinstance(head, App):
                h, extra = spine(head)
                head, args = h, extra + args
                continue
            if isinstance(head, Abs) and not args:
                head = head.body
                continue
            break
        if isinstance(head, Const):
            return leaf_const([go(a, []) for a in args])
        if isinstance(head, Var):
            return leaf_var(head, [go(a, []) for a in args])
        return redex(go(head.body, args[1:]), go(args[0], []))

    return go(t, [])


def depth(t):
    return _spine_measure(
        t,
        lambda sub: 1,
        lambda v, sub: max(sub, default=1),
        lambda rest, arg: max(rest, arg + 1),
    )


def local_height(t):
    return _spine_measure(
        t,
        lambda sub: 0,
        lambda v, sub: 1 + max(sub, default=0),
        lambda rest, arg: max(rest, arg),
    )


@dataclass
class Measures:
    order: int
    depth: int
    local_height: int
    height: int
    length: int


def measures(t):
    return Measures(order(t), depth(t), local_height(t), height(t), length(t))
