"""Term transformations that preserve or increase the lhr step count.

Restricted eta-expansion makes terms eta-long for linear head reduction,
lambda-lifting makes them strongly locally scoped, and variable expansion
trades depth and local height for plain height.  The module also computes
the auxiliary quantities used to control these transformations.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import BudgetExceeded, PreconditionFailed
from .reduction import DEFAULT_STEP_BUDGET, generalized_redexes
from .lambda_core import (
    Abs,
    App,
    Arrow,
    Const,
    Var,
    apps,
    at,
    fresh_supply,
    free_vars,
    is_closed,
    level,
    replace_at,
    spine,
    subterms,
    type_of,
    type_size,
    uncurry,
)


def _spine_fold(t, leaf, redex):
    """Fold over the four spine shapes; ``leaf(head, [sub results])``, ``redex(rest, arg)``."""

    def go(head, args):
        while True:
            if isinstance(head, App):
                h, extra = spine(head)
                head, args = h, extra + args
            elif isinstance(head, Abs) and not args:
                head = head.body
            else:
                break
        if isinstance(head, (Var, Const)):
            return leaf(head, [go(a, []) for a in args])
        return redex(go(head.body, args[1:]), go(args[0], []))

    return go(t, [])


# -- eta --------------------------------------------------------------------


def deficiency(t):
    def leaf(head, subs):
        missing = uncurry(head.type)[0][len(subs):]
        return sum(subs) + sum(type_size(a) for a in missing)

    return _spine_fold(t, leaf, lambda rest, arg: rest + arg)


def is_eta_long(t):
    return deficiency(t) == 0


def eta_expand_at(t, path, supply=None):
    """``N ~> \\y. N y`` at ``path``; ``N`` must have an arrow type."""
    n = at(t, path)
    ty = type_of(n)
    if not isinstance(ty, Arrow):
        raise PreconditionFailed(f"no arrow type at {list(path)}")
    supply = supply if supply is not None else fresh_supply(t)
    y = Var(next(supply), ty.dom, "y")
    return replace_at(t, path, Abs(y.id, y.type, App(n, y), y.name))


def eta_positions(t):
    """Every position where an eta-expansion is possible, outermost first."""
    return [p for p, s in subterms(t) if isinstance(type_of(s), Arrow)]


def _pending(t):
    """Number of arguments each subterm receives along the spine that contains it."""
    out = {}
    stack = [((), t, 0)]
    while stack:
        p, s, k = stack.pop()
        out[p] = k
        if isinstance(s, App):
            stack.append((p + ("fn",), s.fn, k + 1))
            stack.append((p + ("arg",), s.arg, 0))
        elif isinstance(s, Abs):
            stack.append((p + ("body",), s.body, max(k - 1, 0)))
    return out


def restricted_eta_positions(t):
    """Positions where eta-expansion creates no new generalized redex.

    ``N`` at position ``p`` qualifies when it has an arrow type, receives no
    argument along its spine, and following its own spine never reaches an
    unapplied abstraction (which would absorb the new variable).
    """
    pend = _pending(t)
    out = []
    for p, s in subterms(t):
        if pend[p] or not isinstance(type_of(s), Arrow):
            continue
        q, cur = p, s
        while True:
            if isinstance(cur, App):
                q, cur = q + ("fn",), cur.fn
            elif isinstance(cur, Abs):
                if pend[q] == 0:
                    break
                q, cur = q + ("body",), cur.body
            else:
                out.append(p)
                break
    return out


def eta_restricted_step(t):
    pos = restricted_eta_positions(t)
    return eta_expand_at(t, pos[0]) if pos else None


def eta_long_normalize(t, budget=DEFAULT_STEP_BUDGET):
    """Apply restricted eta-expansions until none is left."""
    supply = fresh_supply(t)
    steps = 0
    while True:
        pos = restricted_eta_positions(t)
        if not pos:
            return t
        if steps >= budget:
            raise BudgetExceeded("eta-long normalisation", budget)
        t = eta_expand_at(t, pos[0], supply)
        steps += 1


# -- local scope ------------------------------------------------------------


@dataclass
class ScopeReport:
    locally_scoped: bool
    strongly_locally_scoped: bool
    violations: list


def _redex_args(t):
    return [(r, at(t, r.arg_path)) for r in generalized_redexes(t)]


def scope_report(t):
    """Check local scope: generalized-redex arguments only mention active variables.

    A variable is active when it is free in ``t`` or is the binder of some
    generalized redex.  Strong local scope asks for closed arguments.
    """
    pairs = _redex_args(t)
    active = set(free_vars(t)) | {r.binder for r, _ in pairs}
    violations = []
    closed = True
    for r, n in pairs:
        fv = free_vars(n)
        if fv:
            closed = False
        for v in sorted(fv.values(), key=lambda v: v.id):
            if v.id not in active:
                violations.append((r, v))
    return ScopeReport(not violations, closed, violations)


# -- lambda lifting ---------------------------------------------------------


def _retype(t, var, ty, extra):
    """Replace every occurrence of ``var`` by ``var' extra`` where ``var'`` has type ``ty``."""

    def go(t):
        if isinstance(t, Var):
            return App(Var(var, ty, t.name), extra) if t.id == var else t
        if isinstance(t, Const):
            return t
        if isinstance(t, Abs):
            return Abs(t.var, t.var_type, go(t.body), t.name)
        return App(go(t.fn), go(t.arg))

    return go(t)


def _rename_free(t, old, new):
    def go(t):
        if isinstance(t, Var):
            return new if t.id == old else t
        if isinstance(t, Const):
            return t
        if isinstance(t, Abs):
            return Abs(t.var, t.var_type, go(t.body), t.name)
        return App(go(t.fn), go(t.arg))

    return go(t)


def _lift_one(h, args, y, supply):
    """``(\\x.M) M1 .. Mn  ~>  (\\x. M[x y/x]) (\\y'. M1[y'/y]) M2 .. Mn``."""
    m1 = args[0]
    new_x = Arrow(y.type, h.var_type)
    body = _retype(h.body, h.var, new_x, y)
    y2 = Var(next(supply), y.type, y.name)
    lifted = Abs(y2.id, y2.type, _rename_free(m1, y.id, y2), y2.name)
    return Abs(h.var, new_x, body, h.name), [lifted] + args[1:]


def _lifts(t, supply):
    h, args = spine(t)
    if isinstance(h, (Var, Const)):
        for i, a in enumerate(args):
            for a2 in _lifts(a, supply):
                yield apps(h, *args[:i], a2, *args[i + 1:])
        return
    if not args:
        for b in _lifts(h.body, supply):
            yield Abs(h.var, h.var_type, b, h.name)
        return
    m1 = args[0]
    fv = free_vars(m1)
    for y in sorted(fv.values(), key=lambda v: v.id):
        nh, nargs = _lift_one(h, args, y, supply)
        yield apps(nh, *nargs)
    for m1b in _lifts(m1, supply):
        yield apps(h, m1b, *args[1:])
    if fv:
        return
    rest = args[1:]
    for v in _lifts(apps(h.body, *rest), supply):
        # lifting keeps the outer spine, so peel the trailing arguments back off
        new_rest = []
        for _ in rest:
            new_rest.append(v.arg)
            v = v.fn
        new_rest.reverse()
        yield apps(Abs(h.var, h.var_type, v, h.name), m1, *new_rest)


def lambda_lift_steps(t):
    """All one-step lambda-lifting reducts, the deterministic choice first."""
    return list(_lifts(t, fresh_supply(t)))


def lambda_lift_step(t, supply=None):
    supply = supply if supply is not None else fresh_supply(t)
    return next(_lifts(t, supply), None)


def lambda_lift_normalize(t, budget=DEFAULT_STEP_BUDGET):
    """Lift until normal form; the result of a closed term is strongly locally scoped."""
    if not is_closed(t):
        raise PreconditionFailed("lambda-lifting expects a closed term")
    supply = fresh_supply(t)
    steps = 0
    while True:
        nxt = lambda_lift_step(t, supply)
        if nxt is None:
            return t
        if steps >= budget:
            raise BudgetExceeded("lambda-lifting", budget)
        t = nxt
        steps += 1


# -- binding distance -------------------------------------------------------


def binding_distances(t):
    """Binding distance of every variable occurrence, keyed by path.

    The head occurrence has distance 0.  An occurrence free in the argument
    ``M1`` of ``(\\y.M') M1 .. Mn`` is pushed one level further than the
    farthest occurrence of ``y`` in ``M'``.
    """
    def go(t, path, args):
        head, hp, extra = _spine(t, path)
        args = extra + args
        while isinstance(head, Abs) and not args:
            head, hp, more = _spine(head.body, hp + ("body",))
            args = more
        res = {}
        if isinstance(head, (Var, Const)):
            if isinstance(head, Var):
                res[hp] = (0, head.id)
            for a, ap in args:
                res.update(go(a, ap, []))
            return res
        (m1, p1), rest = args[0], args[1:]
        inner = go(head.body, hp + ("body",), rest)
        far = max((d for d, v in inner.values() if v == head.var), default=0)
        fv1 = set(free_vars(m1))
        for p, (d, v) in go(m1, p1, []).items():
            res[p] = (far + d + 1, v) if v in fv1 else (d, v)
        res.update(inner)
        return res

    return {p: d for p, (d, _) in go(t, (), []).items()}


def _spine(t, path):
    args = []
    while isinstance(t, App):
        args.append((t.arg, path + ("arg",)))
        t = t.fn
        path = path + ("fn",)
    args.reverse()
    return t, path, args


def distance_multiset(t):
    return Counter(binding_distances(t).values())


def multiset_less(a, b):
    """Dershowitz-Manna order: ``a < b`` for multisets given as Counters."""
    a, b = Counter(a), Counter(b)
    if a == b:
        return False
    for x in a:
        if a[x] > b[x] and not any(y > x and b[y] > a[y] for y in b):
            return False
    return True


# -- weighted measures ------------------------------------------------------


@dataclass
class WeightedReport:
    weighted_order: int
    weighted_local_height: int
    deficiency: int
    carriers: set
    locals: set
    distances: Counter


def _variables(t):
    out = {}
    for _, s in subterms(t):
        if isinstance(s, Var):
            out.setdefault(s.id, s.type)
        elif isinstance(s, Abs):
            out.setdefault(s.var, s.var_type)
    return out


def lh_weighted(t, heavy):
    def leaf(head, subs):
        if isinstance(head, Const):
            return 0
        if head.id in heavy:
            return 1 + max(1, max(subs, default=0))
        return 1 + max(subs, default=0)

    return _spine_fold(t, leaf, max)


def weighted_measures(t):
    pairs = _redex_args(t)
    fvs = [set(free_vars(n)) for _, n in pairs]
    tainted = set().union(*fvs) if fvs else set()
    variables = _variables(t)
    locals_ = {v for v in variables if v not in tainted}
    carriers = {r.binder for (r, _), fv in zip(pairs, fvs) if fv}
    weights = [level(ty) + (1 if v in locals_ else 2) for v, ty in variables.items()]
    weights += [level(s.type) for _, s in subterms(t) if isinstance(s, Const)]
    return WeightedReport(
        weighted_order=max(weights),
        weighted_local_height=lh_weighted(t, carriers),
        deficiency=deficiency(t),
        carriers=carriers,
        locals=locals_,
        distances=distance_multiset(t),
    )


# -- variable expansion and grounding ---------------------------------------


def expand_variables(t):
    """Replace each variable occurrence ``x`` by ``\\y1..yn. x y1 .. yn``."""
    supply = fresh_supply(t)

    def go(t):
        if isinstance(t, Var):
            doms = uncurry(t.type)[0]
            ys = [Var(next(supply), a, "y") for a in doms]
            out = apps(t, *ys)
            for y in reversed(ys):
                out = Abs(y.id, y.type, out, y.name)
            return out
        if isinstance(t, Const):
            return t
        if isinstance(t, Abs):
            return Abs(t.var, t.var_type, go(t.body), t.name)
        return App(go(t.fn), go(t.arg))

    return go(t)


def ground_close(t):
    """Replace free variables by constants, then apply constants until the type is ``o``."""
    fv = free_vars(t)

    def go(t):
        if isinstance(t, Var):
            return Const(t.type) if t.id in fv else t
        if isinstance(t, Const):
            return t
        if isinstance(t, Abs):
            return Abs(t.var, t.var_type, go(t.body), t.name)
        return App(go(t.fn), go(t.arg))

    t = go(t)
    ty = type_of(t)
    while isinstance(ty, Arrow):
        t = App(t, Const(ty.dom))
        ty = ty.cod
    return t
