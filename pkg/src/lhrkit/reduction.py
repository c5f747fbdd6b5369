"""Linear head reduction, its environment machine, and plain beta reduction."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import BudgetExceeded
from .lambda_core import (
    ARG,
    BODY,
    Abs,
    App,
    Arrow,
    Const,
    O,
    Var,
    at,
    fresh_supply,
    is_hygienic,
    barendregt,
    rename_bound,
    replace_at,
    spine_paths,
    subterms,
)

DEFAULT_STEP_BUDGET = 10**5


@dataclass(frozen=True)
class Redex:
    """A pair (binder, argument) located by paths from the root."""

    abs_path: tuple
    binder: int
    arg_path: tuple


def walk(t, path=()):
    """Follow the spine of ``t``, pairing head abstractions with arguments.

    Returns ``(redexes, head, head_path, leftover_args)`` where ``head`` is the
    head occurrence (a variable or a constant) and ``redexes`` are the prime
    redexes of ``t`` in the order they are met.
    """
    h, hp, args = spine_paths(t, path)
    found = []
    while isinstance(h, Abs):
        if args:
            found.append(Redex(hp, h.var, args[0][1]))
            args = args[1:]
        bh, bhp, bargs = spine_paths(h.body, hp + (BODY,))
        h, hp, args = bh, bhp, bargs + args
    return found, h, hp, args


def prime_redexes(t):
    return walk(t)[0]


def generalized_redexes(t):
    """Prime redexes of all subterms, located from the root of ``t``.

    Walks starting at the root and at each argument position cover every
    subterm: the redexes of a function-position subterm or of a body reached
    along a walk are contained in those of the walk itself.
    """
    seen = {}
    starts = [()]
    starts += [p + (ARG,) for p, s in subterms(t) if isinstance(s, App)]
    for p in starts:
        for r in walk(at(t, p), p)[0]:
            seen.setdefault(r.abs_path, r)
    return sorted(seen.values(), key=lambda r: r.abs_path)


def head_occurrence(t):
    """Path of the leftmost variable or constant."""
    path = []
    while True:
        if isinstance(t, App):
            t = t.fn
            path.append("fn")
        elif isinstance(t, Abs):
            t = t.body
            path.append(BODY)
        else:
            return tuple(path)


# -- linear head reduction ---------------------------------------------------


class Halt(str, Enum):
    HEAD_CONSTANT = "head constant"
    HEAD_FREE = "head variable not bound by a prime redex"


@dataclass
class LhrStep:
    redex: Redex
    head_path: tuple
    term: object


@dataclass
class LhrTrace:
    start: object
    steps: list = field(default_factory=list)
    halt: Halt | None = None

    @property
    def count(self):
        return len(self.steps)

    @property
    def terms(self):
        return [self.start] + [s.term for s in self.steps]

    @property
    def final(self):
        return self.steps[-1].term if self.steps else self.start


def lhr_step(t, supply=None):
    """One linear head reduction step, or ``(None, reason)`` when ``t`` is in normal form."""
    supply = supply if supply is not None else fresh_supply(t)
    found, head, hp, _ = walk(t)
    if isinstance(head, Const):
        return None, Halt.HEAD_CONSTANT
    for r in found:
        if r.binder == head.id:
            copy = rename_bound(at(t, r.arg_path), supply)
            return LhrStep(r, hp, replace_at(t, hp, copy)), None
    return None, Halt.HEAD_FREE


def lhr_run(t, budget=DEFAULT_STEP_BUDGET):
    if not is_hygienic(t):
        t = barendregt(t)
    supply = fresh_supply(t)
    trace = LhrTrace(t)
    cur = t
    while True:
        step, reason = lhr_step(cur, supply)
        if step is None:
            trace.halt = reason
            return trace
        if trace.count >= budget:
            raise BudgetExceeded("linear head reduction", budget)
        trace.steps.append(step)
        cur = step.term


def lhr_count(t, budget=DEFAULT_STEP_BUDGET):
    return lhr_run(t, budget).count


# -- closure machine ---------------------------------------------------------


@dataclass(frozen=True)
class Closure:
    term: object
    env: dict = field(default_factory=dict, hash=False)


def machine_step(t, env, supply):
    """One transition of the environment machine.

    ``x M1..Mn`` with ``x`` in the environment becomes ``s(x) M1..Mn``;
    under an unapplied abstraction the machine goes into the body; at
    ``(\\y.M) M1..Mn`` it binds ``y`` to the closure of ``M1`` and continues
    with ``M M2..Mn``.  Returns ``(new_term, env_at_head)`` or ``None``.
    """

    def go(head, hp, args, env):
        if isinstance(head, App):
            h, p, extra = spine_paths(head, hp)
            return go(h, p, extra + args, env)
        if isinstance(head, Const):
            return None
        if isinstance(head, Var):
            if head.id not in env:
                return None
            return hp, env
        if not args:
            return go(head.body, hp + (BODY,), [], env)
        (m1, _), rest = args[0], args[1:]
        inner = dict(env)
        inner[head.var] = Closure(m1, env)
        return go(head.body, hp + (BODY,), rest, inner)

    hit = go(t, (), [], env)
    if hit is None:
        return None
    hp, reached = hit
    x = at(t, hp)
    return replace_at(t, hp, rename_bound(reached[x.id].term, supply)), reached


@dataclass
class MachineTrace:
    terms: list
    envs: list


def machine_run(closure, budget=DEFAULT_STEP_BUDGET):
    t, env = closure.term, dict(closure.env)
    extra = [c.term for c in _closure_terms(env)]
    supply = fresh_supply(t, *extra)
    out = MachineTrace([t], [])
    while True:
        res = machine_step(t, env, supply)
        if res is None:
            return out
        if len(out.envs) >= budget:
            raise BudgetExceeded("closure machine", budget)
        t, reached = res
        out.terms.append(t)
        out.envs.append(reached)


def _closure_terms(env):
    seen = []
    stack = list(env.values())
    while stack:
        c = stack.pop()
        seen.append(c)
        stack.extend(c.env.values())
    return seen


def is_flat(env):
    """Every closure environment in ``env`` is contained in ``env`` itself."""
    for c in env.values():
        for k, v in c.env.items():
            if k not in env or env[k] is not v and env[k] != v:
                return False
    return True


# -- beta --------------------------------------------------------------------


def is_beta_redex(t):
    return isinstance(t, App) and isinstance(t.fn, Abs)


def beta_redex_paths(t):
    return [p for p, s in subterms(t) if is_beta_redex(s)]


def substitute(t, var, value, supply):
    """Replace every free occurrence of ``var`` in ``t`` by a fresh copy of ``value``."""

    def go(t):
        if isinstance(t, Var):
            return rename_bound(value, supply) if t.id == var else t
        if isinstance(t, Const):
            return t
        if isinstance(t, Abs):
            return Abs(t.var, t.var_type, go(t.body), t.name)
        return App(go(t.fn), go(t.arg))

    return go(t)


def beta_at(t, path, supply=None):
    supply = supply if supply is not None else fresh_supply(t)
    r = at(t, path)
    return replace_at(t, path, substitute(r.fn.body, r.fn.var, r.arg, supply))


def beta_reducts(t):
    if not is_hygienic(t):
        t = barendregt(t)
    return [beta_at(t, p) for p in beta_redex_paths(t)]


def beta_normalize(t, budget=DEFAULT_STEP_BUDGET):
    """Leftmost-outermost normalisation; returns ``(normal_form, steps)``."""
    if not is_hygienic(t):
        t = barendregt(t)
    supply = fresh_supply(t)
    steps = 0
    while True:
        paths = next((p for p, s in subterms(t) if is_beta_redex(s)), None)
        if paths is None:
            return t, steps
        if steps >= budget:
            raise BudgetExceeded("beta normalisation", budget)
        t = beta_at(t, paths, supply)
        steps += 1


NUMERAL_F = Arrow(O, O)


def numeral_value(t):
    """``n`` when ``t`` is ``\\f:o->o. \\x:o. f^n x``, otherwise ``None``."""
    if not (isinstance(t, Abs) and t.var_type == NUMERAL_F):
        return None
    inner = t.body
    if not (isinstance(inner, Abs) and inner.var_type == O):
        return None
    f, x, body, n = t.var, inner.var, inner.body, 0
    while isinstance(body, App):
        if not (isinstance(body.fn, Var) and body.fn.id == f):
            return None
        body = body.arg
        n += 1
    if isinstance(body, Var) and body.id == x:
        return n
    return None
