"""Interpretation of terms as skeletons, and the simulation check for lhr."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PreconditionFailed
from .reduction import DEFAULT_STEP_BUDGET, lhr_run
from .skeleton import Skeleton, add_root, embeds, graft, join, reducts
from .lambda_core import Abs, App, Const, Var, free_vars, level, spine, type_of, O
from .transforms import is_eta_long, scope_report


def interpret(t, env=None):
    """Skeleton of ``t`` under a skeleton environment (variable id -> skeleton).

    ``* Ms`` is 0; ``x Ms`` is one plus the join of the arguments, grafted on
    ``env[x]`` along ``lv(x)+1`` when ``x`` is bound; abstractions are
    transparent; ``(\\x.M) M1 Ms`` binds ``x`` to the value of ``M1``.
    """
    env = dict(env or {})

    def go(head, args, env):
        while True:
            if isinstance(head, App):
                h, extra = spine(head)
                head, args = h, extra + args
            elif isinstance(head, Abs) and not args:
                head = head.body
            else:
                break
        if isinstance(head, Const):
            return Skeleton(0)
        if isinstance(head, Var):
            base = add_root(1, join(go(a, [], env) for a in args))
            if head.id in env:
                return graft(base, level(head.type) + 1, env[head.id])
            return base
        inner = dict(env)
        inner[head.var] = go(args[0], [], env)
        return go(head.body, args[1:], inner)

    return go(t, [], env)


def env_to_bsenv(env):
    """Skeleton environment of a closure environment."""
    return {x: interpret(c.term, env_to_bsenv(c.env)) for x, c in env.items()}


@dataclass
class SimulationReport:
    ok: bool
    steps: int
    witnesses: list = field(default_factory=list)
    failed_at: int | None = None


def check_preconditions(t):
    if free_vars(t):
        raise PreconditionFailed("term is not closed")
    if type_of(t) != O:
        raise PreconditionFailed("term is not of ground type")
    if not is_eta_long(t):
        raise PreconditionFailed("term is not eta-long")
    if not scope_report(t).locally_scoped:
        raise PreconditionFailed("term is not locally scoped")


def check_simulation(t, budget=DEFAULT_STEP_BUDGET):
    """Each lhr step ``M -> M'`` has a reduct ``a`` of [[M]] with [[M']] embedding into ``a``."""
    check_preconditions(t)
    trace = lhr_run(t, budget)
    report = SimulationReport(True, trace.count)
    terms = trace.terms
    cur = interpret(terms[0])
    for i in range(trace.count):
        nxt = interpret(terms[i + 1])
        witness = next((r for r in reducts(cur) if embeds(nxt, r)), None)
        if witness is None:
            report.ok = False
            report.failed_at = i
            return report
        report.witnesses.append(witness)
        cur = nxt
    return report
