"""Command-line front end.

Exit status is 0 on success, 1 when a checked property fails and 2 on
usage, parse, type or budget errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import bounds, pointers, reduction, transforms
from . import skeleton as sk
from .compile import check_simulation, interpret
from .errors import LhrError
from .harness import SUITES, Record, harness_run
from .lambda_core import alpha_eq, measures, type_of
from .syntax import parse_context, parse_skeleton, parse_term, show_term

ENV_NODES = "LHRKIT_BUDGET_NODES"
ENV_STEPS = "LHRKIT_BUDGET_STEPS"


class UsageError(LhrError):
    pass


class Output:
    """Human-readable lines on stdout, or one JSON record per line with ``--json``."""

    def __init__(self, as_json, stream):
        self.as_json = as_json
        self.stream = stream
        self.failed = False

    def line(self, text=""):
        if not self.as_json:
            print(text, file=self.stream)

    def record(self, rec):
        if not rec.ok:
            self.failed = True
        if self.as_json:
            print(rec.to_json(), file=self.stream, flush=True)


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}")


def _read_term(args):
    ctx = parse_context(args.context) if getattr(args, "context", None) else None
    return parse_term(args.term, ctx)


# -- commands -----------------------------------------------------------------


def cmd_parse(args, out):
    t = _read_term(args)
    ty = type_of(t)
    out.line(show_term(t))
    out.line(f"type: {ty}")
    out.record(Record("parse", args.term, {}, show_term(t), str(ty), True))


def cmd_lhr(args, out):
    t = _read_term(args)
    trace = reduction.lhr_run(t, args.budget_steps)
    if args.trace:
        for i, step in enumerate(trace.steps, 1):
            out.line(f"{i}: {show_term(step.term)}")
    else:
        out.line(f"steps: {trace.count}")
        out.line(f"final: {show_term(trace.final)}")
    out.line(f"halt: {trace.halt.value}")
    out.record(Record("lhr", args.term, {"halt": trace.halt.value}, trace.count, None, True))


def cmd_machine(args, out):
    t = _read_term(args)
    run = reduction.machine_run(reduction.Closure(t, {}), args.budget_steps)
    steps = len(run.terms) - 1
    if args.trace:
        for i, term in enumerate(run.terms[1:], 1):
            out.line(f"{i}: {show_term(term)}")
    else:
        out.line(f"steps: {steps}")
        out.line(f"final: {show_term(run.terms[-1])}")
    agree = None
    if args.compare:
        trace = reduction.lhr_run(t, args.budget_steps)
        agree = trace.count == steps and all(alpha_eq(a, b) for a, b in zip(trace.terms, run.terms))
        out.line(f"agrees with lhr: {'yes' if agree else 'no'}")
    out.record(Record("machine", args.term, {}, steps, None, agree is not False))


def cmd_beta(args, out):
    t = _read_term(args)
    nf, steps = reduction.beta_normalize(t, args.budget_steps)
    n = reduction.numeral_value(nf)
    out.line(show_term(nf))
    out.line(f"steps: {steps}")
    if n is not None:
        out.line(f"numeral: {n}")
    out.record(Record("beta", args.term, {"numeral": n}, steps, None, True))


def cmd_measure(args, out):
    t = _read_term(args)
    m = measures(t)
    fields = {k: getattr(m, k) for k in m.__dataclass_fields__}
    for k, v in fields.items():
        out.line(f"{k}: {v}")
    if args.weighted:
        w = transforms.weighted_measures(t)
        out.line(f"weighted_order: {w.weighted_order}")
        out.line(f"weighted_local_height: {w.weighted_local_height}")
        out.line(f"deficiency: {w.deficiency}")
        fields.update(weighted_order=w.weighted_order, weighted_local_height=w.weighted_local_height, deficiency=w.deficiency)
    out.record(Record("measure", args.term, {}, fields, None, True))


def cmd_scope(args, out):
    t = _read_term(args)
    r = transforms.scope_report(t)
    out.line(f"locally scoped: {'yes' if r.locally_scoped else 'no'}")
    out.line(f"strongly locally scoped: {'yes' if r.strongly_locally_scoped else 'no'}")
    for redex, v in r.violations:
        out.line(f"violation: {v.name} free in the argument of the redex at {'.'.join(redex.abs_path) or 'root'}")
    obs = {"ls": r.locally_scoped, "sls": r.strongly_locally_scoped, "violations": len(r.violations)}
    out.record(Record("scope", args.term, {}, obs, None, True))


def _transform(name, fn):
    def run(args, out):
        t = _read_term(args)
        r = fn(t)
        out.line(show_term(r))
        out.record(Record(name, args.term, {}, show_term(r), None, True))

    return run


def cmd_compile(args, out):
    t = _read_term(args)
    a = interpret(t)
    out.line(str(a))
    ok = True
    if args.check:
        rep = check_simulation(t, args.budget_steps)
        ok = rep.ok
        if rep.ok:
            out.line(f"simulation: {rep.steps} steps witnessed")
        else:
            out.line(f"simulation: no witness at step {rep.failed_at + 1}")
    out.record(Record("compile", args.term, {}, str(a), None, ok))


def cmd_skel_norm(args, out):
    a = parse_skeleton(args.skeleton)
    n = sk.norm(a, args.budget_nodes)
    out.line(str(n))
    out.record(Record("skel-norm", args.skeleton, {}, n, None, True))


def cmd_skel_reduce(args, out):
    a = parse_skeleton(args.skeleton)
    rs = sk.reducts(a)
    for r in rs:
        out.line(str(r))
    if not rs:
        out.line("(no reducts)")
    out.record(Record("skel-reduce", args.skeleton, {}, [str(r) for r in rs], None, True))


def cmd_bound(args, out):
    kind, rest = args.kind, args.args
    if kind == "skeleton":
        _arity(rest, 1, "bound skeleton SKELETON")
        a = parse_skeleton(rest[0])
        b = bounds.bound_thm416(a)
        n = sk.norm(a, args.budget_nodes) if args.check else None
        case = rest[0]
    elif kind == "star":
        _arity(rest, 3, "bound star N P D")
        n_, p, d = (_nat(x) for x in rest)
        b = bounds.bound_thm417(n_, p, d)
        n = sk.norm(sk.Skeleton(n_, [(d, sk.Skeleton(p))]), args.budget_nodes) if args.check else None
        case = f"{n_}[{{{d}}}{p}]"
    elif kind in ("scoped", "general"):
        _arity(rest, 1, f"bound {kind} TERM")
        t = parse_term(rest[0])
        b = bounds.bound_prop550(t) if kind == "scoped" else bounds.bound_prop566(t)
        n = reduction.lhr_count(t, args.budget_steps) if args.check else None
        case = rest[0]
    else:
        raise UsageError(f"unknown bound {kind!r}; expected skeleton, star, scoped or general")
    out.line(f"bound: {b}")
    ok = True
    if n is not None:
        ok = bounds.tower_leq(n, b)
        out.line(f"observed: {n} ({'within' if ok else 'VIOLATES'} bound)")
    out.record(Record("bound", case, {"kind": kind}, n, str(b), ok))


def _arity(rest, k, usage):
    if len(rest) != k:
        raise UsageError(f"usage: {usage}")


def _nat(x):
    try:
        v = int(x)
    except ValueError:
        raise UsageError(f"expected a natural number, got {x!r}")
    if v < 0:
        raise UsageError(f"expected a natural number, got {x!r}")
    return v


FAMILIES = {
    "numeral": (bounds.Numeral, (1, 2)),
    "iter": (bounds.Iter, (3, 4)),
    "S": (bounds.SFamily, (3, 3)),
    "U": (bounds.UFamily, (2, 2)),
    "B": (bounds.BFamily, (2, 2)),
}


def _family(words):
    if not words or words[0] not in FAMILIES:
        raise UsageError(f"expected a family name among {', '.join(FAMILIES)}")
    cls, (lo, hi) = FAMILIES[words[0]]
    nums = [_nat(w) for w in words[1:]]
    if not lo <= len(nums) <= hi:
        raise UsageError(f"{words[0]} takes {lo} to {hi} numbers")
    return cls(*nums)


def cmd_gen(args, out):
    fam = _family(args.family)
    t = bounds.gen_family(fam)
    out.line(show_term(t))
    out.line(f"type: {type_of(t)}")
    out.record(Record("gen", " ".join(args.family), {}, show_term(t), None, True))


def cmd_lower(args, out):
    if args.family and args.family[0] == "term":
        _arity(args.family[1:], 1, "lower term TERM")
        t = parse_term(args.family[1])
    else:
        t = bounds.gen_family(_family(args.family))
    r = bounds.verify_lower_bound(t, args.budget_steps)
    out.line(f"claimed: {r.value}")
    out.line(f"observed: {r.steps}")
    out.line(f"ok: {'yes' if r.ok else 'no'}")
    out.record(Record("lower", " ".join(args.family), {}, r.steps, r.value, r.ok))


def cmd_star(args, out):
    params = pointers.StarParams(args.n, args.p, args.d)
    r = pointers.check_bridge(params, args.budget_nodes)
    out.line(f"N_{args.d}({args.n},{args.p}) = {r.n_d}")
    rel = "<=" if r.ok else ">"
    out.line(f"N_{args.d}({args.n},{args.p}) = {r.n_d} {rel} norm({args.n}[{{{args.d}}}{args.p}]) + 1 = {r.norm + 1}")
    out.record(Record("star", f"N_{args.d}({args.n},{args.p})", {"n": args.n, "p": args.p, "d": args.d}, r.n_d, r.norm + 1, r.ok))


def cmd_verify(args, out):
    cfg = {"seed": args.seed}
    if args.suite:
        unknown = [s for s in args.suite if s not in SUITES]
        if unknown:
            raise UsageError(f"unknown suite(s): {', '.join(unknown)}; known: {', '.join(SUITES)}")
        cfg["suite"] = args.suite
    if args.corpus_size is not None:
        cfg["corpus_size"] = args.corpus_size
    cfg["norm_budget"] = min(args.budget_nodes, DEFAULT_NORM_BUDGET)
    report = harness_run(cfg)
    for rec in report.records:
        out.record(rec)
    for name, secs in report.timings.items():
        recs = [r for r in report.records if r.suite == name]
        bad = [r for r in recs if not r.ok]
        status = "pass" if not bad else "FAIL"
        out.line(f"{status} {name}: {len(recs) - len(bad)}/{len(recs)} ({secs:.2f}s)")
        for r in bad[: args.show]:
            out.line(f"    {r.case}: observed {r.observed}, bound {r.bound}")


DEFAULT_NORM_BUDGET = 20000


def build_parser():
    p = argparse.ArgumentParser(prog="lhrkit", description="Linear head reduction and interaction skeletons.")
    p.add_argument("--json", action="store_true", help="emit line-delimited JSON records")
    p.add_argument("--budget-nodes", type=int, default=None, help=f"search budget (default 10^6, or ${ENV_NODES})")
    p.add_argument("--budget-steps", type=int, default=None, help=f"reduction budget (default 10^5, or ${ENV_STEPS})")
    sub = p.add_subparsers(dest="command", required=True)

    def term_cmd(name, fn, help_):
        c = sub.add_parser(name, help=help_)
        c.add_argument("term")
        c.add_argument("--context", help="free variables, e.g. 'f:o->o, x:o'")
        c.set_defaults(fn=fn)
        return c

    term_cmd("parse", cmd_parse, "parse and pretty-print a term")
    c = term_cmd("lhr", cmd_lhr, "run linear head reduction")
    c.add_argument("--trace", action="store_true", help="print every reduct")
    c = term_cmd("machine", cmd_machine, "run the environment machine")
    c.add_argument("--trace", action="store_true")
    c.add_argument("--compare", action="store_true", help="compare with linear head reduction")
    term_cmd("beta", cmd_beta, "beta-normalise (leftmost outermost)")
    c = term_cmd("measure", cmd_measure, "print the term measures")
    c.add_argument("--weighted", action="store_true")
    term_cmd("scope", cmd_scope, "local scope report")
    term_cmd("etalong", _transform("etalong", transforms.eta_long_normalize), "restricted eta-expansion to eta-long form")
    term_cmd("lift", _transform("lift", transforms.lambda_lift_normalize), "lambda-lift a closed term")
    term_cmd("expand", _transform("expand", transforms.expand_variables), "expand variable occurrences")
    c = term_cmd("compile", cmd_compile, "interpret a term as a skeleton")
    c.add_argument("--check", action="store_true", help="check the simulation along the lhr trace")

    c = sub.add_parser("skel-norm", help="longest reduction length of a skeleton")
    c.add_argument("skeleton")
    c.set_defaults(fn=cmd_skel_norm)
    c = sub.add_parser("skel-reduce", help="one-step reducts of a skeleton")
    c.add_argument("skeleton")
    c.set_defaults(fn=cmd_skel_reduce)

    c = sub.add_parser("bound", help="evaluate a bound: skeleton SKEL | star N P D | scoped TERM | general TERM")
    c.add_argument("kind")
    c.add_argument("args", nargs="*")
    c.add_argument("--check", action="store_true", help="also compute the bounded quantity")
    c.set_defaults(fn=cmd_bound)

    c = sub.add_parser("gen", help="generate a family term: numeral N [P] | iter N P K [SEED] | S N K P | U N D | B K P")
    c.add_argument("family", nargs="+")
    c.set_defaults(fn=cmd_gen)
    c = sub.add_parser("lower", help="check the lhr lower bound of a numeral-valued family or 'term TERM'")
    c.add_argument("family", nargs="+")
    c.set_defaults(fn=cmd_lower)

    c = sub.add_parser("star", help="maximal visible pointer structure length against the skeleton norm")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--d", type=int, required=True)
    c.set_defaults(fn=cmd_star)

    c = sub.add_parser("verify", help="run the property suites")
    c.add_argument("--suite", action="append", help=f"suite name (repeatable): {', '.join(SUITES)}")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--corpus-size", type=int, default=None)
    c.add_argument("--show", type=int, default=5, help="failing cases shown per suite")
    c.set_defaults(fn=cmd_verify)
    return p


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    out = Output(args.json, stdout)
    try:
        if args.budget_nodes is None:
            args.budget_nodes = _env_int(ENV_NODES, sk.DEFAULT_NODE_BUDGET)
        if args.budget_steps is None:
            args.budget_steps = _env_int(ENV_STEPS, reduction.DEFAULT_STEP_BUDGET)
        if args.budget_nodes < 1 or args.budget_steps < 1:
            raise UsageError("budgets must be positive")
        args.fn(args, out)
    except LhrError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 1 if out.failed else 0


if __name__ == "__main__":
    sys.exit(main())
