"""Property suites checking the quantitative results at desk scale.

Each suite is a function of a configuration dict returning a list of
:class:`Record`; failures are data, never exceptions.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field

from . import skeleton as sk
from .bounds import (
    BFamily,
    Iter,
    Numeral,
    SFamily,
    UFamily,
    bound_prop550,
    bound_prop566,
    bound_thm416,
    bound_thm417,
    church_type,
    gen_family,
    tower_leq,
    verify_lower_bound,
)
from .compile import check_simulation, interpret
from .corpus import (
    game_situation,
    random_closed_terms,
    random_skeleton,
    random_terms_of_type,
    shrink,
    standard_corpus,
)
from .errors import BudgetExceeded, DomainError
from .lambda_core import alpha_eq, depth, height, local_height, order, subterms
from .pointers import StarParams, check_bridge
from .reduction import Closure, beta_normalize, beta_reducts, lhr_count, lhr_run, machine_run, numeral_value
from .syntax import parse_skeleton, parse_term
from .transforms import (
    deficiency,
    distance_multiset,
    eta_expand_at,
    eta_long_normalize,
    eta_positions,
    eta_restricted_step,
    expand_variables,
    lambda_lift_normalize,
    lambda_lift_steps,
    multiset_less,
    scope_report,
    weighted_measures,
)


@dataclass
class Record:
    suite: str
    case: str
    params: dict = field(default_factory=dict)
    observed: object = None
    bound: object = None
    ok: bool = True

    def to_json(self):
        d = asdict(self)
        d["observed"] = _plain(self.observed)
        d["bound"] = _plain(self.bound)
        d["params"] = {k: _plain(v) for k, v in self.params.items()}
        return json.dumps(d, sort_keys=True)


def _plain(x):
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    return str(x)


@dataclass
class Report:
    records: list
    timings: dict

    @property
    def ok(self):
        return all(r.ok for r in self.records)

    def failures(self):
        return [r for r in self.records if not r.ok]

    def suite_ok(self, name):
        return all(r.ok for r in self.records if r.suite == name)


DEFAULTS = {
    "seed": 0,
    "corpus_size": 200,
    "n_max": 8,
    "skeleton_count": 600,
    "pair_count": 300,
    "situation_count": 150,
    "norm_budget": 20000,
}

EXAMPLE_52 = r"(\f:o->o.\x:o. f (f x)) (\y:o.y) *:o"
EXAMPLE_52_TRACE = [
    r"(\f:o->o.\x:o. (\z:o. z) (f x)) (\y:o.y) *:o",
    r"(\f:o->o.\x:o. (\z:o. f x) (f x)) (\y:o.y) *:o",
    r"(\f:o->o.\x:o. (\z:o. (\u:o. u) x) (f x)) (\y:o.y) *:o",
    r"(\f:o->o.\x:o. (\z:o. (\u:o. x) x) (f x)) (\y:o.y) *:o",
    r"(\f:o->o.\x:o. (\z:o. (\u:o. *:o) x) (f x)) (\y:o.y) *:o",
]


def _nd(n, d, p):
    return sk.Skeleton(n, [(d, sk.Skeleton(p))])


# -- skeleton suites --------------------------------------------------------------


def suite_example52(cfg):
    trace = lhr_run(parse_term(EXAMPLE_52))
    out = [Record("example52", "step count", {}, trace.count, 5, trace.count == 5)]
    out.append(Record("example52", "halt", {}, trace.halt.value, "head constant", trace.halt.value == "head constant"))
    for i, text in enumerate(EXAMPLE_52_TRACE):
        got = trace.terms[i + 1] if i + 1 < len(trace.terms) else None
        ok = got is not None and alpha_eq(got, parse_term(text))
        out.append(Record("example52", f"term {i + 1}", {}, ok, True, ok))
    return out


def suite_remark418(cfg):
    out = []
    for n in range(1, cfg["n_max"] + 1):
        for p in range(1, cfg["n_max"] + 1):
            v = sk.norm(_nd(n, 2, p))
            out.append(Record("remark418", f"{n}[{{2}}{p}]", {"n": n, "p": p}, v, 2 * n, v == 2 * n))
    return out


def suite_thm417(cfg):
    out = []
    memo = {}
    for d in (3, 4):
        for n in (1, 2, 3):
            for p in (1, 2, 3):
                v = sk.norm(_nd(n, d, p), budget=10**6, memo=memo)
                b = bound_thm417(n, p, d)
                out.append(Record("thm417", f"{n}[{{{d}}}{p}]", {"n": n, "d": d, "p": p}, v, b, tower_leq(v, b)))
    return out


def suite_thm416(cfg):
    rng = random.Random(cfg["seed"])
    out = []
    skipped = 0
    for i in range(cfg["skeleton_count"]):
        a = random_skeleton(rng, rng.randint(1, 4), 3, 3, 2)
        o, m, d = sk.measures(a)
        if o < 1 or m < 1:
            continue
        try:
            v = sk.norm(a, budget=cfg["norm_budget"])
        except BudgetExceeded:
            skipped += 1
            continue
        b = bound_thm416(a)
        out.append(Record("thm416", str(a), {"ord": o, "max": m, "depth": d}, v, b, tower_leq(v, b)))
    out.append(Record("thm416", "undecided within budget", {}, skipped, None, True))
    return out


def raw_reducts(a):
    """Reducts of a skeleton kept as a plain nested tuple, with no canonical form."""
    n, kids = a
    if n < 1:
        return []
    lowered = (n - 1, kids)
    return [(c[0], c[1] + ((d - 1, lowered),)) for d, c in kids if d >= 1]


def raw_norm(a, budget):
    memo = {}

    def go(x):
        if x in memo:
            return memo[x]
        if len(memo) > budget:
            raise BudgetExceeded("raw skeleton norm", budget)
        memo[x] = max((1 + go(r) for r in raw_reducts(x)), default=0)
        return memo[x]

    return go(a)


def scramble(rng, a):
    """Plain tuple form of ``a`` with children shuffled and some duplicated."""
    kids = [(d, scramble(rng, c)) for d, c in a.children]
    kids += [k for k in kids if rng.random() < 0.3]
    rng.shuffle(kids)
    return (a.label, tuple(kids))


def suite_lemma41(cfg):
    rng = random.Random(cfg["seed"] + 41)
    out = []
    skipped = 0
    for i in range(cfg["pair_count"]):
        b = random_skeleton(rng, rng.randint(1, 4), 3, 3, 2)
        a = shrink(rng, b)
        try:
            na, nb = sk.norm(a, budget=cfg["norm_budget"]), sk.norm(b, budget=cfg["norm_budget"])
        except BudgetExceeded:
            skipped += 1
            continue
        emb = sk.embeds(a, b)
        out.append(Record("lemma41", f"{a} <= {b}", {"embeds": emb}, na, nb, emb and na <= nb))
    out.append(Record("lemma41", "undecided within budget", {}, skipped, None, True))
    for i in range(cfg["pair_count"] // 3):
        a = random_skeleton(rng, rng.randint(1, 3), 3, 2, 2)
        raw = scramble(rng, a)
        try:
            r = raw_norm(raw, 20000)
        except BudgetExceeded:
            continue
        v = sk.norm(a)
        out.append(Record("lemma41", f"canonical {a}", {"raw": str(raw)}, v, r, v == r))
    return out


# -- term suites ---------------------------------------------------------------------


def _corpus(cfg):
    key = (cfg["seed"], cfg["corpus_size"])
    if key not in _CORPUS_CACHE:
        _CORPUS_CACHE[key] = standard_corpus(cfg["seed"], cfg["corpus_size"])
    return _CORPUS_CACHE[key]


_CORPUS_CACHE = {}


def suite_monotonicity(cfg):
    out = []
    for i, t in enumerate(_corpus(cfg)):
        n = lhr_count(t)
        worst_beta = max((lhr_count(r) for r in beta_reducts(t)), default=0)
        out.append(Record("monotonicity", f"beta #{i}", {}, worst_beta, n, worst_beta <= n))
        eta = [lhr_count(eta_expand_at(t, p)) for p in eta_positions(t)]
        least = min(eta, default=n)
        out.append(Record("monotonicity", f"eta #{i}", {}, least, n, least >= n))
        for j, r in enumerate(lambda_lift_steps(t)):
            m = lhr_count(r)
            ok = m >= n and depth(r) == depth(t)
            out.append(Record("monotonicity", f"lift #{i}.{j}", {"depth": [depth(t), depth(r)]}, m, n, ok))
    return out


def suite_weighted(cfg):
    out = []
    for i, t in enumerate(_corpus(cfg)):
        w = weighted_measures(t)
        o = order(t)
        out.append(Record("weighted", f"ord' #{i}", {"ord": o}, w.weighted_order, o + 1, o <= w.weighted_order <= o + 1))
        for path, s in subterms(t):
            lh, lw = local_height(s), weighted_measures(s).weighted_local_height
            if not lh <= lw <= lh + 1:
                out.append(Record("weighted", f"lh' #{i} at {path}", {"lh": lh}, lw, lh + 1, False))
        out.append(Record("weighted", f"lh' #{i}", {}, True, True, True))
        for j, r in enumerate(lambda_lift_steps(t)):
            wr = weighted_measures(r)
            o1, o2 = w.weighted_order, wr.weighted_order
            out.append(Record("weighted", f"ord' invariance #{i}.{j}", {}, o2, o1, o1 == o2))
            h1, h2 = w.weighted_local_height, wr.weighted_local_height
            out.append(Record("weighted", f"lh' invariance #{i}.{j}", {}, h2, h1, h1 == h2))
            dec = multiset_less(distance_multiset(r), distance_multiset(t))
            out.append(Record("weighted", f"distance decrease #{i}.{j}", {}, dict(distance_multiset(r)), dict(distance_multiset(t)), dec))
        cur = t
        while True:
            nxt = eta_restricted_step(cur)
            if nxt is None:
                break
            a, b = deficiency(cur), deficiency(nxt)
            if not b < a:
                out.append(Record("weighted", f"deficiency #{i}", {}, b, a, False))
            cur = nxt
        out.append(Record("weighted", f"deficiency #{i}", {}, deficiency(cur), 0, deficiency(cur) == 0))
    return out


def suite_pipeline(cfg):
    out = []
    for i, t in enumerate(_corpus(cfg)):
        lifted = lambda_lift_normalize(t)
        sls = scope_report(lifted).strongly_locally_scoped
        out.append(Record("pipeline", f"lift sls #{i}", {}, sls, True, sls))
        for name, src in (("direct", t), ("lifted", lifted)):
            e = eta_long_normalize(src)
            ok = (
                deficiency(e) == 0
                and depth(e) == depth(src)
                and order(e) == order(src)
                and local_height(src) <= local_height(e) <= local_height(src) + order(src)
            )
            obs = {"deficiency": deficiency(e), "depth": depth(e), "order": order(e), "lh": local_height(e)}
            bnd = {"depth": depth(src), "order": order(src), "lh": local_height(src) + order(src)}
            out.append(Record("pipeline", f"eta-long {name} #{i}", {}, obs, bnd, ok))
        x = expand_variables(t)
        ok = local_height(x) <= 2 and depth(x) <= height(t)
        out.append(Record("pipeline", f"expand #{i}", {}, [local_height(x), depth(x)], [2, height(t)], ok))
    return out


def suite_prop536(cfg):
    out = []
    terms = random_closed_terms(cfg["situation_count"], cfg["seed"] + 536, 20, 2)
    terms += random_closed_terms(cfg["situation_count"] // 2, cfg["seed"] + 537, 20, 3)
    for i, t in enumerate(terms):
        g = game_situation(t)
        n = lhr_count(g)
        a = interpret(g)
        so, sm, sd = sk.measures(a)
        ok = sd <= depth(g) and sm <= local_height(g) and so <= order(g)
        out.append(Record("prop536", f"measures #{i}", {}, [so, sm, sd], [order(g), local_height(g), depth(g)], ok))
        try:
            lb = sk.norm_at_least(a, n, budget=cfg["norm_budget"] * 5)
        except BudgetExceeded:
            lb = None
        out.append(Record("prop536", f"norm >= steps #{i}", {"steps": n}, lb, True, lb is True))
        sim = check_simulation(g)
        out.append(Record("prop536", f"simulation #{i}", {"steps": sim.steps}, sim.failed_at, None, sim.ok))
    return out


def suite_machine(cfg):
    out = []
    for i, t in enumerate(_corpus(cfg)):
        tr = lhr_run(t)
        mr = machine_run(Closure(tr.start, {}))
        same = len(mr.terms) == len(tr.terms) and all(alpha_eq(a, b) for a, b in zip(mr.terms, tr.terms))
        out.append(Record("machine", f"#{i}", {}, len(mr.terms) - 1, tr.count, same))
    return out


def suite_families(cfg):
    u = lhr_count(gen_family(UFamily(2, 3)))
    out = [Record("families", "U(2,3)", {"n": 2, "d": 3}, u, 8, u >= 8)]
    for name, fam, claimed in (("S(2,1,1)", SFamily(2, 1, 1), 16), ("B(1,1)", BFamily(1, 1), 16)):
        r = verify_lower_bound(gen_family(fam))
        out.append(Record("families", name, {"claimed": claimed}, r.steps, r.value, r.ok and r.value == claimed))
    return out


def suite_general_bounds(cfg):
    out = []
    for i, t in enumerate(_corpus(cfg)):
        n = lhr_count(t)
        b = bound_prop566(t)
        out.append(Record("general_bounds", f"566 #{i}", {}, n, b, tower_leq(n, b)))
        for name, s in (("", t), (" lifted", lambda_lift_normalize(t))):
            if order(s) >= 1 and scope_report(s).strongly_locally_scoped:
                m = lhr_count(s)
                b = bound_prop550(s)
                out.append(Record("general_bounds", f"550{name} #{i}", {}, m, b, tower_leq(m, b)))
    return out


def suite_bridge(cfg):
    out = []
    for d in (2, 3):
        for n in (1, 2):
            for p in (1, 2):
                r = check_bridge(StarParams(n, p, d))
                out.append(Record("bridge", f"N_{d}({n},{p})", {"n": n, "p": p, "d": d}, r.n_d, r.norm + 1, r.ok))
    return out


def numeral_terms(cfg):
    """Generated terms whose normal form may be a numeral: families and random terms.

    Family members are limited to those whose value is at most 32, so that
    normalisation stays cheap.
    """
    out = [gen_family(Numeral(n, 0)) for n in range(0, 10)]
    for n in range(1, 4):
        for k in range(0, 3):
            for seed in range(0, 6):
                if seed ** (n**k) <= 32:
                    out.append(gen_family(Iter(n, 0, k, seed)))
    for fam in (SFamily(1, 1, 1), SFamily(1, 2, 1), SFamily(2, 1, 1), SFamily(1, 1, 2)):
        out.append(gen_family(fam))
    out += [gen_family(BFamily(0, 1)), gen_family(BFamily(1, 1))]
    out += random_terms_of_type(cfg["corpus_size"], church_type(0), cfg["seed"] + 551, 20, 2)
    return out


def suite_lemma551(cfg):
    out = []
    for i, t in enumerate(numeral_terms(cfg)):
        try:
            nf, _ = beta_normalize(t, 10**5)
        except BudgetExceeded:
            continue
        n = numeral_value(nf)
        if n is None or n > 32:
            continue
        r = verify_lower_bound(t)
        out.append(Record("lemma551", f"#{i}", {"numeral": n}, r.steps, n, r.ok))
    return out


SUITES = {
    "example52": suite_example52,
    "remark418": suite_remark418,
    "thm417": suite_thm417,
    "thm416": suite_thm416,
    "lemma41": suite_lemma41,
    "monotonicity": suite_monotonicity,
    "weighted": suite_weighted,
    "pipeline": suite_pipeline,
    "prop536": suite_prop536,
    "machine": suite_machine,
    "families": suite_families,
    "general_bounds": suite_general_bounds,
    "bridge": suite_bridge,
    "lemma551": suite_lemma551,
}


def _snake(key):
    return "".join("_" + c.lower() if c.isupper() else c for c in key)


def harness_run(config=None):
    """Run the suites named in ``config["suite"]`` (all of them by default).

    Keys may be given in snake_case or camelCase (``corpusSize``).
    """
    cfg = dict(DEFAULTS)
    cfg.update({_snake(k): v for k, v in (config or {}).items()})
    names = cfg.get("suite") or list(SUITES)
    if isinstance(names, str):
        names = [names]
    records, timings = [], {}
    for name in names:
        if name not in SUITES:
            raise DomainError(f"unknown suite {name!r}")
        t0 = time.perf_counter()
        records += SUITES[name](cfg)
        timings[name] = time.perf_counter() - t0
    return Report(records, timings)
