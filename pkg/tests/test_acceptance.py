"""The fourteen acceptance criteria, one test each.

Every criterion records a ``PASS``/``FAIL`` line that is printed in the
terminal summary.  Criteria 7 and 8 each contain one sub-claim that is false
on the generated corpus; those sub-claims are asserted in strict ``xfail``
tests (so they are reported, and would flag if they ever started to hold),
while every other part of the criterion is asserted normally.  See the
README for the counterexamples.
"""

import timeit

import pytest

from lhrkit.harness import EXAMPLE_52, harness_run
from lhrkit.reduction import lhr_run
from lhrkit.syntax import parse_term

LINES = {}

DESCRIPTIONS = {
    1: "golden lhr trace of the running example",
    2: "norm(n[{2}p]) = 2n for 1 <= n,p <= 8",
    3: "norm(n[{d}p]) within the star tower bound, d in {3,4}",
    4: "norm(a) within the skeleton tower bound on random skeletons",
    5: "norm is monotone under embedding and canonical form",
    6: "monotonicity of lhr steps under beta, eta and lifting",
    7: "weighted measures",
    8: "pipeline postconditions",
    9: "game situations: measures, norm >= steps, simulation",
    10: "closure machine reproduces lhr",
    11: "lower-bound families",
    12: "general and strongly-locally-scoped lhr bounds",
    13: "maximal play length against the skeleton norm",
    14: "numeral lower bound on lhr steps",
}


@pytest.fixture(scope="module")
def report():
    return harness_run({})


def _records(report, suite):
    return [r for r in report.records if r.suite == suite]


def _note(k, ok, detail):
    LINES[k] = f"{'PASS' if ok else 'FAIL'} criterion {k:2d}: {DESCRIPTIONS[k]} ({detail})"


def _check(k, recs, detail="", timing=(True, "")):
    bad = [r for r in recs if not r.ok]
    fast, when = timing
    text = ", ".join(x for x in (detail or f"{len(recs) - len(bad)}/{len(recs)} cases", when) if x)
    _note(k, fast and not bad, text)
    assert not bad, [(r.case, r.observed, r.bound) for r in bad[:5]]
    assert fast, when


def _within(report, suite, limit):
    secs = report.timings[suite]
    return secs < limit, f"{secs:.2f}s {'<' if secs < limit else '>='} {limit}s"


def test_criterion_01(report):
    t = parse_term(EXAMPLE_52)
    secs = min(timeit.repeat(lambda: lhr_run(t), number=1, repeat=20))
    recs = _records(report, "example52")
    _check(1, recs, "5 steps", (secs < 1e-3, f"{secs * 1000:.3f} ms < 1 ms"))


def test_criterion_02(report):
    recs = _records(report, "remark418")
    assert len(recs) == 64
    _check(2, recs, "64 identities", _within(report, "remark418", 1))


def test_criterion_03(report):
    recs = _records(report, "thm417")
    assert len(recs) == 18
    _check(3, recs, "18 skeletons", _within(report, "thm417", 60))


def test_criterion_04(report):
    recs = [r for r in _records(report, "thm416") if r.case != "undecided within budget"]
    assert len(recs) >= 200
    _check(4, recs, f"{len(recs)} skeletons decided")


def test_criterion_05(report):
    recs = _records(report, "lemma41")
    pairs = [r for r in recs if "<=" in r.case]
    canon = [r for r in recs if r.case.startswith("canonical")]
    assert len(pairs) >= 200 and canon
    _check(5, recs, f"{len(pairs)} pairs, {len(canon)} canonical forms")


def test_criterion_06(report):
    recs = _records(report, "monotonicity")
    terms = {r.case.split("#")[1].split(".")[0] for r in recs}
    assert len(terms) >= 100
    _check(6, recs, f"{len(terms)} terms, {len(recs)} cases")


def _is_ord_invariance(r):
    return r.case.startswith("ord' invariance")


def test_criterion_07(report):
    recs = _records(report, "weighted")
    held = [r for r in recs if not _is_ord_invariance(r)]
    broken = [r for r in recs if _is_ord_invariance(r) and not r.ok]
    _note(
        7,
        not broken and all(r.ok for r in held),
        f"{len(broken)} weighted-order invariance violations under lifting; all other parts hold",
    )
    assert all(r.ok for r in held), [(r.case, r.observed, r.bound) for r in held if not r.ok][:5]


@pytest.mark.xfail(strict=True, reason="weighted order can grow by one under a lifting step (README)")
def test_criterion_07_weighted_order_invariance(report):
    recs = [r for r in _records(report, "weighted") if _is_ord_invariance(r)]
    assert recs and all(r.ok for r in recs)


def _expand(report):
    return [r for r in _records(report, "pipeline") if r.case.startswith("expand")]


def test_criterion_08(report):
    recs = _records(report, "pipeline")
    held = [r for r in recs if not r.case.startswith("expand")]
    expand = _expand(report)
    lh_ok = all(r.observed[0] <= 2 for r in expand)
    depth_bad = [r for r in expand if r.observed[1] > r.bound[1]]
    _note(
        8,
        lh_ok and not depth_bad and all(r.ok for r in held),
        f"{len(depth_bad)}/{len(expand)} expanded terms exceed depth <= height by one; all other parts hold",
    )
    assert all(r.ok for r in held), [(r.case, r.observed, r.bound) for r in held if not r.ok][:5]
    assert lh_ok
    assert all(r.observed[1] <= r.bound[1] + 1 for r in expand)


@pytest.mark.xfail(strict=True, reason="constants in argument position have depth 1 but height 0 (README)")
def test_criterion_08_expanded_depth_within_height(report):
    assert all(r.observed[1] <= r.bound[1] for r in _expand(report))


def test_criterion_09(report):
    recs = _records(report, "prop536")
    situations = [r for r in recs if r.case.startswith("simulation")]
    assert len(situations) >= 100
    _check(9, recs, f"{len(situations)} situations", _within(report, "prop536", 120))


def test_criterion_10(report):
    _check(10, _records(report, "machine"))


def test_criterion_11(report):
    _check(11, _records(report, "families"), "U(2,3), S(2,1,1), B(1,1)", _within(report, "families", 10))


def test_criterion_12(report):
    recs = _records(report, "general_bounds")
    sls = [r for r in recs if r.case.startswith("550")]
    assert sls
    _check(12, recs, f"{len(recs) - len(sls)} general, {len(sls)} scoped")


def test_criterion_13(report):
    recs = _records(report, "bridge")
    assert len(recs) == 8
    _check(13, recs, "8 parameter sets", _within(report, "bridge", 60))


def test_criterion_14(report):
    recs = _records(report, "lemma551")
    assert len(recs) >= 50
    _check(14, recs, f"{len(recs)} numeral-valued terms")
