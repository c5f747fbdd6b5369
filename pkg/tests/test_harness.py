import json
import random

import pytest

from lhrkit.corpus import random_skeleton
from lhrkit.errors import DomainError
from lhrkit.harness import SUITES, Record, harness_run, raw_norm, scramble
from lhrkit.skeleton import norm


def test_depth_two_suite():
    r = harness_run({"suite": "remark418", "nMax": 8})
    assert r.ok and len(r.records) == 64
    assert set(r.timings) == {"remark418"}


def test_game_situation_suite():
    r = harness_run({"suite": "prop536", "corpusSize": 100})
    assert r.ok and not r.failures()


def test_suite_lists_and_unknown_names():
    r = harness_run({"suite": ["example52", "bridge"]})
    assert r.suite_ok("example52") and r.suite_ok("bridge")
    assert list(r.timings) == ["example52", "bridge"]
    with pytest.raises(DomainError):
        harness_run({"suite": "nope"})


def test_suites_are_deterministic():
    a = harness_run({"suite": "lemma41", "pair_count": 30})
    b = harness_run({"suite": "lemma41", "pair_count": 30})
    assert [x.to_json() for x in a.records] == [x.to_json() for x in b.records]


def test_record_json():
    rec = Record("s", "c", {"n": 1}, (1, 2), None, False)
    d = json.loads(rec.to_json())
    assert d == {"suite": "s", "case": "c", "params": {"n": 1}, "observed": [1, 2], "bound": None, "ok": False}


def test_scrambled_norm():
    rng = random.Random(5)
    for _ in range(50):
        a = random_skeleton(rng, 3, 3, 2, 2)
        assert raw_norm(scramble(rng, a), 20000) == norm(a)


def test_every_criterion_has_a_suite():
    assert len(SUITES) == 14
