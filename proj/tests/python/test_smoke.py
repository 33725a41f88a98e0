"""Smoke tests for the pbexact python module (built by ctest's parent build)."""

import json

import pytest

import pbexact


def test_fixture_registry():
    ids = pbexact.fixture_ids()
    assert len(ids) == 14
    assert ids[0] == "onetown"
    doc = json.loads(pbexact.fixture("onetown"))
    assert doc["format_version"] == 1
    assert [c["id"] for c in doc["candidates"]] == ["L1", "L2", "L3", "R"]


def test_run_rules():
    doc = json.loads(pbexact.run("fixture:twotown", "equal-shares"))
    assert doc["outcome"] == ["L1", "L2", "R"]
    assert doc["spent"] == "1"
    lex = json.loads(pbexact.run("fixture:ordinal-psc-3", "equal-shares-lex"))
    assert lex["outcome"] == ["c1", "c2"]
    pav = json.loads(pbexact.run("fixture:onetown", "pav"))
    assert pav["outcome"] == ["L1", "L2", "R"]
    assert len(pav["outcomes"]) == 3
    eps = json.loads(pbexact.run("fixture:priceable-vs-exhaustive",
                                 "equal-shares-exhaustive"))
    assert (eps["outcome"], eps["eps"]) == (["c2", "c3"], "1/27")


def test_run_accepts_raw_documents():
    instance = json.dumps({
        "format_version": 1,
        "budget": 2,
        "candidates": [{"id": "a", "cost": 1}, {"id": "b", "cost": 1}],
        "voters": [{"id": 1, "approves": ["a"]}, {"id": 2, "approves": ["b"]}],
    })
    doc = json.loads(pbexact.run(instance, "equal-shares"))
    assert doc["outcome"] == ["a", "b"]


def test_check_verdicts():
    v = json.loads(pbexact.check("fixture:onetown", "ejr", ["L1", "L2", "R"]))
    assert v["status"] == "violated"
    assert v["witness"]["bundle"] == ["L1", "L2", "L3"]
    ok = json.loads(pbexact.check("fixture:onetown", "ejr", ["L1", "L2", "L3"]))
    assert ok["status"] == "satisfied"
    psc = json.loads(pbexact.check("fixture:ordinal-psc-3", "psc", ["c1", "c4"]))
    assert psc["status"] == "violated"
    assert psc["witness"]["entitlement"] == "2"


def test_scale_population_and_errors():
    small = json.loads(pbexact.scale_population(pbexact.fixture("onetown"),
                                                "1/30000"))
    assert len(small["voters"]) == 3
    with pytest.raises(pbexact.InputError):
        pbexact.run("fixture:no-such-id", "equal-shares")
    with pytest.raises(pbexact.InputError):
        pbexact.check("fixture:onetown", "not-an-axiom", ["L1"])
    with pytest.raises(pbexact.InputError):
        pbexact.scale_population(pbexact.fixture("onetown"), "0")
