from collections import Counter

import pytest

from chtt.gen import GenConfig, gen_kan_instance
from chtt.laws import (
    INCONCLUSIVE, RULE_IDS, SOUND, VACUOUS, VIOLATED, RuleCase, broken_adjacency_instance, check_judgment,
    check_kan, check_lemma, kan_library, lemma_cases, manifest, parse_judgment, rule_library, run_rule, run_suite,
)
from chtt.opsem import RULES, disabled_rules
from chtt.parse import ParseError, parse
from chtt.semantics import FAILS, HOLDS, Checker


def test_parse_judgment_forms():
    j = parse_judgment("(at (x) (under ((a bool)) (eq S1 (if S1 a base base) base)))")
    assert j.kind == "eq" and j.ctx == ("x",) and j.hyps[0][0] == "a"
    assert parse_judgment("(type (notb x))", ("x",)).args == (parse("(notb x)"),)
    for bad in ["(frob bool)", "(eq bool true)", "(at (x x) (type bool))", "(mem bool a)", "(type (notb w))"]:
        with pytest.raises(ParseError):
            parse_judgment(bad, ("x",))


def test_check_judgment_dim():
    chk = Checker()
    assert check_judgment(parse_judgment("(at (x) (dim x))"), chk).verdict == HOLDS
    assert check_judgment(parse_judgment("(dim 1)"), chk).verdict == HOLDS


def test_every_rule_has_two_cases_one_open():
    by_rule = Counter(c.rule_id for c in rule_library())
    assert set(by_rule) == set(RULE_IDS)
    assert min(by_rule.values()) >= 2
    open_rules = {c.rule_id for c in rule_library() if c.conclusion.ctx}
    assert open_rules == set(RULE_IDS)


@pytest.mark.parametrize("case", rule_library(), ids=lambda c: c.case_id)
def test_rule_case_sound(case):
    out = run_rule(case)
    assert out.verdict == SOUND, out.serialize()


def _rc(premises, conclusion, ctx=()):
    return RuleCase("x", "t", tuple(parse_judgment(p, ctx) for p in premises), parse_judgment(conclusion, ctx))


def test_vacuous_and_violated():
    assert run_rule(_rc(["(mem bool base)"], "(mem bool true)")).verdict == VACUOUS
    out = run_rule(_rc(["(mem bool true)"], "(eq bool true false)"))
    assert out.verdict == VIOLATED
    assert "violated" in out.serialize() and "verdict: fails" in out.serialize()


def test_kan_library_coverage():
    lib = kan_library()
    kinds = Counter((cid.split("/")[1], cond) for cid, cond, _ in lib)
    for ty in ["bool", "S1", "prd", "arr", "notb"]:
        for cond in (1, 2, 3, 4):
            assert kinds[(ty, cond)] >= 1, (ty, cond)
    assert all(len(inst.psi.target) <= 2 for _, _, inst in lib)


@pytest.mark.parametrize("cid,cond,inst", kan_library(), ids=lambda v: v if isinstance(v, str) else "")
def test_kan_instance_sound(cid, cond, inst):
    out = check_kan(inst, cond, case_id=cid)
    assert out.verdict == SOUND, out.serialize()


def test_broken_adjacency_is_vacuous():
    out = check_kan(broken_adjacency_instance(), 2)
    assert out.verdict == VACUOUS
    assert not out.ok


@pytest.mark.parametrize("ty", ["bool", "S1", "(prd bool bool)"])
@pytest.mark.parametrize("cond", [1, 2, 3, 4])
def test_generated_kan_instances(ty, cond):
    inst = gen_kan_instance(parse(ty), ("w",), GenConfig(seed=cond), cond)
    assert check_kan(inst, cond).verdict == SOUND


def test_lemma_cases_sound():
    chk = Checker()
    cases = lemma_cases()
    assert {c[0].split("/")[1] for c in cases} == {"notnot", "notel-coe"}
    for case in cases:
        out = check_lemma(case, chk)
        assert out.verdict == SOUND, out.serialize()


def test_manifest_ids_unique():
    ids = manifest()
    assert len(ids) == len(set(ids))


def test_run_suite_selection():
    s = run_suite(case_ids=["rule/fun-beta/1", "lemma/notnot/-/0"])
    assert [o.case_id for o in s.outcomes] == ["rule/fun-beta/1", "lemma/notnot/-/0"]
    assert s.ok and "cases: 2" in s.render()
    with pytest.raises(KeyError):
        run_suite(case_ids=["rule/nope/1"])


@pytest.mark.parametrize("rule", RULES)
def test_every_rule_is_constrained(rule):
    # disabling any single evaluator rule must break some case
    with disabled_rules(rule):
        s = run_suite(fail_fast=True)
    assert not s.ok, rule
    assert s.failures[0].verdict in (VIOLATED, VACUOUS, INCONCLUSIVE)
