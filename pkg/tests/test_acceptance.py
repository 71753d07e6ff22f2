"""Acceptance criteria 1-9.  Each test records one PASS/FAIL line, echoed in the terminal summary."""

import random
import time
from collections import Counter

from _golden import GOLDEN
from chtt.corpus import CORPUS
from chtt.gen import GenConfig, Generator
from chtt.laws import (
    RULE_IDS, SOUND, check_kan, check_lemma, kan_library, lemma_cases, rule_library, run_rule, run_suite,
)
from chtt.opsem import RULES, IsValue, Stepped, disabled_rules, step, trace
from chtt.parse import parse, pretty
from chtt.semantics import FAILS, INCONCLUSIVE, CheckConfig, Checker, canonicity_check
from chtt.syntax import BOOL, DimSubst, alpha_eq, apply_subst, compose_subst, fd, ftv, size, subterms

RESULTS = []


def record(n: int, ok: bool, detail: str):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _goals(ctx):
    base = [parse(s) for s in ("bool", "S1", "(prd bool S1)", "(arr bool bool)", "(prd S1 (arr bool S1))")]
    return base + [parse(f"(notb {n})") for n in ctx]


def test_1_canonicity_fuzzing():
    start = time.perf_counter()
    g = Generator(GenConfig(seed=2024, size=40))
    terms = [g.term(BOOL) for _ in range(1000)]
    assert all(size(m) <= 40 and not fd(m) and not ftv(m) for m in terms)
    verdicts = Counter(canonicity_check(m, fuel=100_000).verdict for m in terms)
    elapsed = time.perf_counter() - start
    ok = verdicts["violation"] == 0 and elapsed < 60
    record(1, ok, f"1000 closed bool terms: {dict(verdicts)} in {elapsed:.1f}s")


def test_2_golden_rule_table():
    covered = {r for r, _, _ in GOLDEN}
    bad = []
    for rule, src, expected in GOLDEN:
        res = step(parse(src))
        if not (isinstance(res, Stepped) and res.rule == rule and alpha_eq(res.next, parse(expected))):
            bad.append(rule)
    ok = covered == set(RULES) and not bad
    record(2, ok, f"{len(GOLDEN)} golden steps over {len(RULES)} rules, mismatches: {bad or 'none'}")


def test_3_determinacy_and_stability():
    ctxs = [(), ("x",), ("x", "y")]
    count, violations, open_terms = 0, [], 0
    for seed in range(100):
        ctx = ctxs[seed % 3]
        g = Generator(GenConfig(seed=seed, size=25))
        goals = _goals(ctx)
        for i in range(100):
            m = g.term(goals[i % len(goals)], ctx)
            count += 1
            open_terms += bool(fd(m))
            tr = trace(m)
            for a, b in zip(tr.steps, tr.steps[1:]):
                if not fd(b) <= fd(a):
                    violations.append(("names", pretty(a)))
            if tr.verdict != "value" or not isinstance(step(tr.final), IsValue):
                violations.append(("value", pretty(m)))
    record(3, count == 10_000 and not violations,
           f"{count} terms ({open_terms} with free names), violations: {len(violations)}")


def test_4_kan_suite():
    chk = Checker()
    verdicts = Counter()
    kinds = Counter()
    for cid, cond, inst in kan_library():
        out = check_kan(inst, cond, checker=chk, case_id=cid)
        verdicts[out.verdict] += 1
        kinds[(cid.split("/")[1], cond)] += out.verdict == SOUND
    covered = all(kinds[(t, c)] > 0 for t in ("bool", "S1", "prd", "arr", "notb") for c in (1, 2, 3, 4))
    small = all(len(inst.psi.target) <= 2 for _, _, inst in kan_library())
    ok = covered and small and set(verdicts) == {SOUND}
    record(4, ok, f"{sum(verdicts.values())} Kan instances: {dict(verdicts)}")


def test_5_rule_suite():
    chk = Checker()
    sound = Counter()
    others = []
    for case in rule_library():
        out = run_rule(case, checker=chk)
        if out.verdict == SOUND:
            sound[case.rule_id] += 1
        else:
            others.append(case.case_id)
    named = ["prd-beta-fst", "prd-beta-snd", "prd-eta", "fun-beta", "fun-eta", "bool-if-true", "bool-if-false",
             "s1-elim-base", "s1-elim-loop", "hcom-cap", "hcom-tube", "coe-bool", "not-coe-refl", "not-coe-flip"]
    ok = all(sound[r] >= 2 for r in RULE_IDS) and all(sound[r] >= 1 for r in named) and not others
    record(5, ok, f"{len(RULE_IDS)} rules, min sound cases {min(sound[r] for r in RULE_IDS)}, "
                  f"non-sound: {others or 'none'}")


def test_6_not_lemmas():
    chk = Checker()
    verdicts = Counter()
    for case in lemma_cases():
        verdicts[(case[0].split("/")[1], check_lemma(case, chk).verdict)] += 1
    ok = all(v == SOUND for _, v in verdicts) and {k for k, _ in verdicts} == {"notnot", "notel-coe"}
    record(6, ok, f"lemma outcomes: {dict(verdicts)}")


def test_7_coherence_corpus():
    cfg = CheckConfig(depth=3, fresh_budget=1)
    chk = Checker(cfg)
    heads = set()

    def walk(m):
        heads.add(type(m).__name__)
        for s in subterms(m):
            walk(s)

    verdicts = Counter()
    for e in CORPUS:
        walk(e.term)
        walk(e.ty)
        verdicts[chk.ceqtm(e.ty, e.term, e.term).verdict] += 1
    constructors = {"Arr", "Prd", "Bool", "NotB", "S1", "Var", "Lam", "App", "Pair", "Fst", "Snd", "Tt", "Ff",
                    "If", "NotEl", "Base", "Loop", "S1Elim", "Coe", "Hcom"}
    ok = len(CORPUS) == 50 and constructors <= heads and verdicts[FAILS] == 0 and verdicts[INCONCLUSIVE] == 0
    record(7, ok, f"{len(CORPUS)} corpus terms: {dict(verdicts)}, missing constructors: "
                  f"{sorted(constructors - heads) or 'none'}")


def _random_subst(rng, source, pool):
    target = tuple(rng.sample(pool, rng.randint(0, len(pool))))
    choices = [0, 1, *target]
    return DimSubst.make(source, target, {x: rng.choice(choices) for x in source})


def test_8_substitution_algebra():
    rng = random.Random(8)
    g = Generator(GenConfig(seed=8, size=30))
    ctx = ("x", "y")
    goals = _goals(ctx)
    terms = [g.term(goals[i % len(goals)], ctx) for i in range(1000)]
    comp_bad = trip_bad = 0
    for m in terms:
        p1 = _random_subst(rng, ctx, ["u", "v", "x"])
        p2 = _random_subst(rng, p1.target, ["p", "q"])
        if not alpha_eq(apply_subst(apply_subst(m, p1), p2), apply_subst(m, compose_subst(p1, p2))):
            comp_bad += 1
        if not alpha_eq(parse(pretty(m)), m):
            trip_bad += 1
    record(8, comp_bad == 0 and trip_bad == 0,
           f"1000 terms: composition failures {comp_bad}, round-trip failures {trip_bad}")


MUTANTS = ["coe-bool", "notel-0", "hcom-bool-eps", "if-true", "loop-eps"]


def test_9_mutation_sensitivity():
    caught = {}
    for rule in MUTANTS:
        with disabled_rules(rule):
            s = run_suite(fail_fast=True)
        caught[rule] = s.failures[0].case_id if s.failures else None
    clean = run_suite()
    ok = all(caught.values()) and clean.ok
    record(9, ok, "first failing case per mutant: " + ", ".join(f"{r} -> {c}" for r, c in caught.items()))
