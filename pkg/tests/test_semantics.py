import itertools

import pytest
from hypothesis import given, settings, strategies as st

from _terms import generated
from chtt.corpus import CORPUS
from chtt.opsem import Stepped, eval_term, step
from chtt.parse import parse
from chtt.semantics import (
    FAILS, HOLDS, INCONCLUSIVE, ArrowType, BoolType, CheckConfig, Checker, CircleType, NotAType, NotLine,
    ProdType, canonicity_check, ceqpretype, ceqtm, coherence_diamond, cubical, enumerate_elements,
    enumerate_substs, eq_open, eval_type, type_term, vinper,
)
from chtt.syntax import BOOL, BASE, FALSE, TRUE, DimSubst, SubstitutionError, alpha_eq, apply_subst, dsubst, fd

P = parse
H = "(hcom x bool 0 1 true [y true] [y true])"


def test_config_validation():
    with pytest.raises(ValueError):
        CheckConfig(depth=0)
    with pytest.raises(ValueError):
        CheckConfig(fuel=-1)


# -- substitution enumeration ------------------------------------------------

def _canonical_images(psi: DimSubst):
    """Images with target names renamed in order of first use."""
    ren = {}
    out = []
    for _, v in psi.pairs:
        if isinstance(v, str):
            v = ren.setdefault(v, f"#{len(ren)}")
        out.append(v)
    return tuple(out)


def _brute(ctx, targets=("p", "q", "r")):
    for image in itertools.product([0, 1, *targets], repeat=len(ctx)):
        yield DimSubst.make(ctx, targets, dict(zip(ctx, image)))


@pytest.mark.parametrize("ctx,count", [((), 1), (("x",), 3), (("x", "y"), 10)])
def test_enumerate_substs_counts(ctx, count):
    reps = enumerate_substs(ctx)
    assert len(reps) == count
    # the count is the number of renaming classes found by brute force
    assert len({_canonical_images(p) for p in _brute(ctx)}) == count
    assert all(k == v for k, v in reps[0].pairs)


def test_enumerate_substs_fresh_budget():
    for p in enumerate_substs(("x",), CheckConfig(fresh_budget=2)):
        assert len([t for t in p.target if t not in ("x",)]) == 2


@pytest.mark.parametrize("ctx", [(), ("x",), ("x", "z")])
def test_enumerate_substs_complete_on_corpus(ctx):
    reps = {_canonical_images(p): p for p in enumerate_substs(ctx)}
    terms = [e.term for e in CORPUS if set(e.ctx) <= set(ctx)]
    for psi in _brute(ctx):
        rep = reps[_canonical_images(psi)]
        # rename the representative's targets onto psi's
        back = {rv: pv for (_, rv), (_, pv) in zip(rep.pairs, psi.pairs) if isinstance(rv, str)}
        for m in terms:
            got = apply_subst(m, rep)
            for a, b in back.items():
                got = dsubst(got, f"#{a}", a)
            for a, b in back.items():
                got = dsubst(got, b, f"#{a}")
            assert alpha_eq(got, apply_subst(m, psi))


# -- types -------------------------------------------------------------------

def test_eval_type():
    assert eval_type(P("(notb 0)")) == BoolType()
    assert eval_type(P("(notb x)")) == NotLine("x")
    assert eval_type(P("(arr bool bool)")) == ArrowType(BOOL, BOOL)
    assert eval_type(P("(fst (pair S1 bool))")) == CircleType()
    with pytest.raises(NotAType):
        eval_type(TRUE)


# -- value PERs --------------------------------------------------------------

def test_vinper_examples():
    assert vinper(BoolType(), TRUE, TRUE).verdict == HOLDS
    assert vinper(BoolType(), TRUE, FALSE).verdict == FAILS
    h = P(H)
    assert vinper(BoolType(), h, h, ("x",)).verdict == HOLDS


def test_vinper_hcom_clauses():
    # (a) caps differ
    r = vinper(BoolType(), P(H), P("(hcom x bool 0 1 false [y false] [y false])"), ("x",))
    assert r.verdict == FAILS
    # (c) adjacency: tube at x=0 starts at false but the cap is true
    bad = P("(hcom x bool 0 1 true [y false] [y true])")
    r = vinper(BoolType(), bad, bad, ("x",))
    assert r.verdict == FAILS and "adjacency" in r.serialize()


def test_vinper_circle_and_not():
    assert vinper(CircleType(), P("(loop x)"), P("(loop x)"), ("x",)).verdict == HOLDS
    assert vinper(CircleType(), P("(loop x)"), BASE, ("x",)).verdict == FAILS
    assert vinper(NotLine("x"), P("(notel x true)"), P("(notel x (not false))"), ("x",)).verdict == HOLDS
    assert vinper(NotLine("x"), P("(notel x true)"), P("(notel x false)"), ("x",)).verdict == FAILS


# -- exact equality ----------------------------------------------------------

def test_ceqtm_examples():
    assert ceqtm(BOOL, P("(not (not true))"), TRUE).verdict == HOLDS
    assert ceqtm(BOOL, P("(loop x)"), P("(loop x)"), ("x",)).verdict == FAILS
    assert ceqtm(P("S1"), P("(loop x)"), P("(loop x)"), ("x",)).verdict == HOLDS
    assert ceqtm(P("S1"), P("(loop 0)"), BASE).verdict == HOLDS


def test_ceqtm_checks_fd():
    with pytest.raises(SubstitutionError):
        ceqtm(P("S1"), P("(loop w)"), BASE, ("x",))


def test_failure_witness_replays():
    r = ceqtm(P("S1"), P("(loop x)"), BASE, ("x",))
    assert r.verdict == FAILS
    w = r.witness
    assert w is not None and w.psi1 is not None
    # the recorded values are what the evaluator produces at that aspect
    got = [eval_term(apply_subst(t, w.psi1)) for t in (P("(loop x)"), BASE)]
    assert all(any(alpha_eq(v, g) for g in got) for v in w.values)
    text = r.serialize()
    assert text.startswith("verdict: fails")
    assert "psi1: x=x" in text


def test_inconclusive_on_budget():
    deep = P("(hcom x bool 0 1 (hcom x bool 0 1 (hcom x bool 0 1 true [y true] [y true])"
             " [y true] [y true]) [y true] [y true])")
    assert coherence_diamond(deep, BOOL, ("x",), CheckConfig(depth=1)).verdict == INCONCLUSIVE
    assert coherence_diamond(deep, BOOL, ("x",)).verdict == HOLDS
    assert ceqtm(BOOL, P("(not (not true))"), TRUE, (), CheckConfig(fuel=1)).verdict == INCONCLUSIVE


def test_arrow_modulo_probes():
    r = ceqtm(P("(arr bool bool)"), P("(lam [a a])"), P("(lam [a (not (not a))])"))
    assert r.verdict == HOLDS and r.modulo_probes
    assert ceqtm(P("(arr bool bool)"), P("(lam [a a])"), P("(lam [a (not a)])")).verdict == FAILS


def test_ceqpretype_examples():
    assert ceqpretype(P("(notb 0)"), BOOL).verdict == HOLDS
    assert ceqpretype(BOOL, P("S1")).verdict == FAILS
    assert ceqpretype(P("(notb x)"), P("(notb x)"), ("x",)).verdict == HOLDS
    assert ceqpretype(P("(notb x)"), BOOL, ("x",)).verdict == FAILS
    assert ceqpretype(P("(prd (notb 1) S1)"), P("(prd bool S1)")).verdict == HOLDS
    assert ceqpretype(TRUE, TRUE).verdict == FAILS


def test_coherence_examples():
    assert coherence_diamond(TRUE, BOOL).verdict == HOLDS
    assert coherence_diamond(P(H), BOOL, ("x",)).verdict == HOLDS
    assert coherence_diamond(P("(fst (pair (loop x) base))"), P("S1"), ("x",)).verdict == HOLDS


def test_enumerate_elements_examples():
    assert enumerate_elements(BoolType(), (), 0) == [TRUE, FALSE]
    assert enumerate_elements(CircleType(), ("x",), 0) == [BASE, P("(loop x)")]
    assert len(enumerate_elements(ProdType(BOOL, BOOL), (), 1)) == 4
    assert enumerate_elements(NotLine("x"), ("x",), 0) == [P("(notel x true)"), P("(notel x false)")]


def test_enumerate_elements_are_members():
    chk = Checker()
    for ty, ctx in [(BoolType(), ("x", "y")), (CircleType(), ("x",)), (NotLine("x"), ("x",)),
                    (ProdType(BOOL, P("S1")), ("x",)), (ArrowType(BOOL, BOOL), ())]:
        for m in enumerate_elements(ty, ctx, 1):
            assert chk.ceqtm(type_term(ty), m, m).verdict == HOLDS, m


def test_eq_open_examples():
    g = [("a", BOOL)]
    assert eq_open(g, P("a"), P("a"), BOOL).verdict == HOLDS
    assert eq_open(g, P("(not (not a))"), P("a"), BOOL).verdict == HOLDS
    r = eq_open(g, P("a"), TRUE, BOOL)
    assert r.verdict == FAILS
    assert "a=false" in r.serialize().replace(" ", "") or "false" in r.serialize()


def test_canonicity_examples():
    assert canonicity_check(TRUE).verdict == "true"
    assert canonicity_check(P("(coe [x (notb x)] 0 1 true)")).verdict == "false"
    assert canonicity_check(BASE).verdict == "violation"
    assert canonicity_check(P("(if bool base true false)")).verdict == "violation"
    with pytest.raises(ValueError):
        canonicity_check(P("(loop x)"))


def test_cubical_types():
    for ty in ["bool", "S1", "(prd bool S1)", "(arr bool bool)", "(notb x)"]:
        assert cubical(P(ty), ("x", "y")).verdict == HOLDS, ty


# -- properties --------------------------------------------------------------

_POOL = generated(60, seed=5, ctx=("x",))
# generated() cycles through its goal types in this order
_POOL_TYPES = ["bool", "S1", "(prd bool S1)", "(arr bool bool)", "(arr S1 (prd S1 bool))", "(notb x)"]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 5), st.data())
def test_ceqtm_symmetric_and_transitive(k, data):
    chk = Checker()
    same = [m for i, m in enumerate(_POOL) if i % 6 == k]
    a = P(_POOL_TYPES[k])
    m, n, p = (data.draw(st.sampled_from(same)) for _ in range(3))
    mn, nm = chk.ceqtm(a, m, n), chk.ceqtm(a, n, m)
    assert (mn.verdict == HOLDS) == (nm.verdict == HOLDS)
    if mn.verdict == HOLDS and chk.ceqtm(a, n, p).verdict == HOLDS:
        assert chk.ceqtm(a, m, p).verdict == HOLDS


def test_substitution_closure_on_corpus():
    chk = Checker()
    for e in CORPUS:
        assert chk.ceqtm(e.ty, e.term, e.term).verdict == HOLDS
        for psi in enumerate_substs(e.ctx):
            face = chk.ceqtm(apply_subst(e.ty, psi), apply_subst(e.term, psi), apply_subst(e.term, psi))
            assert face.verdict == HOLDS, (e.name, str(psi))


def test_pretype_transport():
    chk = Checker()
    assert chk.ceqpretype(P("(notb 0)"), BOOL).verdict == HOLDS
    for m in enumerate_elements(BoolType(), ("x",), 1):
        assert chk.ceqtm(BOOL, m, m).verdict == HOLDS
        assert chk.ceqtm(P("(notb 0)"), m, m).verdict == HOLDS


def test_head_expansion_on_corpus():
    chk = Checker()
    for e in CORPUS:
        res = step(e.term)
        if not isinstance(res, Stepped):
            continue
        nxt = res.next
        # premise: every aspect steps to the matching aspect of the successor
        ok = all(isinstance(s := step(apply_subst(e.term, psi)), Stepped)
                 and alpha_eq(s.next, apply_subst(nxt, psi)) for psi in enumerate_substs(e.ctx))
        if ok and chk.ceqtm(e.ty, nxt, nxt).verdict == HOLDS:
            assert chk.ceqtm(e.ty, e.term, nxt).verdict == HOLDS, e.name


@pytest.mark.parametrize("ty,ctx", [(BoolType(), ("x", "y")), (CircleType(), ("x", "y")), (NotLine("x"), ("x", "y"))])
def test_cubicality_at_observables(ty, ctx):
    chk = Checker()
    stock = enumerate_elements(ty, ctx, 1)
    for u, v in itertools.product(stock, repeat=2):
        if chk.vinper(ty, u, v).verdict == HOLDS:
            assert chk.ceqtm(type_term(ty), u, v).verdict == HOLDS, (u, v)


def test_name_obliviousness():
    # renaming dimension names commutes with evaluation
    for m in generated(80, seed=9, ctx=("x", "y")):
        v = eval_term(m)
        ren = DimSubst.make(("x", "y"), ("p", "q"), {"x": "p", "y": "q"})
        assert alpha_eq(eval_term(apply_subst(m, ren)), apply_subst(v, ren))
