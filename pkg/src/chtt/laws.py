"""Executable rule, Kan and lemma suites.

Rule cases are written in a small judgment syntax on top of the term syntax::

    (type A) (eqtype A B) (mem A M) (eq A M N) (dim r)
    (at (x y) J)          ; J holds in dimension context x, y
    (under ((a A)) J)     ; J holds under the hypothesis a : A

A case is *sound* when its premises and its conclusion hold, *vacuous* when a
premise fails, and *violated* when the premises hold but the conclusion does
not.  Only sound cases count as passes.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Optional

from chtt.parse import Atom, ParseError, SList, parse_dim, parse_sexpr, read_all
from chtt.semantics import (
    FAILS, HOLDS, INCONCLUSIVE, CheckConfig, CheckReport, Checker, Witness, cubical,
    classify, enumerate_elements, eq_open,
)
from chtt.syntax import (
    BOOL, FALSE, S1_TY, TRUE, Arr, Coe, DimSubst, Hcom, NotB, NotEl, Prd, Term, apply_subst,
    dsubst, expand_not, fd, fresh_name, is_name,
)

SOUND, VACUOUS, VIOLATED = "sound", "vacuous", "violated"


# ---------------------------------------------------------------------------
# judgments


@dataclass(frozen=True)
class Judgment:
    kind: str  # type | eqtype | mem | eq | dim
    ctx: tuple
    args: tuple
    hyps: tuple = ()  # ((var, type), ...)

    def __str__(self) -> str:
        body = f"({self.kind} {' '.join(str(a) for a in self.args)})"
        if self.hyps:
            hs = " ".join(f"({v} {t})" for v, t in self.hyps)
            body = f"(under ({hs}) {body})"
        return f"(at ({' '.join(self.ctx)}) {body})"


_ARITY = {"type": 1, "eqtype": 2, "mem": 2, "eq": 3, "dim": 1}


def parse_judgment(text: str, ctx=()) -> Judgment:
    sxs = read_all(text, "<judgment>")
    if len(sxs) != 1:
        raise ParseError("expected one judgment")
    return _judgment(sxs[0], tuple(ctx), ())


def _judgment(sx, ctx: tuple, hyps: tuple) -> Judgment:
    if not (isinstance(sx, SList) and sx.items and isinstance(sx.items[0], Atom)):
        raise ParseError("expected a judgment", sx.span)
    kw, args = sx.items[0].text, sx.items[1:]
    if kw == "at":
        if len(args) != 2 or not isinstance(args[0], SList):
            raise ParseError("expected (at (NAMES) J)", sx.span)
        names = tuple(parse_dim(a) for a in args[0].items)
        if not all(is_name(n) for n in names) or len(set(names)) != len(names):
            raise ParseError("bad dimension context", args[0].span)
        return _judgment(args[1], names, hyps)
    if kw == "under":
        if len(args) != 2 or not isinstance(args[0], SList):
            raise ParseError("expected (under ((a A) ...) J)", sx.span)
        new = []
        for h in args[0].items:
            if not (isinstance(h, SList) and len(h.items) == 2 and isinstance(h.items[0], Atom)):
                raise ParseError("expected a hypothesis (a A)", h.span)
            new.append((h.items[0].text, parse_sexpr(h.items[1], frozenset(ctx), frozenset())))
        return _judgment(args[1], ctx, hyps + tuple(new))
    if kw not in _ARITY:
        raise ParseError(f"unknown judgment form '{kw}'", sx.span)
    if len(args) != _ARITY[kw]:
        raise ParseError(f"'{kw}' expects {_ARITY[kw]} arguments", sx.span)
    dims = frozenset(ctx)
    tvars = frozenset(v for v, _ in hyps)
    if kw == "dim":
        return Judgment(kw, ctx, (parse_dim(args[0]),), hyps)
    return Judgment(kw, ctx, tuple(parse_sexpr(a, dims, tvars) for a in args), hyps)


def check_judgment(j: Judgment, checker: Checker) -> CheckReport:
    match j.kind:
        case "dim":
            (r,) = j.args
            if not is_name(r) or r in j.ctx:
                return CheckReport(HOLDS)
            return CheckReport(FAILS, Witness(f"{r} is not a dimension of ({' '.join(j.ctx)})"))
        case "type":
            if j.hyps:
                raise ValueError("type judgments take no hypotheses")
            return cubical(j.args[0], j.ctx, checker=checker)
        case "eqtype":
            return checker.ceqpretype(*j.args)
        case "mem":
            a, m = j.args
            return eq_open(j.hyps, m, m, a, j.ctx, checker=checker)
        case "eq":
            a, m, n = j.args
            return eq_open(j.hyps, m, n, a, j.ctx, checker=checker)
    raise ValueError(j.kind)


# ---------------------------------------------------------------------------
# rule cases


@dataclass(frozen=True)
class RuleCase:
    rule_id: str
    case_id: str
    premises: tuple
    conclusion: Judgment


@dataclass(frozen=True)
class Outcome:
    case_id: str
    verdict: str  # sound | vacuous | violated | inconclusive
    report: CheckReport
    judgment: str = ""
    modulo_probes: bool = False

    @property
    def ok(self) -> bool:
        return self.verdict == SOUND

    def serialize(self) -> str:
        head = f"{self.case_id}: {self.verdict}"
        if self.modulo_probes and self.ok:
            head += " (modulo probes)"
        if self.ok:
            return head
        return "\n".join([head, f"judgment: {self.judgment}", self.report.serialize()])


def _run(case_id: str, premises, conclusion, runner) -> Outcome:
    modulo = False
    for p in premises:
        rep = runner(p)
        modulo |= rep.modulo_probes
        if rep.verdict == FAILS:
            return Outcome(case_id, VACUOUS, rep, str(p))
        if rep.verdict == INCONCLUSIVE:
            return Outcome(case_id, INCONCLUSIVE, rep, str(p))
    rep = runner(conclusion)
    modulo |= rep.modulo_probes
    verdict = {HOLDS: SOUND, FAILS: VIOLATED, INCONCLUSIVE: INCONCLUSIVE}[rep.verdict]
    return Outcome(case_id, verdict, rep, str(conclusion), modulo)


def run_rule(case: RuleCase, cfg: Optional[CheckConfig] = None, checker: Optional[Checker] = None) -> Outcome:
    chk = checker or Checker(cfg)
    return _run(case.case_id, case.premises, case.conclusion, lambda j: check_judgment(j, chk))


def _rc(rule: str, n: int, ctx: str, premises: list, conclusion: str) -> RuleCase:
    names = tuple(ctx.split())
    return RuleCase(rule, f"rule/{rule}/{n}", tuple(parse_judgment(p, names) for p in premises),
                    parse_judgment(conclusion, names))


_H_B = "(hcom x bool 0 1 true [y true] [y true])"
_H_S = "(hcom x S1 0 1 base [y (loop y)] [y base])"
_F_S = "(lam [a (if S1 a base (loop x))])"

# (rule, context, premises, conclusion)
_RULES = [
    # functions
    ("fun-form", "", ["(type bool)", "(type bool)"], "(type (arr bool bool))"),
    ("fun-form", "x", ["(type bool)", "(type S1)"], "(type (arr bool S1))"),
    ("fun-intro", "", ["(under ((a bool)) (mem bool (not a)))"], "(mem (arr bool bool) (lam [a (not a)]))"),
    ("fun-intro", "x", ["(under ((a bool)) (mem S1 (if S1 a (loop x) base)))"],
     "(mem (arr bool S1) (lam [a (if S1 a (loop x) base)]))"),
    ("fun-elim", "", ["(mem (arr bool bool) (lam [a (not a)]))", "(mem bool true)"],
     "(mem bool (app (lam [a (not a)]) true))"),
    ("fun-elim", "x", [f"(mem (arr bool S1) {_F_S})", f"(mem bool {_H_B})"],
     f"(mem S1 (app {_F_S} {_H_B}))"),
    ("fun-beta", "", ["(under ((a bool)) (mem bool a))", "(mem bool true)"],
     "(eq bool (app (lam [a a]) true) true)"),
    ("fun-beta", "x", ["(under ((a S1)) (mem S1 a))", "(mem S1 (loop x))"],
     "(eq S1 (app (lam [a a]) (loop x)) (loop x))"),
    ("fun-beta", "x", ["(under ((a bool)) (mem S1 (if S1 a (loop x) base)))", f"(mem bool {_H_B})"],
     f"(eq S1 (app (lam [a (if S1 a (loop x) base)]) {_H_B}) (if S1 {_H_B} (loop x) base))"),
    ("fun-eta", "", ["(mem (arr bool bool) (lam [a (not a)]))"],
     "(eq (arr bool bool) (lam [a (not a)]) (lam [b (app (lam [a (not a)]) b)]))"),
    ("fun-eta", "x", [f"(mem (arr bool S1) {_F_S})"], f"(eq (arr bool S1) {_F_S} (lam [b (app {_F_S} b)]))"),
    # products
    ("prd-form", "", ["(type bool)", "(type S1)"], "(type (prd bool S1))"),
    ("prd-form", "x", ["(type S1)", "(type (notb x))"], "(type (prd S1 (notb x)))"),
    ("prd-intro", "", ["(mem bool true)", "(mem S1 base)"], "(mem (prd bool S1) (pair true base))"),
    ("prd-intro", "x", ["(mem S1 (loop x))", "(mem (notb x) (notel x false))"],
     "(mem (prd S1 (notb x)) (pair (loop x) (notel x false)))"),
    ("prd-fst", "", ["(mem (prd bool S1) (pair true base))"], "(mem bool (fst (pair true base)))"),
    ("prd-fst", "x", ["(mem (prd S1 (notb x)) (pair (loop x) (notel x false)))"],
     "(mem S1 (fst (pair (loop x) (notel x false))))"),
    ("prd-snd", "", ["(mem (prd bool S1) (pair true base))"], "(mem S1 (snd (pair true base)))"),
    ("prd-snd", "x", ["(mem (prd S1 (notb x)) (pair (loop x) (notel x false)))"],
     "(mem (notb x) (snd (pair (loop x) (notel x false))))"),
    ("prd-beta-fst", "", ["(mem bool false)", "(mem S1 base)"], "(eq bool (fst (pair false base)) false)"),
    ("prd-beta-fst", "x", ["(mem S1 (loop x))", "(mem bool true)"], "(eq S1 (fst (pair (loop x) true)) (loop x))"),
    ("prd-beta-snd", "", ["(mem bool false)", "(mem S1 base)"], "(eq S1 (snd (pair false base)) base)"),
    ("prd-beta-snd", "x", ["(mem bool true)", f"(mem S1 {_H_S})"], f"(eq S1 (snd (pair true {_H_S})) {_H_S})"),
    ("prd-eta", "", ["(mem (prd bool bool) (pair true false))"],
     "(eq (prd bool bool) (pair true false) (pair (fst (pair true false)) (snd (pair true false))))"),
    ("prd-eta", "", ["(under ((p (prd bool bool))) (mem (prd bool bool) p))"],
     "(under ((p (prd bool bool))) (eq (prd bool bool) p (pair (fst p) (snd p))))"),
    ("prd-eta", "x", ["(mem (prd S1 (notb x)) (pair (loop x) (notel x true)))"],
     "(eq (prd S1 (notb x)) (pair (loop x) (notel x true)) "
     "(pair (fst (pair (loop x) (notel x true))) (snd (pair (loop x) (notel x true)))))"),
    # booleans
    ("bool-form", "", [], "(type bool)"),
    ("bool-form", "x", [], "(type bool)"),
    ("bool-true", "", [], "(mem bool true)"),
    ("bool-true", "x", [], "(mem bool true)"),
    ("bool-false", "", [], "(mem bool false)"),
    ("bool-false", "x", [], "(mem bool false)"),
    ("bool-if", "", ["(type S1)", "(mem bool true)", "(mem S1 base)", "(mem S1 base)"],
     "(mem S1 (if S1 true base base))"),
    ("bool-if", "x", ["(type S1)", f"(mem bool {_H_B})", "(mem S1 (loop x))", "(mem S1 base)"],
     f"(mem S1 (if S1 {_H_B} (loop x) base))"),
    ("bool-if", "", ["(type bool)", "(under ((a bool)) (mem bool a))", "(mem bool false)", "(mem bool true)"],
     "(under ((a bool)) (mem bool (if bool a false true)))"),
    ("bool-if-true", "", ["(type bool)", "(mem bool false)", "(mem bool true)"],
     "(eq bool (if bool true false true) false)"),
    ("bool-if-true", "x", ["(type S1)", "(mem S1 (loop x))", "(mem S1 base)"],
     "(eq S1 (if S1 true (loop x) base) (loop x))"),
    ("bool-if-false", "", ["(type bool)", "(mem bool false)", "(mem bool true)"],
     "(eq bool (if bool false false true) true)"),
    ("bool-if-false", "x", ["(type S1)", "(mem S1 base)", "(mem S1 (loop x))"],
     "(eq S1 (if S1 false base (loop x)) (loop x))"),
    # circle
    ("s1-form", "", [], "(type S1)"),
    ("s1-form", "x", [], "(type S1)"),
    ("s1-base", "", [], "(mem S1 base)"),
    ("s1-base", "x", [], "(mem S1 base)"),
    ("s1-loop", "x", ["(dim x)"], "(mem S1 (loop x))"),
    ("s1-loop", "x z", ["(dim z)"], "(mem S1 (loop z))"),
    ("s1-loop", "", ["(dim 1)"], "(mem S1 (loop 1))"),
    ("s1-loop-eps", "", [], "(eq S1 (loop 0) base)"),
    ("s1-loop-eps", "x", [], "(eq S1 (loop 1) base)"),
    ("s1-elim", "x", ["(type S1)", "(mem S1 (loop x))", "(at (x z) (mem S1 (loop z)))",
                      "(eq S1 (loop 0) base)", "(eq S1 (loop 1) base)"],
     "(mem S1 (S1-elim S1 (loop x) base [z (loop z)]))"),
    ("s1-elim", "", ["(type bool)", "(mem S1 base)", "(at (z) (mem bool true))",
                     "(eq bool true true)", "(eq bool true true)"],
     "(mem bool (S1-elim bool base true [z true]))"),
    ("s1-elim", "x", ["(type S1)", f"(mem S1 {_H_S})", "(at (x z) (mem S1 (loop z)))",
                      "(eq S1 (loop 0) base)", "(eq S1 (loop 1) base)"],
     f"(mem S1 (S1-elim S1 {_H_S} base [z (loop z)]))"),
    ("s1-elim-base", "", ["(type S1)", "(at (z) (mem S1 (loop z)))", "(eq S1 (loop 0) base)",
                          "(eq S1 (loop 1) base)"],
     "(eq S1 (S1-elim S1 base base [z (loop z)]) base)"),
    ("s1-elim-base", "x", ["(type (prd S1 S1))", "(at (x z) (mem (prd S1 S1) (pair (loop z) (loop x))))",
                           "(eq (prd S1 S1) (pair (loop 0) (loop x)) (pair base (loop x)))",
                           "(eq (prd S1 S1) (pair (loop 1) (loop x)) (pair base (loop x)))"],
     "(eq (prd S1 S1) (S1-elim (prd S1 S1) base (pair base (loop x)) [z (pair (loop z) (loop x))]) "
     "(pair base (loop x)))"),
    ("s1-elim-loop", "x", ["(type S1)", "(dim x)", "(at (x z) (mem S1 (loop z)))", "(eq S1 (loop 0) base)",
                           "(eq S1 (loop 1) base)"],
     "(eq S1 (S1-elim S1 (loop x) base [z (loop z)]) (loop x))"),
    ("s1-elim-loop", "x", ["(type (prd S1 S1))", "(dim x)", "(at (x z) (mem (prd S1 S1) (pair (loop z) base)))",
                           "(eq (prd S1 S1) (pair (loop 0) base) (pair base base))",
                           "(eq (prd S1 S1) (pair (loop 1) base) (pair base base))"],
     "(eq (prd S1 S1) (S1-elim (prd S1 S1) (loop x) (pair base base) [z (pair (loop z) base)]) "
     "(pair (loop x) base))"),
    ("s1-elim-loop", "", ["(type S1)", "(dim 0)", "(at (z) (mem S1 (loop z)))", "(eq S1 (loop 0) base)",
                          "(eq S1 (loop 1) base)"],
     "(eq S1 (S1-elim S1 (loop 0) base [z (loop z)]) (loop 0))"),
    # hcom
    ("hcom-form", "x", ["(type bool)", "(dim 0)", "(dim 1)", "(mem bool true)", "(at (y) (mem bool true))",
                        "(at (y) (mem bool true))", "(eq bool true true)", "(eq bool true true)"],
     f"(mem bool {_H_B})"),
    ("hcom-form", "x", ["(type S1)", "(dim 0)", "(dim 1)", "(mem S1 base)", "(at (y) (mem S1 (loop y)))",
                        "(at (y) (mem S1 base))", "(eq S1 (loop 0) base)", "(eq S1 base base)"],
     f"(mem S1 {_H_S})"),
    ("hcom-form", "x", ["(type (prd bool S1))", "(dim 1)", "(dim x)", "(mem (prd bool S1) (pair false (loop x)))",
                        "(at (y) (mem (prd bool S1) (pair false base)))",
                        "(at (y) (mem (prd bool S1) (pair false base)))",
                        "(eq (prd bool S1) (pair false base) (pair false (loop 0)))",
                        "(eq (prd bool S1) (pair false base) (pair false (loop 1)))"],
     "(mem (prd bool S1) (hcom x (prd bool S1) 1 x (pair false (loop x)) "
     "[y (pair false base)] [y (pair false base)]))"),
    ("hcom-cap", "x", ["(type bool)", "(dim 0)", "(mem bool true)", "(at (y) (mem bool true))",
                       "(at (y) (mem bool true))", "(eq bool true true)", "(eq bool true true)"],
     "(eq bool (hcom x bool 0 0 true [y true] [y true]) true)"),
    ("hcom-cap", "x", ["(type S1)", "(dim 1)", "(mem S1 (loop x))", "(at (y) (mem S1 base))",
                       "(at (y) (mem S1 base))", "(eq S1 base (loop 0))", "(eq S1 base (loop 1))"],
     "(eq S1 (hcom x S1 1 1 (loop x) [y base] [y base]) (loop x))"),
    ("hcom-cap", "x", ["(type (prd bool bool))", "(dim x)", "(mem (prd bool bool) (pair true false))",
                       "(at (y) (mem (prd bool bool) (pair true false)))",
                       "(at (y) (mem (prd bool bool) (pair true false)))",
                       "(eq (prd bool bool) (pair true false) (pair true false))",
                       "(eq (prd bool bool) (pair true false) (pair true false))"],
     "(eq (prd bool bool) (hcom x (prd bool bool) x x (pair true false) "
     "[y (pair true false)] [y (pair true false)]) (pair true false))"),
    ("hcom-tube", "", ["(type bool)", "(dim 0)", "(dim 1)", "(mem bool true)", "(at (y) (mem bool true))",
                       "(eq bool true true)"],
     "(eq bool (hcom 0 bool 0 1 true [y true] [y false]) true)"),
    ("hcom-tube", "", ["(type S1)", "(dim 0)", "(dim 1)", "(mem S1 base)", "(at (y) (mem S1 (loop y)))",
                       "(eq S1 (loop 0) base)"],
     "(eq S1 (hcom 1 S1 0 1 base [y base] [y (loop y)]) (loop 1))"),
    ("hcom-tube", "x", ["(type S1)", "(dim 0)", "(dim x)", "(mem S1 base)", "(at (x y) (mem S1 (loop y)))",
                        "(eq S1 (loop 0) base)"],
     "(eq S1 (hcom 0 S1 0 x base [y (loop y)] [y base]) (loop x))"),
    # coe
    ("coe-form", "", ["(at (x) (type (notb x)))", "(dim 0)", "(dim 1)", "(mem (notb 0) true)"],
     "(mem (notb 1) (coe [x (notb x)] 0 1 true))"),
    ("coe-form", "z", ["(at (z x) (type (notb x)))", "(dim 0)", "(dim z)", "(mem (notb 0) true)"],
     "(mem (notb z) (coe [x (notb x)] 0 z true))"),
    ("coe-form", "", ["(at (x) (type (prd bool (notb x))))", "(dim 1)", "(dim 0)",
                      "(mem (prd bool (notb 1)) (pair true false))"],
     "(mem (prd bool (notb 0)) (coe [x (prd bool (notb x))] 1 0 (pair true false)))"),
    ("coe-form", "z", ["(at (z x) (type (notb x)))", "(dim 1)", "(dim z)", "(mem (notb 1) false)"],
     "(mem (notb z) (coe [x (notb x)] 1 z false))"),
    ("coe-bool", "", ["(mem bool true)"], "(eq bool (coe [x bool] 0 1 true) true)"),
    ("coe-bool", "z", [f"(mem bool (hcom z bool 0 1 false [y false] [y false]))"],
     "(eq bool (coe [x bool] z 0 (hcom z bool 0 1 false [y false] [y false])) "
     "(hcom z bool 0 1 false [y false] [y false]))"),
    # not
    ("not-form", "x", [], "(type (notb x))"),
    ("not-form", "x z", [], "(type (notb z))"),
    ("not-eps", "", [], "(eqtype (notb 0) bool)"),
    ("not-eps", "x", [], "(eqtype (notb 1) bool)"),
    ("not-coe-refl", "", ["(mem bool true)"], "(eq bool (coe [x (notb x)] 0 0 true) true)"),
    ("not-coe-refl", "x", [f"(mem bool {_H_B})"], f"(eq bool (coe [z (notb z)] 1 1 {_H_B}) {_H_B})"),
    ("not-coe-flip", "", ["(mem bool true)"], "(eq bool (coe [x (notb x)] 0 1 true) (not true))"),
    ("not-coe-flip", "x", [f"(mem bool {_H_B})"], f"(eq bool (coe [z (notb z)] 1 0 {_H_B}) (not {_H_B}))"),
    ("not-coe-flip", "", ["(under ((a bool)) (mem bool a))"],
     "(under ((a bool)) (eq bool (coe [x (notb x)] 1 0 a) (not a)))"),
]

RULE_IDS = tuple(dict.fromkeys(r for r, *_ in _RULES))


def rule_library() -> list:
    counts: dict = {}
    out = []
    for rule, ctx, prems, concl in _RULES:
        counts[rule] = counts.get(rule, 0) + 1
        out.append(_rc(rule, counts[rule], ctx, prems, concl))
    return out


# ---------------------------------------------------------------------------
# Kan conditions


@dataclass(frozen=True)
class KanInstance:
    """A composition scenario for ``type_expr`` seen through ``psi``.

    ``x`` is the tube direction (a name of ``psi.target``).  ``other_*`` supply
    the second side of the binary conditions 1 and 4; ``eps`` is the extent for
    condition 3.
    """

    type_expr: Term
    psi: DimSubst
    x: str
    r: object
    r2: object
    cap: Term
    y: str
    tube0: Term
    tube1: Term
    other_cap: Optional[Term] = None
    other_tube0: Optional[Term] = None
    other_tube1: Optional[Term] = None
    eps: Optional[int] = None

    def tube(self, e: int) -> Term:
        return self.tube0 if e == 0 else self.tube1

    def other_tube(self, e: int) -> Term:
        return self.other_tube0 if e == 0 else self.other_tube1


def _eq(ctx, a, m, n) -> Judgment:
    return Judgment("eq", tuple(ctx), (a, m, n))


def _mem(ctx, a, m) -> Judgment:
    return Judgment("mem", tuple(ctx), (a, m))


def kan_judgments(inst: KanInstance, condition: int):
    """The hypotheses and the conclusion of a Kan condition, as judgments."""
    a = apply_subst(inst.type_expr, inst.psi)
    full = inst.psi.target
    x, y, r, r2 = inst.x, inst.y, inst.r, inst.r2
    rest = tuple(n for n in full if n != x)
    with_y = rest + (y,)
    m = inst.cap
    hyps: list = []
    match condition:
        case 1 | 2:
            if condition == 1:
                hyps.append(_eq(full, a, m, inst.other_cap))
            else:
                hyps.append(_mem(full, a, m))
            for e in (0, 1):
                ae = dsubst(a, e, x)
                ne = dsubst(inst.tube(e), e, x)
                if condition == 1:
                    hyps.append(_eq(with_y, ae, ne, dsubst(inst.other_tube(e), e, x)))
                else:
                    hyps.append(_mem(with_y, ae, ne))
                hyps.append(_eq(rest, ae, dsubst(dsubst(inst.tube(e), r, y), e, x), dsubst(m, e, x)))
            if condition == 1:
                lhs = Hcom(x, a, r, r2, m, y, inst.tube0, inst.tube1)
                rhs = Hcom(x, a, r, r2, inst.other_cap, y, inst.other_tube0, inst.other_tube1)
            else:
                lhs, rhs = Hcom(x, a, r, r, m, y, inst.tube0, inst.tube1), m
            concl = _eq(full, a, lhs, rhs)
        case 3:
            e = inst.eps
            ne = inst.tube(e)
            hyps += [_mem(full, a, m), _mem(full + (y,), a, ne), _eq(full, a, dsubst(ne, r, y), m)]
            concl = _eq(full, a, Hcom(e, a, r, r2, m, y, inst.tube0, inst.tube1), dsubst(ne, r2, y))
        case 4:
            n = inst.other_cap
            hyps.append(_eq(rest, dsubst(a, r, x), m, n))
            concl = _eq(rest, dsubst(a, r2, x), Coe(x, a, r, r2, m), Coe(x, a, r, r2, n))
        case _:
            raise ValueError(f"no Kan condition {condition}")
    return tuple(hyps), concl


def check_kan(inst: KanInstance, condition: int, cfg: Optional[CheckConfig] = None,
              checker: Optional[Checker] = None, case_id: str = "kan") -> Outcome:
    """Hypothesis failures give ``vacuous``, conclusion failures ``violated``."""
    chk = checker or Checker(cfg)
    hyps, concl = kan_judgments(inst, condition)
    return _run(case_id, hyps, concl, lambda j: check_judgment(j, chk))


def _const_line(a: Term, avoid) -> tuple:
    q = fresh_name("q", frozenset(avoid) | fd(a))
    return q, a


def _via_coe(a: Term, m: Term, avoid) -> Term:
    """``m`` transported along the constant line at ``a``: an equal but different term."""
    q, line = _const_line(a, avoid)
    return Coe(q, line, 0, 1, m)


def make_kan_instance(type_expr: Term, psi: DimSubst, x: str, cap: Term, r, r2, style: str = "degenerate",
                      eps: Optional[int] = None) -> KanInstance:
    """Build an instance whose adjacency holds by construction.

    ``degenerate`` tubes are the cap's faces, constant in ``y``.  ``filler``
    tubes are compositions in direction ``y`` that collapse to the cap face
    at constant ``r``.
    """
    a = apply_subst(type_expr, psi)
    avoid = set(psi.target) | fd(cap)
    y = fresh_name("y", avoid)
    tubes = []
    for e in (0, 1):
        face = cap if eps is not None else dsubst(cap, e, x)
        if style == "filler":
            z = fresh_name("z", avoid | {y})
            face_ty = a if eps is not None else dsubst(a, e, x)
            tubes.append(Hcom(y, face_ty, 0, 1, face, z, face, face))
        else:
            tubes.append(face)
    other = _via_coe(a, cap, avoid | {y})
    others = [_via_coe(a if eps is not None else dsubst(a, e, x), t, avoid | {y}) for e, t in zip((0, 1), tubes)]
    return KanInstance(type_expr, psi, x, r, r2, cap, y, tubes[0], tubes[1], other, others[0], others[1], eps)


_KAN_TYPES = [
    ("bool", BOOL, ()),
    ("S1", S1_TY, ()),
    ("prd", Prd(BOOL, BOOL), ()),
    ("arr", Arr(BOOL, BOOL), ()),
    ("notb", NotB("w"), ("w",)),
]


def _kan_substs(source: tuple) -> list:
    if not source:
        return [DimSubst((), ("x",), ()), DimSubst((), ("x", "z"), ())]
    (w,) = source
    return [DimSubst(source, ("x",), ((w, "x"),)), DimSubst(source, ("x", "z"), ((w, "z"),)),
            DimSubst(source, ("x",), ((w, 0),))]


def _static_type(a: Term):
    # classify without the evaluator, so the library does not depend on its rules
    if isinstance(a, NotB) and not is_name(a.r):
        return classify(BOOL)
    return classify(a)


def _pick(stock: list) -> list:
    idx = sorted({0, 1, len(stock) - 1, len(stock) // 2})
    return [stock[i] for i in idx if i < len(stock)]


@functools.cache
def kan_library() -> tuple:
    """``(case_id, condition, instance)`` triples covering each type and condition."""
    out = []
    for name, ty, source in _KAN_TYPES:
        for si, psi in enumerate(_kan_substs(source)):
            a = apply_subst(ty, psi)
            full = psi.target
            rest = tuple(n for n in full if n != "x")
            caps = _pick(enumerate_elements(_static_type(a), full, 1))
            n = 0

            def add(cond, inst):
                nonlocal n
                n += 1
                out.append((f"kan/{name}/c{cond}/{si}.{n}", cond, inst))

            for cap, (r, r2), style in zip(caps, itertools.cycle([(0, 1), (1, 0), (0, "x"), ("x", 1)]),
                                           itertools.cycle(["degenerate", "filler"])):
                if style == "filler" and is_name(r):
                    style = "degenerate"
                add(1, make_kan_instance(ty, psi, "x", cap, r, r2, style))
            for cap, r, style in zip(caps, itertools.cycle([0, 1, "x"]), itertools.cycle(["filler", "degenerate"])):
                if style == "filler" and is_name(r):
                    style = "degenerate"
                add(2, make_kan_instance(ty, psi, "x", cap, r, r, style))
            for cap, (e, r, r2), style in zip(caps, itertools.cycle([(0, 0, 1), (1, 1, 0), (0, 1, "x")]),
                                              itertools.cycle(["degenerate", "filler"])):
                add(3, make_kan_instance(ty, psi, "x", cap, r, r2, style, eps=e))
            ends = [(0, 1), (1, 0)] + [(e, z) for z in rest for e in (0, 1)] + [(z, 1) for z in rest]
            for r, r2 in ends:
                start = dsubst(a, r, "x")
                for cap in _pick(enumerate_elements(_static_type(start), rest, 1))[:2]:
                    inst = KanInstance(ty, psi, "x", r, r2, cap, "y", cap, cap,
                                       other_cap=_via_coe(start, cap, full))
                    add(4, inst)
    return tuple(out)


def broken_adjacency_instance() -> KanInstance:
    """A condition-2 scenario whose tubes do not meet the cap: it must come out vacuous."""
    psi = DimSubst((), ("x",), ())
    return KanInstance(BOOL, psi, "x", 0, 0, TRUE, "y", FALSE, FALSE)


# ---------------------------------------------------------------------------
# not lemmas


def lemma_cases() -> list:
    """``(case_id, type, lhs, rhs, ctx)`` for the two not lemmas."""
    out = []
    for ctx in ((), ("x",), ("x", "z")):
        tag = "".join(ctx) or "-"
        stock = enumerate_elements(classify(BOOL), ctx, 1)
        for i, m in enumerate(stock):
            out.append((f"lemma/notnot/{tag}/{i}", BOOL, expand_not(expand_not(m)), m, ctx))
        for r in (0, 1) + ctx:
            members = stock if not is_name(r) else [NotEl(r, b) for b in stock]
            ty = BOOL if not is_name(r) else NotB(r)
            for i, m in enumerate(members):
                lhs = NotEl(r, Coe("u", NotB("u"), r, 1, m))
                out.append((f"lemma/notel-coe/{tag}/{r}/{i}", ty, lhs, m, ctx))
    return out


def check_lemma(case, checker: Checker) -> Outcome:
    case_id, ty, lhs, rhs, ctx = case
    j = _eq(ctx, ty, lhs, rhs)
    return _run(case_id, (), j, lambda jj: check_judgment(jj, checker))


# ---------------------------------------------------------------------------
# suite


@dataclass
class SuiteSummary:
    outcomes: list = field(default_factory=list)

    def count(self, verdict: str) -> int:
        return sum(1 for o in self.outcomes if o.verdict == verdict)

    @property
    def ok(self) -> bool:
        return all(o.ok for o in self.outcomes)

    @property
    def failures(self) -> list:
        return [o for o in self.outcomes if not o.ok]

    def render(self) -> str:
        lines = [o.serialize() for o in self.failures]
        lines.append(f"cases: {len(self.outcomes)}  sound: {self.count(SOUND)}  vacuous: {self.count(VACUOUS)}  "
                     f"violated: {self.count(VIOLATED)}  inconclusive: {self.count(INCONCLUSIVE)}")
        return "\n".join(lines)


def _all_cases():
    for case in rule_library():
        yield case.case_id, ("rule", case)
    for case_id, cond, inst in kan_library():
        yield case_id, ("kan", (cond, inst))
    for case in lemma_cases():
        yield case[0], ("lemma", case)


def manifest() -> list:
    return [cid for cid, _ in _all_cases()]


def run_suite(cfg: Optional[CheckConfig] = None, case_ids=None, fail_fast: bool = False) -> SuiteSummary:
    chk = Checker(cfg)
    wanted = None if case_ids is None else set(case_ids)
    summary = SuiteSummary()
    for cid, (kind, payload) in _all_cases():
        if wanted is not None and cid not in wanted:
            continue
        if kind == "rule":
            out = run_rule(payload, checker=chk)
        elif kind == "kan":
            cond, inst = payload
            out = check_kan(inst, cond, checker=chk, case_id=cid)
        else:
            out = check_lemma(payload, chk)
        summary.outcomes.append(out)
        if fail_fast and not out.ok:
            break
    if wanted is not None:
        missing = wanted - {o.case_id for o in summary.outcomes}
        if missing:
            raise KeyError(f"unknown case ids: {sorted(missing)}")
    return summary
